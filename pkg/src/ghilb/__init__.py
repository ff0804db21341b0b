"""Exact computation of the fan of Hilb^G(C^3) for G of type 1/r(1, a, r - a)."""
from .lattice import GroupAction
from .gset import GSet, enumerate_all, from_span
from .cones import sigma
from .euclid import predicted_count, primitive_sequence
from .fan import build_fan, validate_fan

__version__ = "0.1.0"
