"""G-igsaw transformations: moving from a G-set to its neighbour across a wall."""
from __future__ import annotations

import enum

from .cones import boundary_monomials
from .errors import DegenerateWall, IllegalDirection, NotAGSet
from .gset import GSet, from_members, transfer, valley_of, valleys
from .lattice import ZERO, Triple, add, scale, sub


class Direction(enum.Enum):
    UPPER = "U"
    RIGHT = "R"
    LEFT = "L"
    UPPER_RIGHT = "UR"
    UPPER_LEFT = "UL"


# Which boundary monomial drives each direction.  For two valleys the
# binding is the one under which the span formulas hold:
# R adds y^(j+1), L adds z^(k+1), UR adds x^i y^(j_y+1), UL adds x^i z^(k_z+1).
_ONE_VALLEY = {
    Direction.UPPER: "alpha",
    Direction.RIGHT: "beta",
    Direction.LEFT: "gamma",
}
_TWO_VALLEY = {
    Direction.RIGHT: "beta",
    Direction.LEFT: "gamma",
    Direction.UPPER_RIGHT: "delta_y",
    Direction.UPPER_LEFT: "delta_z",
}


def direction_monomial(g: GSet, d: Direction) -> tuple:
    """The pair (u, v) with v = transfer(g, u) defining the wall in direction ``d``."""
    table = _TWO_VALLEY if len(valleys(g)) == 2 else _ONE_VALLEY
    if d not in table:
        raise IllegalDirection(f"{d.name} is not available for {g!r}")
    u = boundary_monomials(g)[table[d]]
    return u, transfer(g, u)


def _power(w: Triple, v: Triple) -> int:
    """max c with w / v^c an ordinary monomial."""
    return min(w[t] // v[t] for t in range(3) if v[t] > 0)


def transform(g: GSet, d: Direction) -> GSet:
    u, v = direction_monomial(g, d)
    if v == ZERO:
        raise DegenerateWall(f"{d.name} wall of {g!r} lies on a coordinate plane")
    step = sub(u, v)
    out = [add(w, scale(_power(w, v), step)) for w in g.members]
    try:
        return from_members(g.action, out)
    except NotAGSet as exc:  # transforms of G-sets are G-sets; this is a bug
        raise NotAGSet(f"{d.name} transform of {g!r} failed: {exc}") from exc


def available_directions(g: GSet) -> list:
    """Legal, non-degenerate directions for ``g``.

    For two valleys Right needs a z-valley above the x-axis (k_z >= 1) and
    Left a y-valley above it (j_y >= 1).
    """
    if len(valleys(g)) == 2:
        out = []
        if valley_of(g, "z")[2] >= 1:
            out.append(Direction.RIGHT)
        if valley_of(g, "y")[1] >= 1:
            out.append(Direction.LEFT)
        return out + [Direction.UPPER_RIGHT, Direction.UPPER_LEFT]
    return [d for d in _ONE_VALLEY if direction_monomial(g, d)[1] != ZERO]


def iterate(g: GSet, d: Direction, times: int) -> GSet:
    for _ in range(times):
        g = transform(g, d)
    return g
