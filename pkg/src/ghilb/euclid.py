"""The Euclidean-algorithm side: b, division chains, primitive G-sets, the count."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ChainBroken, InvalidActionError, UnitWeightError
from .gigsaw import Direction, iterate, transform
from .gset import GSet, from_span, valley_of
from .lattice import GroupAction


def modular_inverse(a: int, r: int) -> int:
    if r == 1:
        return 0
    if math.gcd(a, r) != 1:
        raise InvalidActionError(f"{a} is not invertible modulo {r}")
    return pow(a, -1, r)


@dataclass(frozen=True)
class EuclidTrace:
    """Remainders p_1, ..., p_{n+1} (the last one is the gcd) and quotients q_1..q_n."""

    p: tuple
    q: tuple

    @property
    def n(self) -> int:
        return len(self.q)

    def linear_sum(self) -> int:
        return sum(ql * pl for ql, pl in zip(self.q, self.p[1:]))

    def square_sum(self) -> int:
        return sum(ql * pl * pl for ql, pl in zip(self.q, self.p[1:]))

    def identities_hold(self) -> bool:
        p1, p2, last = self.p[0], self.p[1], self.p[-1]
        return self.linear_sum() == p1 + p2 - last and self.square_sum() == p1 * p2


def euclid_trace(p1: int, p2: int) -> EuclidTrace:
    """Division chain of (p1, p2).  With p1 < p2 the first quotient is 0."""
    if p1 <= 0 or p2 <= 0:
        raise ValueError("euclid_trace needs positive integers")
    p = [p1, p2]
    q = []
    while p[-1]:
        quo, rem = divmod(p[-2], p[-1])
        q.append(quo)
        p.append(rem)
    p.pop()
    return EuclidTrace(tuple(p), tuple(q))


def _structured(action: GroupAction):
    if action.has_unit_weight:
        raise UnitWeightError("the structured construction needs a, r - a >= 2")


def gamma_1(action: GroupAction) -> GSet:
    """span(x, y^(b-1), z^(r-b-1))."""
    _structured(action)
    b = action.b
    return from_span(action, [(1, 0, 0), (0, b - 1, 0), (0, 0, action.r - b - 1)])


def is_primitive(g: GSet) -> bool:
    """Both valleys exist and sit on the x-axis."""
    vy, vz = valley_of(g, "y"), valley_of(g, "z")
    return vy is not None and vz is not None and vy[1] == 0 and vz[2] == 0


@dataclass(frozen=True)
class SequenceEntry:
    gset: GSet
    i: int
    i_y: int
    j: int
    i_z: int
    k: int


def _entry(g: GSet) -> SequenceEntry:
    vy, vz = valley_of(g, "y"), valley_of(g, "z")
    return SequenceEntry(g, g.i, vy[0] if vy else -1, g.j, vz[0] if vz else -1, g.k)


@dataclass(frozen=True)
class PrimitiveSequence:
    entries: tuple  # Gamma_1 .. Gamma_{m+1}

    @property
    def m(self) -> int:
        return len(self.entries) - 1

    @property
    def members(self) -> list:
        return [e.gset for e in self.entries]

    @property
    def primitive(self) -> list:
        return [e.gset for e in self.entries[:-1]]

    @property
    def last(self) -> GSet:
        return self.entries[-1].gset


def next_primitive(g: GSet) -> GSet:
    """T_U(T_UR^j g) when j < k, otherwise T_U(T_UL^k g); checked against its span."""
    e = _entry(g)
    if e.j < e.k:
        nxt = transform(iterate(g, Direction.UPPER_RIGHT, e.j), Direction.UPPER)
        span = [(e.i + e.i_z + 1, 0, 0), (e.i, e.j, 0), (e.i_z, 0, e.k - (e.j + 1))]
    elif e.k < e.j:
        nxt = transform(iterate(g, Direction.UPPER_LEFT, e.k), Direction.UPPER)
        span = [(e.i + e.i_y + 1, 0, 0), (e.i_y, e.j - (e.k + 1), 0), (e.i, 0, e.k)]
    else:
        raise ChainBroken(f"j = k = {e.j} for primitive {g!r}")
    expected = from_span(g.action, span)
    if nxt != expected:
        raise ChainBroken(f"next primitive {nxt!r} differs from closed form {expected!r}")
    return nxt


def primitive_sequence(action: GroupAction) -> PrimitiveSequence:
    g = gamma_1(action)
    entries = [_entry(g)]
    while is_primitive(g):
        g = next_primitive(g)
        entries.append(_entry(g))
    seq = PrimitiveSequence(tuple(entries))
    _check_recursion(action, seq)
    return seq


def _check_recursion(action: GroupAction, seq: PrimitiveSequence) -> None:
    first = seq.entries[0]
    if first.j + 1 != action.b or first.k + 1 != action.r - action.b:
        raise ChainBroken("Gamma_1 exponents do not match b and r - b")
    for cur, nxt in zip(seq.entries, seq.entries[1:]):
        jn, kn = cur.j + 1, cur.k + 1
        want = (jn, kn - jn) if cur.j < cur.k else (jn - kn, kn)
        if (nxt.j + 1, nxt.k + 1) != want:
            raise ChainBroken(f"exponent recursion broken between {cur.gset!r} and {nxt.gset!r}")


def predicted_count(action: GroupAction) -> int:
    """(3r + b(r - b) - 1) / 2."""
    r, b = action.r, action.b
    n2 = 3 * r + b * (r - b) - 1
    if n2 % 2:
        raise AssertionError("count formula produced a non-integer")
    return n2 // 2


def count_trace(action: GroupAction) -> EuclidTrace:
    """Euclid trace on (max, min) of (b, r - b), the order used by the count."""
    b, c = action.b, action.r - action.b
    return euclid_trace(max(b, c), min(b, c))


def count_decomposition(action: GroupAction, seq: PrimitiveSequence | None = None) -> int:
    """r + max{j_(m+1)+1, k_(m+1)+1} + sum over triangles of C(min+1, 2)."""
    seq = seq or primitive_sequence(action)
    last = seq.entries[-1]
    total = action.r + max(last.j + 1, last.k + 1)
    for e in seq.entries[:-1]:
        total += math.comb(min(e.j + 1, e.k + 1) + 1, 2)
    return total
