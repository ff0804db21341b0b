"""G-sets: divisor-closed r-element monomial sets with bijective weights.

A G-set never contains yz, so it is stored as two staircases sharing the
x-axis: ``y_profile[p]`` is the largest q with x^p y^q in the set and
``z_profile[p]`` the largest s with x^p z^s in the set (0 when only x^p
itself is present).  Both profiles have length i + 1 where x^i is the
largest pure x-power.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import MixedYZ, NotAGSet
from .lattice import GroupAction, Triple, X, Y, Z, add, format_monomial, sub, weight


class Valley(NamedTuple):
    kind: str  # "y" or "z"
    position: Triple


@dataclass(frozen=True, eq=False)
class GSet:
    action: GroupAction
    y_profile: tuple
    z_profile: tuple
    members: tuple = field(init=False, repr=False)
    _by_weight: tuple = field(init=False, repr=False)
    _member_set: frozenset = field(init=False, repr=False)

    def __post_init__(self):
        members = []
        for p, q in enumerate(self.y_profile):
            members.extend((p, t, 0) for t in range(q + 1))
        for p, s in enumerate(self.z_profile):
            members.extend((p, 0, t) for t in range(1, s + 1))
        members.sort()
        table = [None] * self.action.r
        for m in members:
            table[weight(self.action, m)] = m
        object.__setattr__(self, "members", tuple(members))
        object.__setattr__(self, "_by_weight", tuple(table))
        object.__setattr__(self, "_member_set", frozenset(members))

    # equality and ordering by sorted member list
    def __eq__(self, other):
        if not isinstance(other, GSet):
            return NotImplemented
        return self.action == other.action and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __lt__(self, other):
        return self.members < other.members

    def __contains__(self, m) -> bool:
        return tuple(m) in self._member_set

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __repr__(self):
        return f"GSet(span({', '.join(format_monomial(m) for m in self.span())}))"

    @property
    def key(self) -> frozenset:
        return self._member_set

    @property
    def i(self) -> int:
        return len(self.y_profile) - 1

    @property
    def j(self) -> int:
        return self.y_profile[0]

    @property
    def k(self) -> int:
        return self.z_profile[0]

    def span(self) -> list:
        """Minimal spanning monomials: members that divide no other member."""
        out = []
        for m in self.members:
            if add(m, X) in self or add(m, Y) in self or add(m, Z) in self:
                continue
            out.append(m)
        return sorted(out, key=lambda m: (m[2], m[1], -m[0]))


def _profiles(members: Iterable[Triple]):
    ys: dict = {}
    zs: dict = {}
    for p, q, s in members:
        if q and s:
            raise MixedYZ(f"monomial {format_monomial((p, q, s))} is divisible by yz")
        if s == 0:
            ys[p] = max(ys.get(p, -1), q)
        if q == 0:
            zs[p] = max(zs.get(p, -1), s)
    return ys, zs


@dataclass
class ValidationReport:
    ok: bool
    gset: Optional[GSet] = None
    violation: Optional[str] = None
    weight: Optional[int] = None

    def __bool__(self):
        return self.ok


def validate(action: GroupAction, monomials: Iterable[Triple]) -> ValidationReport:
    """Check the G-set axioms for an explicit monomial list.

    Returns a report carrying the structured :class:`GSet` on success or
    the first violated axiom otherwise; nothing is raised.
    """
    mons = {tuple(m) for m in monomials}
    if any(min(m) < 0 for m in mons):
        return ValidationReport(False, violation="negative exponent")
    if (0, 0, 0) not in mons:
        return ValidationReport(False, violation="missing constant monomial")
    for m in mons:
        for t in (X, Y, Z):
            d = sub(m, t)
            if min(d) >= 0 and d not in mons:
                return ValidationReport(
                    False, violation=f"not divisor-closed: {format_monomial(d)} divides "
                    f"{format_monomial(m)}")
    if any(m[1] and m[2] for m in mons):
        return ValidationReport(False, violation="contains a multiple of yz")
    seen: dict = {}
    for m in sorted(mons):
        w = weight(action, m)
        if w in seen:
            return ValidationReport(
                False, violation=f"weight collision: {format_monomial(seen[w])} and "
                f"{format_monomial(m)} both have weight {w}", weight=w)
        seen[w] = m
    if len(mons) != action.r:
        return ValidationReport(False, violation=f"{len(mons)} monomials, expected {action.r}")
    ys, zs = _profiles(mons)
    i = max(ys)
    g = GSet(action, tuple(ys[p] for p in range(i + 1)), tuple(zs[p] for p in range(i + 1)))
    return ValidationReport(True, gset=g)


def from_members(action: GroupAction, monomials: Iterable[Triple]) -> GSet:
    rep = validate(action, monomials)
    if not rep.ok:
        raise NotAGSet(rep.violation, rep.weight)
    return rep.gset


def divisors(m: Triple) -> list:
    return [(p, q, s) for p in range(m[0] + 1) for q in range(m[1] + 1) for s in range(m[2] + 1)]


def from_span(action: GroupAction, spanners: Sequence[Triple]) -> GSet:
    """The G-set of all divisors of ``spanners``; raises if that is not a G-set."""
    for m in spanners:
        if min(m) < 0:
            raise ValueError(f"{m} is not an ordinary monomial")
        if m[1] and m[2]:
            raise MixedYZ(f"spanner {format_monomial(m)} is divisible by yz")
    mons = {d for m in spanners for d in divisors(tuple(m))}
    mons.add((0, 0, 0))
    return from_members(action, mons)


def pure_power_exponents(g: GSet) -> tuple:
    return (g.i, g.j, g.k)


def valleys(g: GSet) -> list:
    out = []
    for kind, prof, axis in (("y", g.y_profile, 1), ("z", g.z_profile, 2)):
        for m in range(len(prof) - 1):
            if prof[m] > prof[m + 1]:
                pos = [m, 0, 0]
                pos[axis] = prof[m + 1]
                out.append(Valley(kind, tuple(pos)))
    return out


def valley_of(g: GSet, kind: str) -> Optional[Triple]:
    for v in valleys(g):
        if v.kind == kind:
            return v.position
    return None


def transfer(g: GSet, v: Triple) -> Triple:
    """The member of ``g`` with the same weight as ``v``."""
    return g._by_weight[weight(g.action, v)]


def s_value(g: GSet, v: Triple) -> Triple:
    """Invariant Laurent monomial v / transfer(v), additively."""
    return sub(v, transfer(g, v))


def gamma_x(action: GroupAction) -> GSet:
    return GSet(action, (0,) * action.r, (0,) * action.r)


def gamma_yz(action: GroupAction, l: int) -> GSet:
    """{y^(r-l-1), ..., y, 1, z, ..., z^l}."""
    if not 0 <= l < action.r:
        raise ValueError(f"l={l} out of range 0..{action.r - 1}")
    return GSet(action, (action.r - l - 1,), (l,))


def enumerate_all(action: GroupAction, bound: int = 60) -> list:
    """Every G-set of the action, by exhaustive staircase search.

    Columns x^p are filled one at a time: a y-column of height <= the
    previous one and a z-column likewise, rejecting as soon as a weight
    repeats.  Results are ordered lexicographically by (y_profile, z_profile).
    """
    r, a = action.r, action.a
    if r > bound:
        raise ValueError(f"r={r} exceeds the enumeration bound {bound}")
    c = r - a
    found = []
    ys: list = []
    zs: list = []

    def column(p, ymax, zmax, used, count):
        # choose the y-height of column p, then its z-height
        wy = p % r
        ybits = 0
        for q in range(ymax + 1):
            bit = 1 << wy
            if used & (ybits | bit) or used & bit:
                break
            ybits |= bit
            wy = (wy + a) % r
            n = count + q + 1
            if n > r:
                break
            wz = (p + c) % r
            zbits = 0
            for s in range(zmax + 1):
                if s:
                    bit = 1 << wz
                    if (used | ybits) & (zbits | bit):
                        break
                    zbits |= bit
                    wz = (wz + c) % r
                total = n + s
                if total > r:
                    break
                ys.append(q)
                zs.append(s)
                if total == r:
                    found.append(GSet(action, tuple(ys), tuple(zs)))
                else:
                    column(p + 1, q, s, used | ybits | zbits, total)
                ys.pop()
                zs.pop()

    column(0, r - 1, r - 1, 0, 0)
    found.sort(key=lambda g: (g.y_profile, g.z_profile))
    return found
