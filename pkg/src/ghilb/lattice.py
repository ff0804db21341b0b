"""Integer arithmetic for the lattices M0, M, N0 and N and exact 3D cone duality.

Monomials x^p y^q z^s are exponent triples ``(p, q, s)``; Laurent monomials
are allowed anywhere the sign of an entry is not constrained.

Points of N = Z^3 + Z * (1/r)(1, a, r - a) are stored *r-scaled*: the
integer triple ``w`` stands for the point ``w / r``.  This keeps every
membership, pairing and determinant test in plain integers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cmp_to_key
from itertools import combinations
from typing import Iterable, Sequence, Tuple

from .errors import DegenerateConeError, InvalidActionError, UnitWeightError

Triple = Tuple[int, int, int]
ExponentTriple = Triple
NVector = Triple  # r-scaled point of N

ZERO: Triple = (0, 0, 0)
X: Triple = (1, 0, 0)
Y: Triple = (0, 1, 0)
Z: Triple = (0, 0, 1)


def add(u: Triple, v: Triple) -> Triple:
    return (u[0] + v[0], u[1] + v[1], u[2] + v[2])


def sub(u: Triple, v: Triple) -> Triple:
    return (u[0] - v[0], u[1] - v[1], u[2] - v[2])


def scale(c: int, u: Triple) -> Triple:
    return (c * u[0], c * u[1], c * u[2])


def neg(u: Triple) -> Triple:
    return (-u[0], -u[1], -u[2])


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def cross(u: Triple, v: Triple) -> Triple:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def det3(u: Triple, v: Triple, w: Triple) -> int:
    return dot(u, cross(v, w))


def is_ordinary(m: Triple) -> bool:
    """True for an ordinary monomial (no negative exponents)."""
    return m[0] >= 0 and m[1] >= 0 and m[2] >= 0


def divides(u: Triple, v: Triple) -> bool:
    return u[0] <= v[0] and u[1] <= v[1] and u[2] <= v[2]


def primitive_direction(v: Triple) -> Triple:
    g = math.gcd(math.gcd(v[0], v[1]), v[2])
    if g == 0:
        raise ValueError("zero vector has no direction")
    return (v[0] // g, v[1] // g, v[2] // g)


def format_monomial(m: Triple) -> str:
    """Render ``(2, 0, -1)`` as ``x^2*z^-1`` and the zero triple as ``1``."""
    parts = []
    for name, e in zip("xyz", m):
        if e == 1:
            parts.append(name)
        elif e != 0:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class GroupAction:
    """The cyclic action of type 1/r(1, a, r - a), canonically oriented.

    ``a`` is always the smaller of the two non-trivial weights; ``swapped``
    records whether the caller's y and z had to be exchanged to get there.
    Use :meth:`from_input` to build one from user-facing ``(r, a)``.
    """

    r: int
    a: int
    b: int
    swapped: bool = False

    def __post_init__(self):
        r, a, b = self.r, self.a, self.b
        if r < 2:
            raise InvalidActionError(f"group order must be at least 2, got {r}")
        if not 1 <= a < r or math.gcd(r, a) != 1:
            raise InvalidActionError(f"a={a} must be coprime to r={r} and lie in 1..r-1")
        if a > r - a:
            raise InvalidActionError("action is not canonical: expected a < r - a")
        if (a * b) % r != 1 or not 1 <= b < r:
            raise InvalidActionError(f"b={b} is not the inverse of a={a} modulo {r}")

    @classmethod
    def from_input(cls, r: int, a: int, allow_unit_weight: bool = False) -> "GroupAction":
        """Validate and canonicalize a user-supplied pair.

        Pairs with a > r - a are handled by exchanging y and z.  Pairs with
        a or r - a equal to 1 are refused unless ``allow_unit_weight`` is
        set (only the brute-force enumerator makes sense for them).
        """
        if r < 2:
            raise InvalidActionError(f"group order must be at least 2, got {r}")
        if not 1 <= a < r:
            raise InvalidActionError(f"a={a} must lie in 1..{r - 1}")
        if math.gcd(r, a) != 1:
            raise InvalidActionError(f"r={r} and a={a} are not coprime")
        if (a == 1 or a == r - 1) and not allow_unit_weight:
            raise UnitWeightError(
                f"a={a} gives a weight equal to 1; this case is not covered "
                "by the structured construction"
            )
        swapped = a > r - a
        ca = r - a if swapped else a
        return cls(r, ca, pow(ca, -1, r), swapped)

    @property
    def weights(self) -> Triple:
        return (1, self.a, self.r - self.a)

    @property
    def has_unit_weight(self) -> bool:
        return self.a == 1

    @property
    def input_a(self) -> int:
        """The second weight as the caller supplied it."""
        return self.r - self.a if self.swapped else self.a

    @property
    def input_b(self) -> int:
        return self.r - self.b if self.swapped else self.b

    def orient(self, t: Triple) -> Triple:
        """Map a canonical triple back to the caller's coordinates."""
        return (t[0], t[2], t[1]) if self.swapped else t


def weight(action: GroupAction, m: Triple) -> int:
    """Character of the Laurent monomial ``m`` as an integer in [0, r)."""
    return (m[0] + action.a * m[1] + (action.r - action.a) * m[2]) % action.r


def is_invariant(action: GroupAction, m: Triple) -> bool:
    return weight(action, m) == 0


def in_n(action: GroupAction, w: Triple) -> bool:
    """Whether the r-scaled triple ``w`` is a point of N."""
    r = action.r
    t = w[0] % r
    return (w[1] - t * action.a) % r == 0 and (w[2] - t * (r - action.a)) % r == 0


def primitive_n_vector(action: GroupAction, w: Triple) -> NVector:
    """Primitive generator, inside N, of the ray through ``w`` (r-scaled)."""
    if w == ZERO:
        raise ValueError("the zero vector does not span a ray")
    v = primitive_direction(w)
    r = action.r
    # r * v / r = v is in N0, so the minimal multiple is a divisor of r.
    for k in range(1, r + 1):
        if r % k == 0 and in_n(action, scale(k, v)):
            return scale(k, v)
    raise AssertionError("unreachable: r * v always lies in N")


def primitive_m_vector(action: GroupAction, m: Triple) -> Triple:
    """Primitive generator, inside M, of the ray through the exponent ``m``."""
    if m == ZERO:
        raise ValueError("the zero vector does not span a ray")
    v = primitive_direction(m)
    k = action.r // math.gcd(action.r, weight(action, v))
    return scale(k, v)


def rank(vectors: Iterable[Triple]) -> int:
    vs = [v for v in vectors if v != ZERO]
    if not vs:
        return 0
    first = vs[0]
    second = next((v for v in vs if cross(first, v) != ZERO), None)
    if second is None:
        return 1
    n = cross(first, second)
    return 3 if any(dot(n, v) != 0 for v in vs) else 2


def facet_normals(vectors: Sequence[Triple]) -> list:
    """Inward primitive integer normals of the facets of cone(vectors).

    Candidates are cross products of generator pairs; a candidate is a facet
    normal when every generator lies weakly on one side of it.  Raises
    DegenerateConeError unless the cone is full-dimensional and pointed.
    """
    vs = list(dict.fromkeys(v for v in vectors if v != ZERO))
    if rank(vs) < 3:
        raise DegenerateConeError("generators do not span 3-space")
    normals = []
    seen = set()
    for u, v in combinations(vs, 2):
        c = cross(u, v)
        if c == ZERO:
            continue
        signs = [dot(c, w) for w in vs]
        if all(s >= 0 for s in signs):
            n = primitive_direction(c)
        elif all(s <= 0 for s in signs):
            n = primitive_direction(neg(c))
        else:
            continue
        if n not in seen:
            seen.add(n)
            normals.append(n)
    if len(normals) < 3:
        raise DegenerateConeError("cone is not pointed")
    return normals


def _cyclic_order(rays: list) -> list:
    axis = (sum(v[0] for v in rays), sum(v[1] for v in rays), sum(v[2] for v in rays))
    start = min(rays)

    def half(v):
        d = det3(axis, start, v)
        if v == start:
            return (0, 0)
        if d > 0:
            return (0, 1)
        if d < 0:
            return (1, 1)
        return (1, 0)  # diametrically opposite the start

    def cmp(u, v):
        hu, hv = half(u), half(v)
        if hu != hv:
            return -1 if hu < hv else 1
        d = det3(axis, u, v)
        return -1 if d > 0 else (1 if d < 0 else 0)

    return sorted(rays, key=cmp_to_key(cmp))


def extremal_rays(vectors: Sequence[Triple]) -> list:
    """Extremal ray directions (primitive integer) of cone(vectors), cyclically ordered.

    Order is counterclockwise seen from inside the cone, starting at the
    lexicographically smallest ray.
    """
    dirs = list(dict.fromkeys(primitive_direction(v) for v in vectors if v != ZERO))
    normals = facet_normals(dirs)
    out = []
    for v in dirs:
        tight = [n for n in normals if dot(n, v) == 0]
        if rank(tight) >= 2:
            out.append(v)
    return _cyclic_order(out)


def dual_cone_3d(generators: Sequence[Triple], action: GroupAction) -> list:
    """Extremal rays (primitive, r-scaled in N) of the cone dual to cone(generators)."""
    normals = facet_normals(generators)
    rays = [primitive_n_vector(action, n) for n in normals]
    return _cyclic_order(rays)


def cone_contains(rays: Sequence[Triple], point: Triple, strict: bool = False) -> bool:
    """Exact membership of ``point`` in cone(rays); ``strict`` tests the interior."""
    normals = facet_normals(rays)
    if strict:
        return all(dot(n, point) > 0 for n in normals)
    return all(dot(n, point) >= 0 for n in normals)


def normalized_det(rays: Sequence[Triple], action: GroupAction) -> int:
    """|det| of three r-scaled rays measured against the covolume of N."""
    if len(rays) != 3:
        raise ValueError("normalized_det needs exactly three rays")
    d = abs(det3(*rays))
    q, rem = divmod(d, action.r ** 2)
    if rem:
        raise ValueError(f"determinant {d} is not a multiple of r^2; a ray is not in N")
    return q
