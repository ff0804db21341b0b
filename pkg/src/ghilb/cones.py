"""Maximal cones attached to G-sets and the checks behind their classification."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import DominationFailure
from .gset import GSet, s_value, valley_of, valleys
from .lattice import (
    Triple,
    X,
    Y,
    Z,
    add,
    det3,
    dot,
    dual_cone_3d,
    is_invariant,
    normalized_det,
    sub,
)

SMOOTH = "smooth"
QUADRIC = "quadric"


@dataclass(frozen=True)
class Cone:
    gset: GSet
    dual_generators: tuple
    rays: tuple
    kind: str

    @property
    def is_smooth(self) -> bool:
        return self.kind == SMOOTH


def complement_generators(g: GSet) -> list:
    """Minimal monomials outside ``g`` (generators of the complement ideal)."""
    out = set()
    for w in g.members:
        for t in (X, Y, Z):
            u = add(w, t)
            if u in g:
                continue
            if all(min(sub(u, e)) < 0 or sub(u, e) in g for e in (X, Y, Z)):
                out.add(u)
    return sorted(out)


def boundary_monomials(g: GSet) -> dict:
    """alpha, beta, gamma and, when the valleys exist, delta_y and delta_z."""
    out = {
        "alpha": (g.i + 1, 0, 0),
        "beta": (0, g.j + 1, 0),
        "gamma": (0, 0, g.k + 1),
    }
    vy, vz = valley_of(g, "y"), valley_of(g, "z")
    if vy is not None:
        out["delta_y"] = add(vy, (1, 1, 0))
    if vz is not None:
        out["delta_z"] = add(vz, (1, 0, 1))
    return out


def _solve3(basis, m):
    """Coefficients of ``m`` in the (rational) basis, via Cramer's rule."""
    b0, b1, b2 = basis
    # m = c0 b0 + c1 b1 + c2 b2, solved column-wise
    cols = [(b0[t], b1[t], b2[t]) for t in range(3)]

    def col_det(replace):
        rows = []
        for t in range(3):
            row = list(cols[t])
            row[replace] = m[t]
            rows.append(tuple(row))
        return det3(*rows)

    base = det3(*cols)
    if base == 0:
        return None
    return [Fraction(col_det(c), base) for c in range(3)]


def in_semigroup(gens, m) -> bool:
    """Whether ``m`` is a nonnegative integer combination of some 3 of ``gens``.

    Exact for the situation at hand, where every 3-subset of independent
    generators is a basis of M.
    """
    for triple in combinations(gens, 3):
        coeffs = _solve3(triple, m)
        if coeffs and all(c >= 0 and c.denominator == 1 for c in coeffs):
            return True
    return False


def dual_generators(g: GSet) -> list:
    """Semigroup generators of S(g): three s-values, or four with two valleys."""
    b = boundary_monomials(g)
    if len(valleys(g)) == 2:
        names = ("beta", "gamma", "delta_y", "delta_z")
    else:
        names = ("alpha", "beta", "gamma")
    gens = [s_value(g, b[n]) for n in names]
    for u in complement_generators(g):
        su = s_value(g, u)
        if not in_semigroup(gens, su):
            raise DominationFailure(f"s-value {su} of {u} is not generated by {gens} for {g!r}")
    return gens


def sigma(g: GSet) -> Cone:
    gens = dual_generators(g)
    rays = dual_cone_3d(gens, g.action)
    kind = QUADRIC if len(valleys(g)) == 2 else SMOOTH
    expected = 4 if kind == QUADRIC else 3
    if len(rays) != expected:
        raise DominationFailure(f"{g!r}: expected {expected} rays, got {rays}")
    return Cone(g, tuple(gens), tuple(rays), kind)


def quadric_certificate(g: GSet) -> tuple:
    """Binomial relation and determinant certificate for a two-valley G-set.

    Returns ``(relation_ok, det)`` where ``relation_ok`` says
    s(beta) + s(delta_z) == s(gamma) + s(delta_y) == yz and ``det`` is the
    absolute determinant of the closed-form 3x3 matrix built from
    (i, j, k) and the valley exponents.  Also asserts the closed-form rows
    agree with the computed s-values.
    """
    vy, vz = valley_of(g, "y"), valley_of(g, "z")
    if vy is None or vz is None:
        raise ValueError("quadric_certificate needs a G-set with two valleys")
    b = boundary_monomials(g)
    sb, sc = s_value(g, b["beta"]), s_value(g, b["gamma"])
    sdy, sdz = s_value(g, b["delta_y"]), s_value(g, b["delta_z"])
    yz = (0, 1, 1)
    relation_ok = add(sb, sdz) == yz and add(sc, sdy) == yz
    iy, jy = vy[0], vy[1]
    iz, kz = vz[0], vz[2]
    j, k = g.j, g.k
    rows = ((-iz - 1, j + 1, -kz), (iy + 1, jy + 1, -k), (-iy - 1, -jy, k + 1))
    if rows != (sb, sdy, sc):
        relation_ok = False
    return relation_ok, abs(det3(*rows))


def _m_points(action, box):
    """All invariant lattice points with coordinates in [-box, box], as an array."""
    r, a = action.r, action.a
    rng = np.arange(-box, box + 1, dtype=np.int64)
    q, s = np.meshgrid(rng, rng, indexing="ij")
    q, s = q.ravel(), s.ravel()
    # p = p0 + r*t with p0 = -(a q + (r-a) s) mod r
    p0 = (-(a * q + (r - a) * s)) % r
    p0 = np.where(p0 > box, p0 - r, p0)  # smallest candidate >= -box
    p0 = p0 - r * ((p0 + box) // r)
    pts = []
    t = 0
    while True:
        p = p0 + r * t
        keep = p <= box
        if not keep.any():
            break
        pts.append(np.stack([p[keep], q[keep], s[keep]], axis=1))
        t += 1
    return np.concatenate(pts)


def saturation_check(g: GSet, box: int | None = None) -> bool:
    """Bounded evidence that S(g) is saturated in M.

    Every point of M in sigma-dual(g) with coordinates in [-box, box] must be
    a nonnegative integer combination of the dual generators.  Default box
    is 4r.
    """
    if box is None:
        box = 4 * g.action.r
    cone = sigma(g)
    gens = np.array(cone.dual_generators, dtype=np.int64)
    pts = _m_points(g.action, box)
    rays = np.array(cone.rays, dtype=np.int64)
    inside = (pts @ rays.T >= 0).all(axis=1)
    pts = pts[inside]
    covered = np.zeros(len(pts), dtype=bool)
    for idx in combinations(range(len(gens)), 3):
        basis = gens[list(idx)]  # rows are generators
        d = det3(*(tuple(int(v) for v in row) for row in basis))
        if d == 0:
            continue
        # exact integer adjugate: coeffs = pts @ inv(basis) = pts @ adj / d
        adj = _adjugate(basis)
        num = pts @ adj
        ok = (num % d == 0).all(axis=1) & ((num * np.sign(d)) >= 0).all(axis=1)
        covered |= ok
    return bool(covered.all())


def _adjugate(mat):
    m = [[int(v) for v in row] for row in mat]
    adj = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            rows = [r for k, r in enumerate(m) if k != j]
            minor = [[v for l, v in enumerate(r) if l != i] for r in rows]
            adj[i][j] = (-1) ** (i + j) * (minor[0][0] * minor[1][1] - minor[0][1] * minor[1][0])
    return np.array(adj, dtype=np.int64)


def basis_index(gens, action) -> Fraction:
    """|det(gens)| / r, the index of the span of three M-vectors in M (1 for a basis)."""
    return Fraction(abs(det3(*gens)), action.r)


def check_cone(cone: Cone) -> list:
    """Return a list of violated cone invariants (empty when all hold)."""
    g = cone.gset
    act = g.action
    problems = []
    if not all(is_invariant(act, m) for m in cone.dual_generators):
        problems.append("dual generator not invariant")
    if len(set(cone.rays)) != len(cone.rays):
        problems.append("repeated ray")
    for ray in cone.rays:
        pair = [dot(ray, m) for m in cone.dual_generators]
        if min(pair) < 0:
            problems.append(f"ray {ray} pairs negatively")
        if sum(1 for p in pair if p == 0) != 2:
            problems.append(f"ray {ray} is not tight on exactly two generators")
    if cone.is_smooth:
        if normalized_det(cone.rays, act) != 1:
            problems.append("smooth cone is not unimodular")
    else:
        r1, r2, r3, r4 = cone.rays
        t1 = normalized_det((r1, r2, r3), act) + normalized_det((r1, r3, r4), act)
        t2 = normalized_det((r2, r3, r4), act) + normalized_det((r2, r4, r1), act)
        if t1 != t2:
            problems.append("triangulations disagree")
    return problems
