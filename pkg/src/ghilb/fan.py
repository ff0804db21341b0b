"""Assembly and validation of the complete fan of the G-Hilbert scheme.

The fan is built constructively from three families of G-sets: the r
valley-free sets Gamma_yz,l around e1, the triangles of transformations of
the primitive G-sets, and the iterated upper transformations of the first
non-primitive member of the sequence.  Geometric statements about how the
pieces fit together are checked afterwards by :func:`validate_fan`.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .cones import Cone, check_cone, sigma
from .errors import ChainBroken, DegenerateWall, FanConstructionError
from .euclid import EuclidTrace, PrimitiveSequence, count_trace, predicted_count, primitive_sequence
from .gigsaw import Direction, transform
from .gset import GSet, from_span, gamma_x, gamma_yz, valleys
from .lattice import (
    GroupAction,
    Triple,
    cone_contains,
    det3,
    dot,
    extremal_rays,
    facet_normals,
    primitive_n_vector,
)

YZ = "yz"
UPPER = "upper"


def triangle_region(n: int) -> str:
    return f"triangle-{n}"


def e(action: GroupAction, axis: int) -> Triple:
    """Coordinate ray e1, e2 or e3 (axis 1..3), r-scaled."""
    v = [0, 0, 0]
    v[axis - 1] = action.r
    return tuple(v)


def cross_section_area(rays) -> Fraction:
    """Area of cone(rays) cut by w1 + w2 + w3 = 1, in (w2, w3) coordinates.

    ``rays`` must be in cyclic order and lie in the closed octant; the full
    octant has area 1/2.
    """
    pts = [(Fraction(w[1], sum(w)), Fraction(w[2], sum(w))) for w in rays]
    twice = sum(p[0] * q[1] - q[0] * p[1] for p, q in zip(pts, pts[1:] + pts[:1]))
    return abs(twice) / 2


def union_support(action: GroupAction, cones) -> list:
    """Extremal rays (primitive in N, cyclic) of the convex hull of the cones' rays."""
    dirs = extremal_rays([w for c in cones for w in c.rays])
    return [primitive_n_vector(action, d) for d in dirs]


@dataclass(frozen=True)
class Triangle:
    index: int
    base: GSet
    members: dict  # (m, n) -> GSet, member = T_UR^m(T_UL^n(base))
    cones: dict  # (m, n) -> Cone
    support: tuple

    @property
    def bound(self) -> int:
        return min(self.base.j, self.base.k)


def triangle(base: GSet, index: int = 0) -> Triangle:
    """All T_UR^m T_UL^n(base) for m + n <= min(j, k), cross-checked against their spans."""
    i, j, k = base.i, base.j, base.k
    vy = [v for v in valleys(base) if v.kind == "y"]
    vz = [v for v in valleys(base) if v.kind == "z"]
    if not (vy and vz and vy[0].position[1] == 0 and vz[0].position[2] == 0):
        raise FanConstructionError(f"{base!r} is not primitive")
    iy, iz = vy[0].position[0], vz[0].position[0]
    bound = min(j, k)
    members = {}
    column = base
    for n in range(bound + 1):
        g = column
        for m in range(bound - n + 1):
            expected = from_span(
                base.action,
                [(i, m, 0), (i, 0, n), (iy, j - n, 0), (iz, 0, k - m)],
            )
            if g != expected:
                raise FanConstructionError(f"T_UR^{m} T_UL^{n} of {base!r} is {g!r}, expected {expected!r}")
            nv = len(valleys(g))
            if nv != (2 if m + n < bound else 1):
                raise FanConstructionError(f"T_UR^{m} T_UL^{n} of {base!r} has {nv} valleys")
            members[(m, n)] = g
            if m + n < bound:
                g = transform(g, Direction.UPPER_RIGHT)
        if n < bound:
            column = transform(column, Direction.UPPER_LEFT)
    if len(members) != math.comb(bound + 2, 2):
        raise FanConstructionError("triangle has the wrong size")
    cones = {key: sigma(g) for key, g in members.items()}
    support = union_support(base.action, cones.values())
    if len(support) != 3:
        raise FanConstructionError(f"triangle support of {base!r} is not simplicial: {support}")
    return Triangle(index, base, members, cones, tuple(support))


def upper_chain(start: GSet) -> list:
    """start, T_U(start), T_U^2(start), ... ending at Gamma_x."""
    chain = [start]
    gx = gamma_x(start.action)
    while chain[-1] != gx:
        if len(chain) > start.action.r:
            raise FanConstructionError("upper chain does not reach Gamma_x")
        chain.append(transform(chain[-1], Direction.UPPER))
    return chain


@dataclass(frozen=True)
class FanCone:
    cone: Cone
    ray_ids: tuple
    region: str

    @property
    def gset(self) -> GSet:
        return self.cone.gset

    @property
    def kind(self) -> str:
        return self.cone.kind


@dataclass(frozen=True)
class Fan:
    action: GroupAction
    rays: tuple
    cones: tuple
    sequence: PrimitiveSequence
    triangles: tuple
    upper: tuple  # G-sets of the upper chain
    rho: tuple
    trace: EuclidTrace

    @property
    def gsets(self) -> list:
        return [c.gset for c in self.cones]

    def region(self, name: str) -> list:
        return [c for c in self.cones if c.region == name]


def build_fan(action: GroupAction) -> Fan:
    seq = primitive_sequence(action)
    tagged = [(gamma_yz(action, l), YZ) for l in range(action.r)]
    triangles = []
    for n, base in enumerate(seq.primitive, start=1):
        tri = triangle(base, n)
        triangles.append(tri)
        tagged.extend((g, triangle_region(n)) for _, g in sorted(tri.members.items()))
    last = seq.entries[-1]
    chain = upper_chain(seq.last)
    if len(chain) != max(last.j + 1, last.k + 1):
        raise FanConstructionError(f"upper chain has {len(chain)} members")
    tagged.extend((g, UPPER) for g in chain)

    seen = {}
    for g, region in tagged:
        if g.key in seen:
            raise FanConstructionError(f"{g!r} appears in both {seen[g.key]} and {region}")
        seen[g.key] = region

    tri_cones = {}
    for tri in triangles:
        for key, g in tri.members.items():
            tri_cones[g.key] = tri.cones[key]
    cones = [(tri_cones.get(g.key) or sigma(g), region) for g, region in tagged]
    rays = sorted({w for c, _ in cones for w in c.rays})
    index = {w: n for n, w in enumerate(rays)}
    fan_cones = tuple(FanCone(c, tuple(index[w] for w in c.rays), region) for c, region in cones)
    rho = tuple(_rho_chain(action, seq, triangles, [c for c, reg in cones if reg == UPPER]))
    return Fan(action, tuple(rays), fan_cones, seq, tuple(triangles), tuple(chain), rho, count_trace(action))


def _rho_chain(action, seq, triangles, upper_cones):
    out = []
    for tri in triangles:
        shared = set(tri.support) & set(sigma(tri.base).rays)
        if len(shared) != 1:
            raise ChainBroken(f"triangle {tri.index} shares {len(shared)} rays with its base cone")
        out.append(shared.pop())
    support = union_support(action, upper_cones)
    coordinate = {e(action, 2), e(action, 3)}
    rest = [w for w in support if w not in coordinate]
    if len(support) != 3 or not coordinate <= set(support) or len(rest) != 1:
        raise ChainBroken(f"upper chain support is {support}, expected cone(e2, e3, rho)")
    out.append(rest[0])
    return out


def rho_chain(fan: Fan) -> list:
    return list(fan.rho)


# ---------------------------------------------------------------- validation


@dataclass
class FanReport:
    r: int
    a: int
    seed: int
    samples: int
    checks: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    yz_split: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def record(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks[name] = self.checks.get(name, True) and ok
        if not ok:
            self.failures.append(f"{name}: {detail}" if detail else name)


def _on_coordinate_plane(u: Triple, v: Triple) -> bool:
    return any(u[t] == 0 and v[t] == 0 for t in range(3))


def _normals_table(fan: Fan) -> np.ndarray:
    """(cones, 4, 3) array of inward facet normals, padded by repetition."""
    out = []
    for c in fan.cones:
        ns = facet_normals(c.cone.rays)
        ns = ns + [ns[0]] * (4 - len(ns))
        out.append(ns)
    return np.array(out, dtype=np.int64)


def check_walls(fan: Fan, report: FanReport) -> None:
    walls: dict = {}
    for ci, c in enumerate(fan.cones):
        ids = c.ray_ids
        for t in range(len(ids)):
            a, b = ids[t], ids[(t + 1) % len(ids)]
            others = [x for x in ids if x not in (a, b)]
            walls.setdefault(frozenset((a, b)), []).append((ci, others))
    for wall, users in walls.items():
        a, b = sorted(wall)
        ra, rb = fan.rays[a], fan.rays[b]
        if _on_coordinate_plane(ra, rb):
            report.record("walls", len(users) == 1, f"boundary wall {ra},{rb} used {len(users)} times")
            continue
        if len(users) != 2:
            report.record("walls", False, f"interior wall {ra},{rb} used {len(users)} times")
            continue
        (c1, o1), (c2, o2) = users
        s1 = det3(ra, rb, fan.rays[o1[0]])
        s2 = det3(ra, rb, fan.rays[o2[0]])
        report.record("walls", s1 * s2 < 0, f"cones on wall {ra},{rb} overlap")
    report.record("walls", True)


def check_rays_not_inside(fan: Fan, normals: np.ndarray, report: FanReport) -> None:
    rays = np.array(fan.rays, dtype=np.int64)
    inside = (np.einsum("cfk,rk->crf", normals, rays) >= 0).all(axis=2)
    for ci, c in enumerate(fan.cones):
        extra = set(np.nonzero(inside[ci])[0]) - set(c.ray_ids)
        report.record("rays", not extra, f"cone {ci} contains foreign rays {sorted(extra)}")
    report.record("rays", True)


def check_coverage(fan: Fan, normals: np.ndarray, report: FanReport) -> None:
    total = sum(cross_section_area(c.cone.rays) for c in fan.cones)
    report.record("coverage_area", total == Fraction(1, 2), f"cross-section area {total} != 1/2")
    rng = random.Random(report.seed)
    pts = np.array(
        [[rng.randint(1, 10**6) for _ in range(3)] for _ in range(report.samples)], dtype=np.int64
    )
    vals = np.einsum("cfk,pk->pcf", normals, pts)
    closed = (vals >= 0).all(axis=2).sum(axis=1)
    interior = (vals > 0).all(axis=2).sum(axis=1)
    good = (interior == 1) | ((interior == 0) & (closed >= 2))
    bad = np.nonzero(~good)[0]
    report.record(
        "coverage_samples",
        len(bad) == 0,
        f"{len(bad)} sample points misplaced, first {pts[bad[0]].tolist() if len(bad) else None}",
    )


def check_structure(fan: Fan, report: FanReport) -> None:
    """The region-level statements: rho chain telescoping, yz halves, e2/e3 rule."""
    act = fan.action
    e1, e2, e3 = e(act, 1), e(act, 2), e(act, 3)
    rho = fan.rho
    m = len(fan.triangles)
    half = Fraction(1, 2)

    def c_area(n):  # cone(rho_n, e2, e3), 1-based n
        return cross_section_area([rho[n - 1], e2, e3])

    for tri in fan.triangles:
        n = tri.index
        members_area = sum(cross_section_area(c.rays) for c in tri.cones.values())
        report.record("triangle_support", members_area == cross_section_area(tri.support),
                      f"triangle {n} members do not fill their support")
        for c in tri.cones.values():
            for w in c.rays:
                report.record("triangle_support", cone_contains(tri.support, w),
                              f"ray {w} of triangle {n} outside the support")
        report.record("telescope", c_area(n) - c_area(n + 1) == cross_section_area(tri.support),
                      f"triangle {n} does not fill cone(rho_{n}) minus cone(rho_{n + 1})")
        report.record("telescope", all(cone_contains([rho[n - 1], e2, e3], w) for w in tri.support),
                      f"triangle {n} leaves cone(rho_{n}, e2, e3)")
        b = tri.base
        want = e2 if b.j < b.k else e3
        report.record("e2_e3_rule", want in tri.support, f"triangle {n} lacks {want}")

    upper_area = sum(cross_section_area(c.cone.rays) for c in fan.region(UPPER))
    report.record("upper_chain", upper_area == c_area(m + 1), "upper chain does not fill cone(rho, e2, e3)")

    yz = fan.region(YZ)
    report.record("yz_region", all(e1 in c.cone.rays for c in yz), "e1 missing from a yz cone")
    yz_area = sum(cross_section_area(c.cone.rays) for c in yz)
    report.record("yz_region", yz_area == half - c_area(1), "yz cones do not fill the complement")
    side2 = [e1, e2, rho[0]]
    side3 = [e1, e3, rho[0]]
    split = {"e2": [], "e3": []}
    for l, c in enumerate(yz):
        if all(cone_contains(side2, w) for w in c.cone.rays):
            split["e2"].append(l)
        elif all(cone_contains(side3, w) for w in c.cone.rays):
            split["e3"].append(l)
        else:
            report.record("yz_region", False, f"Gamma_yz,{l} straddles rho_1")
    report.yz_split = split
    sizes = sorted(len(v) for v in split.values())
    report.record("yz_region", sizes == sorted([act.b, act.r - act.b]), f"yz split sizes {sizes}")
    for name, sid in (("e2", side2), ("e3", side3)):
        area = sum(cross_section_area(yz[l].cone.rays) for l in split[name])
        report.record("yz_region", area == cross_section_area(sid), f"yz half {name} not filled")

    gamma1 = fan.sequence.members[0]
    hits = []
    for l in range(act.r):
        try:
            if transform(gamma_yz(act, l), Direction.UPPER) == gamma1:
                hits.append(l)
        except DegenerateWall:
            pass
    report.record("yz_upper", len(hits) == 2 and hits[1] == hits[0] + 1,
                  f"T_U(Gamma_yz,l) = Gamma_1 for l in {hits}")


def validate_fan(fan: Fan, oracle: Optional[list] = None, samples: int = 1000, seed: int = 0) -> FanReport:
    report = FanReport(fan.action.r, fan.action.a, seed, samples)
    for c in fan.cones:
        problems = check_cone(c.cone)
        report.record("cones", not problems, f"{c.gset!r}: {problems}")
    report.record("cones", True)
    normals = _normals_table(fan)
    check_walls(fan, report)
    check_rays_not_inside(fan, normals, report)
    check_coverage(fan, normals, report)
    check_structure(fan, report)
    expected = predicted_count(fan.action)
    report.record("count", len(fan.cones) == expected, f"{len(fan.cones)} cones, formula gives {expected}")
    if oracle is not None:
        built = {g.key for g in fan.gsets}
        brute = {g.key for g in oracle}
        report.record("oracle", built == brute and len(oracle) == len(brute),
                      f"{len(built - brute)} built-only, {len(brute - built)} oracle-only")
    return report
