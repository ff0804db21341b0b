import json
from fractions import Fraction
from pathlib import Path

import pytest

from ghilb.cones import sigma
from ghilb.errors import FanConstructionError
from ghilb.euclid import gamma_1, primitive_sequence
from ghilb.fan import (
    UPPER,
    YZ,
    cross_section_area,
    e,
    rho_chain,
    triangle,
    triangle_region,
    validate_fan,
)
from ghilb.gset import from_span, gamma_x, gamma_yz, valleys
from ghilb.lattice import cone_contains, det3

from conftest import action, fan, oracle, sweep_pairs

GOLDEN = Path(__file__).parent / "data" / "fan_r5_a2.json"
X, Y, Z = (1, 0, 0), (0, 1, 0), (0, 0, 1)


def test_cross_section_area():
    assert cross_section_area([(1, 0, 0), (0, 1, 0), (0, 0, 1)]) == Fraction(1, 2)
    # section points (0,0), (1,0), (2/5,2/5)
    assert cross_section_area([(5, 0, 0), (0, 5, 0), (1, 2, 2)]) == Fraction(1, 5)


class TestTriangle:
    def test_r5(self, act52):
        tri = triangle(gamma_1(act52), 1)
        assert len(tri.members) == 3
        assert set(tri.members.values()) == {
            gamma_1(act52),
            from_span(act52, [(0, 2, 0), (1, 1, 0)]),
            from_span(act52, [Y, (1, 0, 1)]),
        }
        assert set(tri.support) == {(0, 0, 5), (6, 2, 3), (2, 4, 1)}

    def test_r5_boundary_rays_on_support_faces(self, act52):
        tri = triangle(gamma_1(act52), 1)
        s = tri.support
        faces = [(s[t], s[(t + 1) % 3]) for t in range(3)]
        for c in tri.cones.values():
            for w in c.rays:
                if w in s:
                    continue
                # every non-support ray sits exactly on some 2-face (collinear in the section)
                assert any(det3(u, v, w) == 0 for u, v in faces)

    def test_r14_size(self, act145):
        tri = triangle(gamma_1(act145), 1)
        assert len(tri.members) == 6
        for (m, n), g in tri.members.items():
            assert len(valleys(g)) == (2 if m + n < 2 else 1)

    def test_not_primitive(self, act52):
        with pytest.raises(FanConstructionError):
            triangle(gamma_x(act52))


class TestBuild:
    def test_golden_r5(self):
        gold = json.loads(GOLDEN.read_text())
        f = fan(5, 2)
        assert [list(w) for w in f.rays] == gold["rays"]
        built = sorted(
            ({"span": sorted(list(m) for m in c.gset.span()), "rays": [list(w) for w in c.cone.rays],
              "kind": c.kind} for c in f.cones),
            key=lambda c: c["span"])
        assert built == gold["cones"]
        assert [list(w) for w in rho_chain(f)] == gold["rho"]

    def test_regions_r5(self, act52):
        f = fan(5, 2)
        assert len(f.region(YZ)) == 5
        assert len(f.region(triangle_region(1))) == 3
        assert {c.gset for c in f.region(UPPER)} == {
            from_span(act52, [(2, 0, 0), (1, 0, 1)]), gamma_x(act52)}
        assert sum(c.kind == "quadric" for c in f.cones) == 1

    def test_r14(self):
        f = fan(14, 5)
        assert len(f.cones) == 37
        assert [len(t.members) for t in f.triangles] == [6, 6, 6, 3]
        assert f.upper == (from_span(action(14, 5), [(8, 0, 0), (4, 0, 1)]), gamma_x(action(14, 5)))

    def test_cones_match_sigma(self):
        f = fan(7, 3)
        for c in f.cones:
            assert c.cone == sigma(c.gset)
            assert tuple(f.rays[i] for i in c.ray_ids) == c.cone.rays

    @pytest.mark.parametrize("r,a", sweep_pairs(30))
    def test_oracle_equivalence(self, r, a):
        f = fan(r, a)
        assert {g.key for g in f.gsets} == {g.key for g in oracle(r, a)}
        assert len(f.gsets) == len(oracle(r, a))
        assert len(f.rho) == f.sequence.m + 1


class TestRho:
    def test_r5(self, act52):
        f = fan(5, 2)
        assert rho_chain(f) == [(6, 2, 3), (2, 4, 1)]
        # (1,2,3) lies on the face between e3 and rho_2 but is not extremal
        assert det3((0, 0, 5), (2, 4, 1), (1, 2, 3)) == 0

    def test_yz_halves_r5(self, act52):
        f = fan(5, 2)
        e1, e2, e3 = (e(act52, t) for t in (1, 2, 3))
        rho1 = f.rho[0]
        yz = f.region(YZ)
        e3_side = [l for l, c in enumerate(yz) if all(cone_contains([e1, e3, rho1], w) for w in c.cone.rays)]
        e2_side = [l for l, c in enumerate(yz) if all(cone_contains([e1, e2, rho1], w) for w in c.cone.rays)]
        assert e3_side == [0, 1] and e2_side == [2, 3, 4]

    def test_upper_support(self):
        f = fan(14, 5)
        act = f.action
        area = sum(cross_section_area(c.cone.rays) for c in f.region(UPPER))
        assert area == cross_section_area([f.rho[-1], e(act, 2), e(act, 3)])


class TestValidate:
    def test_r5(self):
        rep = validate_fan(fan(5, 2), oracle=oracle(5, 2))
        assert rep.ok, rep.failures
        assert rep.yz_split == {"e2": [2, 3, 4], "e3": [0, 1]}
        for name in ("walls", "coverage_samples", "oracle", "count"):
            assert rep.checks[name]

    def test_r14(self):
        rep = validate_fan(fan(14, 5), oracle=oracle(14, 5))
        assert rep.ok, rep.failures

    def test_yz_upper_labels(self):
        # the two G-sets with T_U = Gamma_1 sit at l = r - b - 1 and r - b
        from ghilb.errors import DegenerateWall
        from ghilb.gigsaw import Direction, transform

        for r, a in sweep_pairs(20):
            act = action(r, a)
            hits = []
            for l in range(r):
                try:
                    if transform(gamma_yz(act, l), Direction.UPPER) == gamma_1(act):
                        hits.append(l)
                except DegenerateWall:
                    pass
            assert hits == [r - act.b - 1, r - act.b]

    def test_detects_missing_cone(self):
        import dataclasses

        f = fan(7, 2)
        broken = dataclasses.replace(f, cones=f.cones[1:])
        rep = validate_fan(broken, oracle=oracle(7, 2), samples=300)
        assert not rep.ok
        assert not rep.checks["coverage_area"] and not rep.checks["oracle"] and not rep.checks["count"]

    def test_seed_recorded(self):
        rep = validate_fan(fan(7, 3), samples=50, seed=7)
        assert (rep.seed, rep.samples) == (7, 50)

    def test_sequence_consistent(self):
        f = fan(11, 3)
        assert f.sequence == primitive_sequence(f.action)
