import pytest

from ghilb.cones import sigma
from ghilb.errors import DegenerateWall, IllegalDirection
from ghilb.gigsaw import Direction, available_directions, direction_monomial, iterate, transform
from ghilb.gset import from_span, gamma_x, gamma_yz, valley_of, valleys
from ghilb.lattice import cross, primitive_direction, sub

from conftest import action, oracle, sweep_pairs

U, R, L, UR, UL = (Direction.UPPER, Direction.RIGHT, Direction.LEFT,
                   Direction.UPPER_RIGHT, Direction.UPPER_LEFT)
X, Y, Z, ONE = (1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, 0)


def two_valley(pairs):
    for r, a in pairs:
        for g in oracle(r, a):
            if len(valleys(g)) == 2:
                yield g


def indices(g):
    vy, vz = valley_of(g, "y"), valley_of(g, "z")
    return g.i, g.j, g.k, vy[0], vy[1], vz[0], vz[2]


def span_of(g, rows):
    return from_span(g.action, [m for m in rows if min(m) >= 0])


@pytest.fixture
def quad52(act52):
    return from_span(act52, [X, (0, 2, 0), Z])


class TestDirectionMonomial:
    def test_upper(self, act52):
        assert direction_monomial(from_span(act52, [Y, (1, 0, 1)]), U) == ((2, 0, 0), Y)
        assert direction_monomial(gamma_yz(act52, 2), U) == (X, (0, 0, 2))

    def test_two_valley_binding(self, quad52):
        # bound by the span rows: L adds z^(k+1), UL adds x^i z^(k_z+1)
        assert direction_monomial(quad52, L) == ((0, 0, 2), X)
        assert direction_monomial(quad52, UL) == ((1, 0, 1), (0, 2, 0))
        assert direction_monomial(quad52, R) == ((0, 3, 0), (1, 0, 0))
        assert direction_monomial(quad52, UR) == ((1, 1, 0), Z)

    def test_illegal(self, act52, quad52):
        with pytest.raises(IllegalDirection):
            direction_monomial(quad52, U)
        with pytest.raises(IllegalDirection):
            direction_monomial(gamma_x(act52), UR)


class TestTransform:
    def test_examples(self, act52, act145, quad52):
        assert transform(from_span(act52, [Y, (1, 0, 1)]), U) == from_span(act52, [(2, 0, 0), (1, 0, 1)])
        assert transform(quad52, UR) == from_span(act52, [(0, 2, 0), (1, 1, 0)])
        assert transform(quad52, UL) == from_span(act52, [Y, (1, 0, 1)])
        g5 = from_span(act145, [(8, 0, 0), (4, 0, 1)])
        assert transform(g5, U) == gamma_x(act145)

    def test_degenerate(self, act52):
        with pytest.raises(DegenerateWall):
            transform(gamma_x(act52), U)
        # right is driven by y^r and left by z^r, both of weight 0
        with pytest.raises(DegenerateWall):
            transform(gamma_yz(act52, 0), R)
        with pytest.raises(DegenerateWall):
            transform(gamma_yz(act52, 4), L)
        assert available_directions(gamma_yz(act52, 0)) == [U, L]

    def test_iterate(self, quad52):
        assert iterate(quad52, UR, 0) == quad52
        assert iterate(quad52, UR, 1) == transform(quad52, UR)


class TestAvailable:
    def test_examples(self, act52, quad52):
        assert available_directions(gamma_x(act52)) == [R, L]
        assert available_directions(quad52) == [UR, UL]
        assert available_directions(from_span(act52, [(2, 0, 0), (1, 0, 1)])) == [U, R, L]

    @pytest.mark.parametrize("r,a", sweep_pairs(20))
    def test_all_available_transform(self, r, a):
        for g in oracle(r, a):
            for d in available_directions(g):
                assert len(transform(g, d)) == r


class TestSpanFormulas:
    @pytest.mark.parametrize("r,a", sweep_pairs(30))
    def test_upper_one_valley(self, r, a):
        hits = 0
        for g in oracle(r, a):
            vs = valleys(g)
            if len(vs) != 1:
                continue
            kind, pos = vs[0]
            i, j, k = g.i, g.j, g.k
            if kind == "y" and pos[1] == 0:
                iy = pos[0]
                want = [(i + iy + 1, 0, 0), (iy, j - 1, 0), (i, 0, k)]
            elif kind == "z" and pos[2] == 0:
                iz = pos[0]
                want = [(i + iz + 1, 0, 0), (i, j, 0), (iz, 0, k - 1)]
            else:
                continue
            hits += 1
            assert transform(g, U) == from_span(g.action, want)
        assert hits > 0

    @pytest.mark.parametrize("r,a", sweep_pairs(30))
    def test_two_valley_rows(self, r, a):
        for g in two_valley([(r, a)]):
            i, j, k, iy, jy, iz, kz = indices(g)
            if kz >= 1:
                assert transform(g, R) == span_of(g, [(i, jy, 0), (i, 0, kz - 1), (iy, j + 1, 0), (iz, 0, k)])
            if jy >= 1:
                assert transform(g, L) == span_of(g, [(i, jy - 1, 0), (i, 0, kz), (iy, j, 0), (iz, 0, k + 1)])
            assert transform(g, UR) == span_of(g, [(i, jy + 1, 0), (i, 0, kz), (iy, j, 0), (iz, 0, k - 1)])
            assert transform(g, UL) == span_of(g, [(i, jy, 0), (i, 0, kz + 1), (iy, j - 1, 0), (iz, 0, k)])

    @pytest.mark.parametrize("r,a", sweep_pairs(30))
    def test_iterated(self, r, a):
        for g in two_valley([(r, a)]):
            i, j, k, iy, jy, iz, kz = indices(g)
            bound = min(j, k, j - jy, k - kz)
            col = g
            for n in range(bound + 1):
                h = col
                for m in range(bound - n + 1):
                    want = span_of(g, [(i, jy + m, 0), (i, 0, kz + n), (iy, j - n, 0), (iz, 0, k - m)])
                    assert h == want
                    assert len(valleys(h)) == (2 if m + n < bound else 1)
                    if m + n < bound:
                        h = transform(h, UR)
                if n < bound:
                    col = transform(col, UL)


class TestCalculus:
    @pytest.mark.parametrize("r,a", sweep_pairs(30))
    def test_inverse_pairs(self, r, a):
        for g in two_valley([(r, a)]):
            _, j, k, _, jy, _, kz = indices(g)
            if jy >= 1 and kz >= 1:
                assert transform(transform(g, UL), R) == g
                assert transform(transform(g, R), UL) == g
                assert transform(transform(g, UR), L) == g
                assert transform(transform(g, L), UR) == g

    @pytest.mark.parametrize("r,a", sweep_pairs(30))
    def test_commute(self, r, a):
        for g in two_valley([(r, a)]):
            _, j, k, _, jy, _, kz = indices(g)
            if min(j, k, j - jy, k - kz) >= 2:
                assert transform(transform(g, UR), UL) == transform(transform(g, UL), UR)


@pytest.mark.parametrize("r,a", sweep_pairs(16))
def test_adjacency(r, a):
    for g in oracle(r, a):
        for d in available_directions(g):
            u, v = direction_monomial(g, d)
            h = transform(g, d)
            shared = set(sigma(g).rays) & set(sigma(h).rays)
            assert len(shared) == 2
            w1, w2 = sorted(shared)
            normal = primitive_direction(cross(w1, w2))
            step = primitive_direction(sub(u, v))
            assert normal in (step, tuple(-t for t in step))
