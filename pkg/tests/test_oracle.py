from fractions import Fraction

import pytest

from torus_nielsen._config import config
from torus_nielsen.descriptor import HomotopyDescriptor
from torus_nielsen.errors import (DimensionMismatch, MalformedInput, ResolutionTooCoarse,
                                  UnsupportedDimension)
from torus_nielsen.intlin import IntMatrix
from torus_nielsen.nielsen import one_param_nielsen
from torus_nielsen.oracle import (FixedSetMethod, LinearHomotopy, choose_generic_epsilon,
                                  default_grid_resolution, fixed_set_exact, fixed_set_grid,
                                  parse_epsilon, torus_image_contains)
from torus_nielsen.oracle.unionfind import UnionFind

D = HomotopyDescriptor.create


def _solves(h: LinearHomotopy, x, t) -> bool:
    values = h.desc.class_matrix @ (tuple(x) + (t,))
    return all((v + e).denominator == 1 for v, e in zip(values, h.epsilon))


def test_union_find():
    uf = UnionFind(6)
    uf.union(5, 3)
    uf.union(4, 5)
    uf.union(0, 1)
    assert uf.num_components == 3
    assert uf.find(4) == uf.find(3) == 3
    assert uf.find(1) == 0 and uf.find(2) == 2
    uf.union(3, 4)
    assert uf.num_components == 3


def test_parse_epsilon():
    assert parse_epsilon("1/11,1/13") == (Fraction(1, 11), Fraction(1, 13))
    assert parse_epsilon(" 3/4 ") == (Fraction(3, 4),)
    for bad in ("1/0", "a,1/2", ""):
        with pytest.raises(MalformedInput):
            parse_epsilon(bad)


def test_linear_homotopy_normalises_epsilon():
    h = LinearHomotopy(D([[1]], [1]), (Fraction(5, 4),))
    assert h.epsilon == (Fraction(1, 4),)
    h = LinearHomotopy(D([[1]], [1]), (Fraction(-1, 3),))
    assert h.epsilon == (Fraction(2, 3),)
    with pytest.raises(DimensionMismatch):
        LinearHomotopy(D([[1]], [1]), (Fraction(1, 3), Fraction(1, 5)))


def test_torus_image_contains():
    M = IntMatrix.from_rows([[0, 2], [0, 0]])
    assert torus_image_contains(M, (Fraction(1, 3), Fraction(0)))
    assert not torus_image_contains(M, (Fraction(0), Fraction(1, 3)))
    assert torus_image_contains(M, (Fraction(0), Fraction(2)))


def test_exact_circle_case():
    report = fixed_set_exact(LinearHomotopy(D([[1]], [2]), (Fraction(1, 7),)))
    assert report.component_count == 2 and report.method is FixedSetMethod.EXACT
    assert sorted(t for _, t in report.samples) == [Fraction(3, 7), Fraction(13, 14)]


def test_exact_samples_solve_the_equation(rng, random_phi):
    for _ in range(60):
        n = rng.choice((1, 2, 3))
        desc = D(random_phi(rng, n, -2, 2), [rng.randint(-2, 2) for _ in range(n)])
        h = LinearHomotopy(desc, choose_generic_epsilon(desc))
        report = fixed_set_exact(h)
        assert len(report.samples) == report.component_count
        for x, t in report.samples:
            assert _solves(h, x, t)
            assert all(0 <= y < 1 for y in x + (t,))


def test_exact_count_is_empty_off_the_image():
    h = LinearHomotopy(D([[1, 0], [0, 1]], [1, 0]), (Fraction(0), Fraction(1, 7)))
    assert fixed_set_exact(h).component_count == 0


def test_grid_circle_case():
    h = LinearHomotopy(D([[1]], [2]), (Fraction(1, 7),))
    assert fixed_set_grid(h).component_count == 2
    report = fixed_set_grid(h, resolution=96, workers=2, samples=True)
    assert report.component_count == 2 and report.method is FixedSetMethod.GRID
    assert all(isinstance(t, Fraction) and t.denominator <= 96 for _, t in report.samples)


def test_grid_matches_exact_count_in_dimension_two():
    desc = D([[1, 1], [0, 2]], [1, 3])
    h = LinearHomotopy(desc, choose_generic_epsilon(desc))
    assert fixed_set_grid(h, resolution=128).component_count == \
        fixed_set_exact(h).component_count == one_param_nielsen(desc).N == 2


@pytest.mark.parametrize("rows, c, N", [
    ([[1, 0, 0], [0, 2, 0], [0, 0, 2]], [1, 0, 0], 1),
    ([[1, 0, 0], [0, 2, 0], [0, 0, 3]], [2, 0, 0], 4),
])
def test_grid_in_dimension_three(rows, c, N):
    desc = D(rows, c)
    assert default_grid_resolution(desc) == config["grid-resolution-3d"]
    h = LinearHomotopy(desc, choose_generic_epsilon(desc, 0))
    report = fixed_set_grid(h, workers=2, samples=True)
    assert report.component_count == fixed_set_exact(h).component_count == \
        one_param_nielsen(desc).N == N
    assert len(report.samples) == N and all(len(x) == 3 for x, _ in report.samples)


def test_grid_joins_slices_across_t_equals_one():
    # x = (j - t - 1/7) / 2: the branches j = 0, 1 meet only through t = 1 ~ t = 0
    h = LinearHomotopy(D([[3]], [1]), (Fraction(1, 7),))
    assert fixed_set_exact(h).component_count == 1
    report = fixed_set_grid(h, resolution=64, samples=True)
    assert report.component_count == 1
    assert [t for _, t in report.samples] == [0]


def test_grid_resolution_grows_with_the_spread():
    assert default_grid_resolution(D([[1]], [2])) == config["grid-resolution"]
    assert default_grid_resolution(D([[1, 0], [0, 60]], [30, 0])) == 4 * (1 + 59)


def test_grid_rejects_bad_parameters():
    h = LinearHomotopy(D([[1]], [2]), (Fraction(1, 7),))
    with pytest.raises(ResolutionTooCoarse):
        fixed_set_grid(h, resolution=8)
    with pytest.raises(ResolutionTooCoarse):
        fixed_set_grid(h, resolution=64, tol=0.001)
    with pytest.raises(ResolutionTooCoarse):
        fixed_set_grid(h, resolution=64, tol=0.6)
    big = D(IntMatrix.identity(4).to_rows(), [0, 0, 0, 1])
    with pytest.raises(UnsupportedDimension):
        fixed_set_grid(LinearHomotopy(big, (Fraction(1, 3),) * 4))


def test_generic_epsilon():
    desc = D([[1, 1], [0, 2]], [0, 1])
    assert choose_generic_epsilon(desc, 0) == (Fraction(1, 3), Fraction(1, 9))
    assert choose_generic_epsilon(desc, 1) == (Fraction(1, 5), Fraction(1, 25))
    assert choose_generic_epsilon(desc) == choose_generic_epsilon(desc, config["seed"])
    assert choose_generic_epsilon(D([[1]], [3]), 0) == (Fraction(1, 7),)


def test_generic_epsilon_avoids_rank_deficient_fixed_sets():
    for c in ([0, 0], [1, 1], [3, -2]):
        desc = D([[1, 0], [0, 1]], c)
        for seed in range(3):
            h = LinearHomotopy(desc, choose_generic_epsilon(desc, seed))
            assert fixed_set_exact(h).component_count == 0
