import pytest

from torus_nielsen.descriptor import HomotopyDescriptor
from torus_nielsen.errors import ClassicalNonzero, DimensionMismatch, NotReducedBasis
from torus_nielsen.hochschild import GroupElement, boundary_d1
from torus_nielsen.intlin import IntMatrix
from torus_nielsen.nielsen import (INFINITE, OneParamCase, circle_trace, classical_nielsen,
                                   jezierski_D, lefschetz_class, nielsen_from_invariant_factors,
                                   one_param_matrix, one_param_nielsen, reduce_basis,
                                   semicentralizer, semiconjugacy_classes, trace_components,
                                   trace_lefschetz, trace_nielsen)

D = HomotopyDescriptor.create


@pytest.mark.parametrize("rows, expected", [
    ([[2, 0], [0, 2]], 1),
    ([[0, -1], [1, 0]], 2),
    ([[1, 1], [0, 2]], 0),
    ([[3]], 2),
])
def test_classical_nielsen(rows, expected):
    assert classical_nielsen(IntMatrix.from_rows(rows)) == expected


def test_descriptor_validation():
    with pytest.raises(DimensionMismatch):
        D([[1, 0]], [0])
    with pytest.raises(DimensionMismatch):
        D([[1]], [1, 2])


@pytest.mark.parametrize("rows, c, N, alpha, case", [
    ([[1]], [4], 4, (1,), OneParamCase.FULL_RANK),
    ([[1]], [-2], 2, (1,), OneParamCase.FULL_RANK),
    ([[1]], [0], 0, None, OneParamCase.RANK_DEFICIENT),
    ([[1, 1], [0, 2]], [0, 1], 1, (1, 0), OneParamCase.FULL_RANK),
    ([[1, 0], [0, 2]], [3, 5], 3, (1, 0), OneParamCase.FULL_RANK),
    ([[2, -1], [1, 0]], [3, 1], 2, (1, 1), OneParamCase.FULL_RANK),
    ([[2, 0], [0, 2]], [1, 1], 0, None, OneParamCase.CLASSICAL_NONZERO),
    ([[1, 0], [0, 1]], [2, 3], 0, None, OneParamCase.RANK_DEFICIENT),
    ([[1, 1], [0, 1]], [1, 0], 0, None, OneParamCase.RANK_DEFICIENT),
])
def test_one_param_nielsen(rows, c, N, alpha, case):
    result = one_param_nielsen(D(rows, c))
    assert (result.N, result.alpha_direction, result.case) == (N, alpha, case)
    assert result.sign_ambiguous == (N > 0)


def test_reduce_basis():
    P, reduced = reduce_basis(D([[2, -1], [1, 0]], [3, 1]))
    assert P.to_rows() == [[1, 0], [1, 1]]
    assert reduced.phi.to_rows() == [[1, -1], [0, 1]] and reduced.c == (3, -2)
    assert one_param_matrix(reduced).to_rows() == [[-1, 3], [0, -2]]
    with pytest.raises(ClassicalNonzero):
        reduce_basis(D([[2, 0], [0, 2]], [0, 0]))
    with pytest.raises(NotReducedBasis):
        one_param_matrix(D([[0, 1], [1, 0]], [0, 0]))


def test_lefschetz_class():
    assert lefschetz_class(D([[1, 1], [0, 2]], [0, 1])) == (1, (1, 0), True)
    assert lefschetz_class(D([[2, 0], [0, 2]], [5, 1])) == (0, None, True)


def test_semiconjugacy_classes():
    structure, reps = semiconjugacy_classes(D([[1]], [3]))
    assert structure.order == 3 and reps == [GroupElement((k,)) for k in range(3)]
    structure, reps = semiconjugacy_classes(D([[1, 0], [0, 1]], [0, 0]))
    assert reps == INFINITE and structure.free_rank == 2
    structure, reps = semiconjugacy_classes(D([[1, 1], [0, 2]], [0, 1]))
    assert structure.order == 1 and len(reps) == 1
    structure, reps = semiconjugacy_classes(D([[3, 0], [0, 3]], [0, 0]))
    assert structure.invariant_factors == (2, 2) and len(reps) == 4


def test_representatives_are_distinct_classes():
    desc = D([[1, 0], [0, 4]], [3, 2])
    _, reps = semiconjugacy_classes(desc)
    for i, a in enumerate(reps):
        for b in reps[i + 1:]:
            assert desc.class_smith.solve((b / a).exponents) is None
    assert len(reps) == one_param_nielsen(desc).N == 9


def test_representatives_count_N_in_the_full_rank_case(rng, random_phi):
    checked = 0
    while checked < 100:
        n = rng.choice((1, 2, 3))
        desc = D(random_phi(rng, n, -2, 2, eigenvalue_one=True),
                 [rng.randint(-3, 3) for _ in range(n)])
        result = one_param_nielsen(desc)
        if result.case is not OneParamCase.FULL_RANK:
            continue
        _, reps = semiconjugacy_classes(desc)
        assert len(reps) == result.N, desc
        checked += 1


def test_semicentralizer():
    assert semicentralizer(D([[1, 1], [0, 2]], [0, 0])) == [(1, 0)]
    assert semicentralizer(D([[2, 0], [0, 2]], [0, 0])) == []
    assert semicentralizer(D([[1, 0], [0, 1]], [0, 0])) == [(1, 0), (0, 1)]


@pytest.mark.parametrize("rows, c, expected", [
    ([[1]], [3], 3),
    ([[1, 0], [0, 1]], [2, 4], 0),
    ([[1, 0], [0, 2]], [3, 5], 3),
    ([[3, 0], [0, 3]], [0, 0], 4),
])
def test_jezierski_D(rows, c, expected):
    assert jezierski_D(D(rows, c)) == expected


def test_invariant_factor_route():
    assert nielsen_from_invariant_factors(D([[1, 2], [0, -1]], [1, 1])) == 4
    assert nielsen_from_invariant_factors(D([[2, 0], [0, 2]], [1, 1])) == 0
    assert nielsen_from_invariant_factors(D([[1, 0], [0, 1]], [1, 1])) == 0


@pytest.mark.parametrize("c", range(-5, 6))
def test_circle_trace(c):
    desc = D([[1]], [c])
    ch = circle_trace(c)
    assert not boundary_d1(ch)
    assert trace_nielsen(ch, desc) == abs(c) == one_param_nielsen(desc).N
    assert trace_lefschetz(ch, desc) == (-c,)
    assert all(abs(k) == 1 for k in trace_components(ch, desc).values())


def test_trace_of_classical_nonzero_homotopy_vanishes():
    desc = D([[2]], [1])
    assert trace_components(circle_trace(0), desc) == {}
    assert trace_lefschetz(circle_trace(0), desc) == (0,)
