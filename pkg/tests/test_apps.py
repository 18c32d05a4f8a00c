import pytest

from torus_nielsen.apps import (T2BundleMapData, bundle_S1_descriptor, bundle_S1_min_circles,
                                bundle_T2_descriptor, bundle_T2_homotopy, bundle_T2_min_circles)
from torus_nielsen.errors import MalformedInput
from torus_nielsen.oracle import fixed_set_exact


@pytest.mark.parametrize("b12, b22, c1, c2, expected", [
    (0, -1, 2, 1, 4),
    (1, 1, 0, 3, 3),
    (0, 1, 5, -2, 0),
    (2, 3, 1, 1, 0),
    (-1, 0, 2, 2, 0),
    (3, 2, 0, -1, 3),
])
def test_bundle_T2_min_circles(b12, b22, c1, c2, expected):
    assert bundle_T2_min_circles(T2BundleMapData(b12, b22, c1, c2)) == expected


def test_bundle_T2_descriptor():
    desc = bundle_T2_descriptor(T2BundleMapData(2, -1, 1, 3))
    assert desc.phi.to_rows() == [[1, 2], [0, -1]] and desc.c == (1, 3)


def test_monodromy_case_is_metadata():
    with_case = T2BundleMapData(1, 2, 3, 0, case="III")
    assert bundle_T2_min_circles(with_case) == bundle_T2_min_circles(T2BundleMapData(1, 2, 3, 0))
    with pytest.raises(MalformedInput):
        T2BundleMapData(1, 2, 3, 0, case="V")


@pytest.mark.parametrize("k", [-4, 0, 7])
def test_bundle_S1(k):
    assert bundle_S1_min_circles(k) == abs(k)
    assert bundle_S1_descriptor(k).c == (k,)


@pytest.mark.parametrize("data", [
    T2BundleMapData(0, -1, 2, 1),
    T2BundleMapData(1, 1, 0, 3),
    T2BundleMapData(2, 3, 1, 1),
    T2BundleMapData(0, 1, 0, 0),
])
def test_representative_map_has_the_minimal_number_of_circles(data):
    h = bundle_T2_homotopy(data, seed=0)
    assert fixed_set_exact(h).component_count == bundle_T2_min_circles(data)
    assert bundle_T2_homotopy(data, seed=0) == h
