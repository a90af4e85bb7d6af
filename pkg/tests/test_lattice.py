import pytest
from hypothesis import given, strategies as st

from figures import (FIG_CENTRED, FIG_GRAFTED, FIG_HALF_SPACE, FIG_PAIR_LOWER, FIG_PAIR_UPPER, path_heights,
                     polygon)
from stairpoly.brute import iter_polygons, lower_path_weight
from stairpoly.lattice import (DOWN, UP, BinomialPath, LatticeError, PolygonClass, PolygonStats, StaircasePolygon,
                               classify, polygon_stats)
from stairpoly.polynomial import A


def unit_diamond():
    return StaircasePolygon.from_heights([1, 2, 1], [1, 0, 1])


def test_path_vertices_and_parity():
    p = BinomialPath((0, 0), (UP, UP, DOWN))
    assert p.heights == (0, 1, 2, 1)
    assert p.vertices[-1] == (3, 1)
    with pytest.raises(LatticeError):
        BinomialPath((0, 1), (UP,))


def test_half_space_flag_is_enforced():
    with pytest.raises(LatticeError):
        BinomialPath((0, 0), (DOWN,), half_space=True)


def test_unit_diamond():
    p = unit_diamond()
    assert polygon_stats(p) == PolygonStats(1, 2)
    assert classify(p) == set(PolygonClass)


def test_polygon_rejects_touching_paths():
    with pytest.raises(LatticeError):
        StaircasePolygon.from_heights([1, 2, 1, 2, 1], [1, 0, 1, 0, 1])


def test_half_space_polygon_figure():
    p = polygon(FIG_HALF_SPACE)
    assert p.length == 32
    assert polygon_stats(p) == PolygonStats(3, 7)
    assert classify(p) == {PolygonClass.S}


def test_grafted_figure():
    p = polygon(FIG_GRAFTED)
    assert polygon_stats(p) == PolygonStats(5, 7)
    assert PolygonClass.G in classify(p)


def test_centred_figure():
    p = polygon(FIG_CENTRED)
    assert polygon_stats(p) == PolygonStats(2, 6)
    assert PolygonClass.C in classify(p)


def test_pair_figure_weight():
    lower, upper = path_heights(FIG_PAIR_LOWER), path_heights(FIG_PAIR_UPPER)
    assert (lower[0], upper[0], lower[-1], upper[-1]) == (0, 4, 2, 8)
    assert len(lower) == len(upper) == 17
    assert lower_path_weight(lower) == A**5


@pytest.mark.parametrize("n", range(2, 9))
def test_class_inclusions(n):
    for p in iter_polygons(n):
        c = classify(p)
        assert PolygonClass.S in c
        if PolygonClass.GC in c:
            assert PolygonClass.C in c


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_centred_predicate_survives_reflection_for_even_n(n):
    for p in iter_polygons(n):
        assert (PolygonClass.C in classify(p)) == (PolygonClass.C in classify(p.reflected()))


@given(st.integers(2, 8), st.data())
def test_stats_are_in_range(n, data):
    polys = list(iter_polygons(n))
    p = data.draw(st.sampled_from(polys))
    s = polygon_stats(p)
    assert 1 <= s.v <= n + 1
    assert 1 <= s.h <= n
