import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from stairpoly import brute, transfer
from stairpoly.polynomial import A, Y

CLASSES = ["S", "G", "C", "GC"]


def test_pair_table_examples():
    assert transfer.pair_table(2, (0, 2), A)[(0, 2)] == A**2
    assert transfer.pair_table(1, (1, 3), A)[(0, 2)] == A


@pytest.mark.parametrize("n", range(0, 9))
@pytest.mark.parametrize("start", [(0, 2), (1, 3), (0, 4)])
def test_pair_table_matches_oracle(n, start):
    table = transfer.pair_table(n, start, A)
    ref = brute.enumerate_pairs_from(n, *start)
    assert {k: v for k, v in table.entries.items()} == ref


def test_single_path_examples():
    assert transfer.single_path_table(2, 0, A) == {0: A**2, 2: A}
    assert transfer.single_path_table(1, 0, A) == {1: A}
    assert transfer.single_path_table(1, 1, A) == {0: A, 2: 1}


@pytest.mark.parametrize("cls", CLASSES)
@pytest.mark.parametrize("n", range(1, 10))
def test_polygon_dp_matches_oracle(cls, n):
    assert transfer.polygon_dp(n, cls, A, Y).value == brute.enumerate_polygons(n, cls)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(CLASSES), st.integers(2, 9), st.floats(0.2, 6), st.floats(0.2, 6))
def test_float_mode_agrees_with_exact(cls, n, a, y):
    exact = brute.enumerate_polygons(n, cls)
    r = transfer.polygon_dp(n, cls, a, y)
    if exact.is_zero():
        assert r.log == -math.inf
    else:
        assert r.log == pytest.approx(math.log(exact.evaluate(a, y)), rel=1e-10, abs=1e-10)


def test_float_mode_large_n_is_finite():
    r = transfer.polygon_dp(300, "S", 3.0, 2.0)
    assert math.isfinite(r.log) and r.log > 300


def test_series_examples():
    a, y = Fraction(3, 7), Fraction(5, 2)
    c = transfer.series_C(6, a, y)
    assert c[0] == a and c[1] == a * y


@pytest.mark.parametrize("a, y", [(1, 1), (Fraction(1, 3), 2), (4, Fraction(2, 5))])
def test_series_matches_path_enumeration(a, y):
    c = transfer.series_C(12, a, y)
    for n in range(13):
        assert c[n] == sum(k * a**v * y**h for (v, h), k in brute.enumerate_half_space_paths(n).items())
