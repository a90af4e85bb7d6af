from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from stairpoly.polynomial import A, Y, BivariatePolynomial

terms = st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 4)), st.integers(-5, 5), max_size=5)
polys = terms.map(BivariatePolynomial)


def test_zero_terms_dropped():
    p = BivariatePolynomial({(1, 0): 0, (0, 1): 2})
    assert p.terms == {(0, 1): 2}
    assert BivariatePolynomial().is_zero() and not BivariatePolynomial()


def test_total_and_evaluate():
    p = 3 * A * Y**2 + A**2
    assert p.total() == 4
    assert p.evaluate(2, 3) == 3 * 2 * 9 + 4
    assert p(Fraction(1, 2), 1) == Fraction(3, 2) + Fraction(1, 4)


def test_items_sorted():
    p = Y**3 + A + A * Y
    assert [k for k, _ in p.items()] == [(0, 3), (1, 0), (1, 1)]


def test_divide_by_monomial():
    assert (A**2 * Y + A * Y**2) / A == A * Y + Y**2
    with pytest.raises(ArithmeticError):
        (A + 1) / A


def test_mean_exponents_counts_objects_equally():
    mv, mh = (A * Y**2 + 3 * A**2).mean_exponents()
    assert mv == Fraction(7, 4) and mh == Fraction(1, 2)


@given(polys, polys, polys)
def test_ring_laws(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r
    assert (p - p).is_zero()


@given(polys, st.integers(-3, 3), st.integers(-3, 3))
def test_evaluation_is_a_homomorphism(p, a, y):
    q = p * (A + Y)
    assert q.evaluate(a, y) == p.evaluate(a, y) * (a + y)
