"""Truncated power series with exact coefficients (lists indexed by degree)."""

from __future__ import annotations

from fractions import Fraction
from math import comb


def truncate(s, order: int) -> list:
    s = list(s[: order + 1])
    return s + [0] * (order + 1 - len(s))


def add(s, t, order: int) -> list:
    s, t = truncate(s, order), truncate(t, order)
    return [x + y for x, y in zip(s, t)]


def scale(s, c) -> list:
    return [c * x for x in s]


def mul(s, t, order: int) -> list:
    s, t = truncate(s, order), truncate(t, order)
    out = [0] * (order + 1)
    for i, x in enumerate(s):
        if x:
            for j in range(order + 1 - i):
                out[i + j] += x * t[j]
    return out


def inverse(s, order: int) -> list:
    s = truncate(s, order)
    if not s[0]:
        raise ZeroDivisionError("series with zero constant term has no inverse")
    c0 = Fraction(s[0]) if isinstance(s[0], int) else s[0]
    out = [0] * (order + 1)
    out[0] = 1 / c0
    for k in range(1, order + 1):
        out[k] = -sum(s[j] * out[k - j] for j in range(1, k + 1)) / c0
    return out


def divide(s, t, order: int) -> list:
    return mul(s, inverse(t, order), order)


def exp(s, order: int) -> list:
    """exp of a series with zero constant term, via k e_k = sum_j j f_j e_{k-j}."""
    s = truncate(s, order)
    if s[0]:
        raise ValueError("exp needs a zero constant term for an exact result")
    out = [Fraction(0)] * (order + 1)
    out[0] = Fraction(1)
    for k in range(1, order + 1):
        out[k] = sum(j * s[j] * out[k - j] for j in range(1, k + 1)) / k
    return out


def sqrt_one_minus_4t2(order: int) -> list:
    """Coefficients of sqrt(1 - 4 t^2) = 1 - 2 sum_{j>=1} Cat(j-1) t^{2j}."""
    out = [0] * (order + 1)
    out[0] = 1
    for j in range(1, order // 2 + 1):
        out[2 * j] = -2 * comb(2 * j - 2, j - 1) // j
    return out
