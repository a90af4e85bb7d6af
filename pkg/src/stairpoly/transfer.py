"""Transfer recurrences for path pairs, single paths and whole polygons.

States are indexed by the heights of the lower and upper path at the current
column. Weights can be any exact number type (int, Fraction,
BivariatePolynomial) or a float. Float runs keep a mantissa table in [0, 1]
together with a running log scale, so 4^n growth never overflows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from . import series
from .lattice import GC_ENDPOINTS, PolygonClass, to_class
from .polynomial import BivariatePolynomial


class PairState(NamedTuple):
    lower: int
    upper: int


def is_numeric(w) -> bool:
    return isinstance(w, (float, np.floating))


@dataclass
class WeightTable:
    n: int
    start: PairState
    array: np.ndarray
    log_scale: float = 0.0
    entries: dict = field(init=False, repr=False)

    def __post_init__(self):
        lo, up = np.nonzero(self.array != 0)
        self.entries = {PairState(int(l), int(u)): self.array[l, u] for l, u in zip(lo, up)}

    def __getitem__(self, key) -> object:
        l, u = key
        if 0 <= l < self.array.shape[0] and 0 <= u < self.array.shape[1]:
            return self.array[l, u]
        return 0

    def log_value(self, key) -> float:
        w = self[key]
        return math.log(w) + self.log_scale if w else -math.inf

    def total(self):
        return sum(self.entries.values())


def _shift_sum(arr: np.ndarray) -> np.ndarray:
    # one step of both paths: each coordinate moves by +-1
    out = np.zeros_like(arr)
    out[1:, 1:] += arr[:-1, :-1]
    out[1:, :-1] += arr[:-1, 1:]
    out[:-1, 1:] += arr[1:, :-1]
    out[:-1, :-1] += arr[1:, 1:]
    return out


def _empty(size: int, numeric: bool) -> np.ndarray:
    return np.zeros((size, size), dtype=float if numeric else object)


def _renormalise(arrays: list[np.ndarray]) -> float:
    m = max(float(np.max(x)) for x in arrays)
    if m > 0:
        for x in arrays:
            x /= m
        return math.log(m)
    return 0.0


def pair_table(n: int, start: PairState | tuple[int, int], a, *, weight_start: bool = True) -> WeightTable:
    """Weights of nonintersecting half-space pairs after ``n`` steps from ``start``.

    The lower path collects a factor ``a`` for each surface vertex; the first
    vertex counts unless ``weight_start`` is False. Entry (m, k + 2) from start
    (0, 2) is s_n(k, m); from start (1, 3) it is the hatted variant.
    """
    start = PairState(*start)
    if start.lower < 0 or start.upper <= start.lower or (start.upper - start.lower) % 2:
        raise ValueError(f"invalid pair start {start}")
    numeric = is_numeric(a)
    size = start.upper + n + 1
    keep = np.triu(np.ones((size, size), dtype=bool), k=1)
    arr = _empty(size, numeric)
    arr[start.lower, start.upper] = a if (start.lower == 0 and weight_start) else 1
    if numeric:
        arr = arr.astype(float)
    log_scale = 0.0
    for _ in range(n):
        arr = _shift_sum(arr)
        arr[~keep] = 0
        arr[0, :] = arr[0, :] * a
        if numeric:
            log_scale += _renormalise([arr])
    return WeightTable(n, start, arr, log_scale)


def single_path_table(n: int, i: int, a) -> dict[int, object]:
    """t_n(i, k) for every end height k: half-space paths weighted a per surface vertex."""
    if n < 0 or i < 0:
        raise ValueError("need n, i >= 0")
    row: list = [0] * (i + n + 2)
    row[i] = a if i == 0 else 1
    for _ in range(n):
        new = [0] * len(row)
        for h, w in enumerate(row):
            if not (isinstance(w, int) and w == 0):
                if h + 1 < len(row):
                    new[h + 1] = new[h + 1] + w
                if h >= 1:
                    new[h - 1] = new[h - 1] + w
        new[0] = new[0] * a
        row = new
    return {k: w for k, w in enumerate(row) if (k - i - n) % 2 == 0 and k <= i + n and _nonzero(w)}


def _nonzero(w) -> bool:
    return bool(w) if not isinstance(w, BivariatePolynomial) else not w.is_zero()


@dataclass(frozen=True)
class PolygonDPResult:
    value: object
    log_scale: float = 0.0

    @property
    def log(self) -> float:
        if isinstance(self.value, BivariatePolynomial):
            raise TypeError("log of a polynomial is undefined")
        if self.value <= 0:
            return -math.inf
        if isinstance(self.value, int):
            return _log_int(self.value) + self.log_scale
        if isinstance(self.value, Fraction):
            return _log_int(self.value.numerator) - _log_int(self.value.denominator) + self.log_scale
        return math.log(self.value) + self.log_scale


def _log_int(x: int) -> float:
    return math.log(x)


def polygon_dp(n: int, cls: PolygonClass | str, a, y, starts=None) -> PolygonDPResult:
    """Partition function of class ``cls`` at half-length ``n`` by column transfer.

    The leftmost vertex is never on the surface (the lower path has to step
    down from it), so the first pair state is (i-1, i+1) for start height i.
    A visited flag separates configurations that have not yet touched y = 0.
    ``starts`` restricts the leftmost vertex heights of class S.
    """
    cls = to_class(cls)
    if n < 2:
        return PolygonDPResult(0)
    numeric = is_numeric(a) or is_numeric(y)
    if numeric:
        a, y = float(a), float(y)
    mid = n // 2
    size = n + 2
    keep = np.triu(np.ones((size, size), dtype=bool), k=1)

    if cls is PolygonClass.G:
        starts, ends = [1], [1 if n % 2 == 0 else 2]
    elif cls is PolygonClass.GC:
        left, right = GC_ENDPOINTS[n % 4]
        starts, ends = [left], [right]
    else:
        starts, ends = (list(starts) if starts is not None else list(range(1, n))), None
    centred = cls in (PolygonClass.C, PolygonClass.GC)

    fresh = _empty(size, numeric)   # no surface vertex yet
    seen = _empty(size, numeric)    # at least one surface vertex
    for i in starts:
        if i - 1 == 0:
            seen[0, 2] = seen[0, 2] + a
        elif i + 1 < size:
            fresh[i - 1, i + 1] = fresh[i - 1, i + 1] + 1
    log_scale = 0.0

    def at_middle(fresh, seen, log_scale):
        if centred:
            fresh[:, :] = 0
            seen[1:, :] = 0
        if numeric:
            lw = np.arange(size) * math.log(y)
            top = float(lw.max())
            w = np.exp(lw - top)
            fresh *= w[None, :]
            seen *= w[None, :]
            log_scale += top
        else:
            w = np.array([y**u for u in range(size)], dtype=object)
            fresh = fresh * w[None, :]
            seen = seen * w[None, :]
        return fresh, seen, log_scale

    if mid == 1:
        fresh, seen, log_scale = at_middle(fresh, seen, log_scale)
    for col in range(2, n):
        fresh, seen = _shift_sum(fresh), _shift_sum(seen)
        fresh[~keep] = 0
        seen[~keep] = 0
        seen[0, :] = (seen[0, :] + fresh[0, :]) * a
        fresh[0, :] = 0
        if col == mid:
            fresh, seen, log_scale = at_middle(fresh, seen, log_scale)
        if numeric:
            log_scale += _renormalise([fresh, seen])

    total = 0
    for j in range(1, size - 1):
        if ends is None or j in ends:
            total = total + seen[j - 1, j + 1]
    if numeric:
        total = float(total)
    return PolygonDPResult(total, log_scale)


def polygon_partition(n: int, cls: PolygonClass | str, a, y):
    """Exact partition function (or a float that may overflow for huge n)."""
    r = polygon_dp(n, cls, a, y)
    if r.log_scale:
        return r.value * math.exp(r.log_scale)
    return r.value


def log_polygon_partition(n: int, cls: PolygonClass | str, a, y) -> float:
    return polygon_dp(n, cls, a, y).log


def pair_table_log(n: int, start, a: float, **kw) -> tuple[np.ndarray, float]:
    """Float pair table as (mantissas, log scale); convenience for sweeps."""
    t = pair_table(n, start, float(a), **kw)
    return t.array, t.log_scale


def series_C(order: int, a, y) -> list:
    """Taylor coefficients C_0..C_order of the half-space path generating function.

    Built from the closed form 2a(1 - 2t^2 + R) / ((1 - 2t^2 a + R)(1 - 2ty + R))
    with R = sqrt(1 - 4t^2) expanded as its own series.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    N = order
    R = series.sqrt_one_minus_4t2(N)
    num = series.scale(series.add([1, 0, -2], R, N), 2 * a)
    d1 = series.add([1, 0, -2 * a], R, N)
    d2 = series.add([1, -2 * y], R, N)
    den = series.mul(d1, d2, N)
    if not den[0]:
        raise ZeroDivisionError("denominator vanishes at t = 0")
    return series.divide(num, den, N)
