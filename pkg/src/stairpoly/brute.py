"""Exhaustive enumerators used as ground truth for every faster evaluator.

Everything here walks the step-choice tree directly (depth first, pruned on the
half-space and nonintersection constraints). Nothing is shared with the
transfer recurrences or the closed forms beyond the lattice definitions.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from typing import Iterator

from .lattice import PolygonClass, StaircasePolygon, classify, polygon_stats, to_class
from .polynomial import BivariatePolynomial

POLYGON_N_MAX = 12
PATH_N_MAX = 24
PAIR_N_MAX = 12


class OracleLimitError(RuntimeError):
    """Requested size is beyond exhaustive reach."""


def iter_polygons(n: int) -> Iterator[StaircasePolygon]:
    """All half-space staircase polygons of half-length ``n`` with at least one visit.

    Shapes are generated relative to their leftmost vertex and then translated
    vertically so that the lowest lower-path vertex sits on the surface.
    """
    if n < 2:
        return
    lower = [0] * (n + 1)
    upper = [0] * (n + 1)
    lower[1], upper[1] = -1, 1

    def rec(i: int) -> Iterator[StaircasePolygon]:
        if i == n:
            if lower[n] == upper[n]:
                shift = -min(lower)
                yield StaircasePolygon.from_heights(
                    [u + shift for u in upper], [l + shift for l in lower]
                )
            return
        lo, up = lower[i], upper[i]
        for dl in (-1, 1):
            for du in (-1, 1):
                nl, nu = lo + dl, up + du
                if i + 1 < n and nu <= nl:
                    continue
                if nu - nl > 2 * (n - i - 1):
                    continue
                lower[i + 1], upper[i + 1] = nl, nu
                yield from rec(i + 1)

    yield from rec(1)


def enumerate_polygons(n: int, cls: PolygonClass | str) -> BivariatePolynomial:
    """Exact partition polynomial sum a^v y^h over class members of length 2n."""
    cls = to_class(cls)
    if n > POLYGON_N_MAX:
        raise OracleLimitError(f"half-length {n} exceeds exhaustive cap {POLYGON_N_MAX}")
    terms: Counter = Counter()
    for p in iter_polygons(n):
        if cls in classify(p):
            st = polygon_stats(p)
            terms[(st.v, st.h)] += 1
    return BivariatePolynomial(terms)


def enumerate_half_space_paths(n: int) -> dict[tuple[int, int], int]:
    """c_n(v, h): n-step half-space paths from (0,0) by surface visits and end height."""
    if n > PATH_N_MAX:
        raise OracleLimitError(f"path length {n} exceeds exhaustive cap {PATH_N_MAX}")
    out: Counter = Counter()
    stack = [(0, 0, 1)]  # (steps taken, height, visits so far)
    while stack:
        i, h, v = stack.pop()
        if i == n:
            out[(v, h)] += 1
            continue
        for nh in (h - 1, h + 1):
            if nh >= 0:
                stack.append((i + 1, nh, v + (nh == 0)))
    return dict(out)


def enumerate_pairs_from(n: int, start_lower: int, start_upper: int) -> dict[tuple[int, int], BivariatePolynomial]:
    """Weights of strictly nonintersecting half-space path pairs, keyed by (end_lower, end_upper).

    The lower path picks up one factor of ``a`` per surface vertex, its first
    vertex included.
    """
    if n > PAIR_N_MAX:
        raise OracleLimitError(f"pair length {n} exceeds exhaustive cap {PAIR_N_MAX}")
    if start_lower < 0 or start_upper <= start_lower or (start_upper - start_lower) % 2:
        raise ValueError("need 0 <= start_lower < start_upper with equal parity")
    counts: Counter = Counter()
    stack = [(0, start_lower, start_upper, int(start_lower == 0))]
    while stack:
        i, lo, up, v = stack.pop()
        if i == n:
            counts[(lo, up, v)] += 1
            continue
        for nl in (lo - 1, lo + 1):
            if nl < 0:
                continue
            for nu in (up - 1, up + 1):
                if nu > nl:
                    stack.append((i + 1, nl, nu, v + (nl == 0)))
    out: dict[tuple[int, int], Counter] = {}
    for (lo, up, v), c in counts.items():
        out.setdefault((lo, up), Counter())[(v, 0)] += c
    return {k: BivariatePolynomial(v) for k, v in sorted(out.items())}


def enumerate_pairs(n: int, start_lower: int, start_upper: int, end_lower: int, end_upper: int) -> BivariatePolynomial:
    return enumerate_pairs_from(n, start_lower, start_upper).get((end_lower, end_upper), BivariatePolynomial())


def lower_path_weight(lower_heights) -> BivariatePolynomial:
    """Surface weight a^v of a single lower path."""
    return BivariatePolynomial({(sum(1 for h in lower_heights if h == 0), 0): 1})


def enumerate_bridges(n: int) -> dict[int, int]:
    """b_{n,h}: paths from height 0 whose interior lies in [1, h] and which end at h."""
    if n < 1:
        raise ValueError("bridges have length >= 1")
    return dict(sorted(_bridge_completions(n, 0, 0)))


@lru_cache(maxsize=None)
def _bridge_completions(rem: int, height: int, top: int) -> tuple[tuple[int, int], ...]:
    # counts of completions by final height; ``top`` is the interior maximum so far
    out: Counter = Counter()
    for nh in (height - 1, height + 1):
        if rem == 1:
            if nh >= max(top, 1):
                out[nh] += 1
        elif nh >= 1:
            for h, c in _bridge_completions(rem - 1, nh, max(top, nh)):
                out[h] += c
    return tuple(out.items())
