"""Explicit counting formulas for path pairs, single paths, polygons and bridges.

All functions are generic in the fugacities: pass ints or Fractions for exact
values, a BivariatePolynomial (``A``, ``Y``) for exact polynomials, or floats.
For a < 1 the a-expansions alternate in sign, so float use there is only
sensible at small n; the transfer recurrences are the better evaluator.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from math import comb

from .lattice import PolygonClass
from .polynomial import BivariatePolynomial


def binom(n: int, x) -> int:
    """Binomial coefficient that is zero unless x is a natural number <= n."""
    if isinstance(x, Fraction):
        if x.denominator != 1:
            return 0
        x = x.numerator
    if n < 0 or x < 0 or x > n:
        return 0
    return comb(n, int(x))


def _half_binom(n: int, twice: int) -> int:
    # binom(n, twice / 2)
    return 0 if twice % 2 else binom(n, twice // 2)


def _as_int(q: Fraction) -> int:
    if q.denominator != 1:
        raise ArithmeticError(f"pair-count formula produced a non-integer {q}")
    return q.numerator


# ---------------------------------------------------------------------------
# nonintersecting pairs

def s1_formula(n: int, k: int, m: int) -> int:
    """Product-of-binomials expression for pair counts from heights (0, 2).

    Inside 0 <= m <= k it is the count; outside it takes the signed values the
    a-expansion relies on.
    """
    b = _half_binom(n + 3, n + k + 6) * _half_binom(n + 3, n + m + 4)
    if not b:
        return 0
    num = (k + 3) * (m + 1) * (k - m + 2) * (k + m + 4) * b
    return _as_int(Fraction(num, 4 * (n + 1) * (n + 2) * (n + 3) ** 2))


# Lower argument of the first binomial in the hatted formula, written as
# (n + sign*k + offset)/2. The naive choice (+1, -1) does not give integers;
# calibrate_shat1_argument() recovers the right one from the transfer oracle.
SHAT1_FIRST_ARGUMENT = (-1, 1)
NAIVE_SHAT1_FIRST_ARGUMENT = (1, -1)


def shat1_formula(n: int, k: int, m: int, first_argument: tuple[int, int] = SHAT1_FIRST_ARGUMENT) -> Fraction | int:
    sign, offset = first_argument
    b = _half_binom(n + 4, n + sign * k + offset) * _half_binom(n + 4, n + m + 5)
    if not b:
        return 0
    q = Fraction((k + 3) * (m + 1) * (k - m + 2) * (k + m + 4) * b, 4 * (n + 2) * (n + 3) * (n + 4) ** 2)
    return q.numerator if q.denominator == 1 else q


def _in_range(n: int, k: int, m: int) -> bool:
    return 0 <= m <= k <= n and (k - n) % 2 == 0 and (m - n) % 2 == 0


def s1(n: int, k: int, m: int) -> int:
    """Number of nonintersecting half-space pairs from (0, 2) to (m, k + 2) in n steps."""
    return s1_formula(n, k, m) if _in_range(n, k, m) else 0


def shat1(n: int, k: int, m: int) -> int:
    """Number of nonintersecting half-space pairs from (1, 3) to (m, k + 2) in n steps."""
    if not _in_range(n + 1, k, m):
        return 0
    return _as_int(Fraction(shat1_formula(n, k, m)))


def calibrate_shat1_argument(n_max: int = 8, offsets=range(-10, 11)) -> list[tuple[int, int]]:
    """Every first-binomial argument (n + sign*k + offset)/2 that reproduces the oracle.

    The oracle is the transfer pair table from (1, 3) at a = 1 over all
    n <= n_max and all valid (k, m).
    """
    from .transfer import pair_table

    tables = {n: pair_table(n, (1, 3), 1) for n in range(n_max + 1)}
    good = []
    for sign in (1, -1):
        for c in offsets:
            ok = True
            for n, tab in tables.items():
                for k in range(n + 2):
                    for m in range(k + 1):
                        if not _in_range(n + 1, k, m):
                            continue
                        if shat1_formula(n, k, m, (sign, c)) != tab[(m, k + 2)]:
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if ok:
                good.append((sign, c))
    return good


def _expanded(f, n: int, k: int, m: int, a):
    total = 0
    c = a - 1
    for w in range(n + 1):
        inner = sum(f(n, k + 2 * p, m + 2 * w - 2 * p) for p in range(w + 1))
        if inner:
            total = total + c**w * inner
    return total


def s_general(n: int, k: int, m: int, a):
    """s_n(k, m) with surface fugacity a (start vertex on the surface counts)."""
    if not _in_range(n, k, m):
        return 0
    return a * _expanded(s1_formula, n, k, m, a)


def shat_general(n: int, k: int, m: int, a):
    """Hatted pair weight: lower path starts at height 1, so no start visit."""
    if not _in_range(n + 1, k, m):
        return 0
    return _expanded(lambda n_, k_, m_: shat1_formula(n_, k_, m_), n, k, m, a)


def _suffix_table(f, n: int, kmax: int, mmax: int, a) -> dict[tuple[int, int], object]:
    # F(k, m) = sum_{p, q >= 0} (a-1)^(p+q) f(k+2p, m+2q), filled from the top corner down
    c = a - 1
    F: dict[tuple[int, int], object] = {}

    def get(k, m):
        return F.get((k, m), 0)

    for k in range(kmax + 1, -1, -1):
        for m in range(mmax + 1, -1, -1):
            v = f(n, k, m)
            nxt_k, nxt_m, nxt_km = get(k + 2, m), get(k, m + 2), get(k + 2, m + 2)
            val = v + c * nxt_k + c * nxt_m - c * c * nxt_km
            if not _is_zero(val):
                F[(k, m)] = val
    return F


def _is_zero(v) -> bool:
    return v.is_zero() if isinstance(v, BivariatePolynomial) else v == 0


def s_table(n: int, a, *, reduced: bool = False) -> dict[tuple[int, int], object]:
    """All nonzero s_n(k, m); ``reduced`` drops the start-visit factor a."""
    F = _suffix_table(s1_formula, n, n, n + 2, a)
    return {
        (k, m): (v if reduced else a * v)
        for (k, m), v in F.items()
        if _in_range(n, k, m) and not _is_zero(v)
    }


def shat_table(n: int, a) -> dict[tuple[int, int], object]:
    F = _suffix_table(lambda n_, k_, m_: shat1_formula(n_, k_, m_), n, n + 1, n + 3, a)
    return {(k, m): v for (k, m), v in F.items() if _in_range(n + 1, k, m) and not _is_zero(v)}


def _div_a(x, a):
    if isinstance(x, BivariatePolynomial):
        return x.divide_monomial(1, 0)
    if isinstance(x, int) and isinstance(a, int):
        q, r = divmod(x, a)
        return q if r == 0 else Fraction(x, a)
    return x / a


# ---------------------------------------------------------------------------
# grafted and grafted-centred polygons

def PG(n: int, a, y):
    """Grafted partition function P^G_{2n}(a, y) from pair counts."""
    if n < 2:
        return 0
    total = 0
    if n % 2 == 0:
        sr = s_table((n - 2) // 2, a, reduced=True)
        for (k, m), v in sr.items():
            # two halves share the middle vertex; when it is a visit it is counted once
            w = a * v * v if m == 0 else a * a * v * v
            total = total + w * y ** (k + 2)
    else:
        sr = s_table((n - 3) // 2, a, reduced=True)
        sh = shat_table((n - 1) // 2, a)
        for (k, m), v in sr.items():
            u = sh.get((k, m))
            if u is None:
                continue
            w = v * u if m == 0 else a * v * u
            total = total + w * y ** (k + 2)
    return total


def grafted_parts(n: int, a, y) -> tuple[object, object]:
    """(G1, G2) for even n with P^G = G1/a + G2: the m = 0 and m >= 1 sums."""
    if n % 2 or n < 2:
        raise ValueError("grafted parts are defined for even n >= 2")
    sr = s_table((n - 2) // 2, a, reduced=True)
    g1 = g2 = 0
    for (k, m), v in sr.items():
        if m == 0:
            g1 = g1 + a * a * v * v * y ** (k + 2)
        else:
            g2 = g2 + a * a * v * v * y ** (k + 2)
    return g1, g2


def PGC(n: int, a, y):
    """Grafted-and-centred partition function; one branch per n mod 4."""
    if n < 2:
        return 0
    r = n % 4
    if r == 0:
        left = right = shat_table((n - 2) // 2, a)
    elif r == 2:
        left = right = s_table((n - 2) // 2, a)
    elif r == 1:
        left, right = shat_table((n - 3) // 2, a), s_table((n - 1) // 2, a)
    else:
        left, right = s_table((n - 3) // 2, a), shat_table((n - 1) // 2, a)
    total = 0
    for (k, m), v in left.items():
        if m != 0 or (k, 0) not in right:
            continue
        total = total + v * right[(k, 0)] * y ** (k + 2)
    if _is_zero(total):
        return total
    return _div_a(total, a)


def closed_form_partition(n: int, cls: PolygonClass | str, a, y):
    cls = PolygonClass(str(getattr(cls, "value", cls)).upper())
    if cls is PolygonClass.G:
        return PG(n, a, y)
    if cls is PolygonClass.GC:
        return PGC(n, a, y)
    raise ValueError(f"no closed form for class {cls.value}")


# ---------------------------------------------------------------------------
# single half-space paths

def t_closed(n: int, i: int, k: int, a):
    """t_n(i, k): half-space paths from i to k, weight a per surface vertex."""
    if n < 0 or i < 0 or k < 0 or (n - i + k) % 2:
        return 0
    c2 = n + i + k  # twice the lower argument of the reflected binomial
    val = _half_binom(n, n - i + k) - _half_binom(n, c2)
    top = (n - i - k) // 2 if n >= i + k else -1
    acc = 0
    for w in range(top + 1):
        d = _half_binom(n, c2 + 2 * w) - _half_binom(n, c2 + 2 * w + 2)
        if d:
            acc = acc + d * (a - 1) ** w
    return val + a * acc if top >= 0 else val


def t1(n: int, i: int, k: int) -> int:
    if n < 0 or i < 0 or k < 0 or (n - i + k) % 2:
        return 0
    return _half_binom(n, n - i + k) - _half_binom(n, n + i + k + 2)


# ---------------------------------------------------------------------------
# relaxed four-path upper bounds

def T_upper(half_length: int, a, y):
    """Four-path bound T >= P^C at polygon length 2*half_length."""
    N = half_length
    if N < 1:
        return 0
    M = N - N // 2
    L = N // 2
    total = 0
    for k in range(0, N + 1):
        left = sum_over(lambda i: t1(L, i, k) * t_closed(L, i, 0, a) if t1(L, i, k) else 0, L + 1)
        if _is_zero(left):
            continue
        right = sum_over(lambda i: t1(M, k, i) * t_closed(M, 0, i, a) if t1(M, k, i) else 0, M + 1)
        if _is_zero(right):
            continue
        total = total + left * right * y**k
    return _div_a(total, a) if not _is_zero(total) else total


def sum_over(f, upto: int):
    total = 0
    for i in range(upto + 1):
        v = f(i)
        if not _is_zero(v):
            total = total + v
    return total


def S_upper_q(half_length: int, q: int, a, y):
    """Relaxed pair weight whose lower path first meets the surface at column q."""
    N = half_length
    L = N // 2
    M = N - L
    total = 0
    for k in range(0, N + L + 1):
        if q == 0:
            left = t1(L, 0, k)
        else:
            left = sum(t1(L, i1, k) * t1(q - 1, i1 - 1, 0) for i1 in range(1, q + 1))
        if not left:
            continue
        right = sum_over(lambda i2: t1(M, k, i2) * t_closed(N - q, 0, i2, a) if t1(M, k, i2) else 0, N)
        if _is_zero(right):
            continue
        total = total + left * right * y**k
    return total


def S_upper(half_length: int, a, y):
    """Relaxed bound S >= P^S, summed over the first surface column q."""
    total = 0
    for q in range(half_length + 1):
        v = S_upper_q(half_length, q, a, y)
        if not _is_zero(v):
            total = total + v
    return total


# ---------------------------------------------------------------------------
# bridges

@lru_cache(maxsize=64)
def bridge_counts(n: int) -> dict[int, int]:
    """b_{n,h} by a strip recurrence: from height 1 after the first step, stay in [1, h]."""
    if n < 1:
        raise ValueError("bridges have length >= 1")
    if n == 1:
        return {1: 1}
    out = {}
    for h in range(2, n + 1):
        if (n - h) % 2:
            continue
        row = [0] * (h + 2)  # indices 1..h used; 0 and h+1 stay empty as walls
        row[1] = 1
        for _ in range(n - 1):
            row = [0] + [row[j - 1] + row[j + 1] for j in range(1, h + 1)] + [0]
        if row[h]:
            out[h] = row[h]
    return out


def bridge_partition(n: int, y):
    return sum(b * y**h for h, b in bridge_counts(n).items())


def log_bridge_partition(n: int, y: float) -> float:
    terms = [math.log(b) + h * math.log(y) for h, b in bridge_counts(n).items()]
    top = max(terms)
    return top + math.log(sum(math.exp(t - top) for t in terms))


def most_popular_height(n: int, y) -> tuple[int, object]:
    """Height h* maximising b_{n,h} y^h, with that weight."""
    best_h, best = None, None
    for h, b in sorted(bridge_counts(n).items()):
        w = b * y**h
        if best is None or w > best:
            best_h, best = h, w
    return best_h, best
