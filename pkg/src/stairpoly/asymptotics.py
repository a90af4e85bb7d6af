"""Numerical checks of growth rates, exponents, amplitudes and related bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import brute
from . import closed_form as cf
from . import series, transfer
from .free_energy import lambdaP


def log_number(x) -> float:
    """log of a positive int, Fraction or float without overflow."""
    if isinstance(x, Fraction):
        return log_number(x.numerator) - log_number(x.denominator)
    if isinstance(x, int):
        if x <= 0:
            raise ValueError("log of a nonpositive number")
        return math.log(x)
    return math.log(float(x))


# ---------------------------------------------------------------------------
# fits of A * mu^n * n^(-theta)

@dataclass(frozen=True)
class AsymptoticFit:
    mu: float
    theta: float
    amplitude: float
    residual: float
    parity_class: int
    n_values: tuple[int, ...] = ()
    mu_pinned: bool = False


class FitError(ValueError):
    pass


def fit_asymptotics(points, mu: float | None = None, modulus: int = 4) -> AsymptoticFit:
    """Least-squares fit of log value = n log mu - theta log n + log A.

    ``points`` is a sequence of (n, log value). With ``mu`` given, the growth
    rate is pinned and only theta and A are fitted.
    """
    pts = sorted(points)
    if len(pts) < 6:
        raise FitError(f"need at least 6 ladder points, got {len(pts)}")
    classes = {n % modulus for n, _ in pts}
    if len(classes) != 1:
        raise FitError(f"ladder mixes residues mod {modulus}: {sorted(classes)}")
    n = np.array([p[0] for p in pts], dtype=float)
    lv = np.array([p[1] for p in pts], dtype=float)
    if mu is None:
        X = np.column_stack([n, -np.log(n), np.ones_like(n)])
        rhs = lv
    else:
        X = np.column_stack([-np.log(n), np.ones_like(n)])
        rhs = lv - n * math.log(mu)
    if np.linalg.cond(X) > 1e12:
        raise FitError("ill-conditioned ladder")
    coef, *_ = np.linalg.lstsq(X, rhs, rcond=None)
    resid = float(np.sqrt(np.mean((X @ coef - rhs) ** 2)))
    if mu is None:
        log_mu, theta, log_a = coef
        mu_val = math.exp(log_mu)
    else:
        theta, log_a = coef
        mu_val = mu
    return AsymptoticFit(mu_val, float(theta), math.exp(log_a), resid, classes.pop(), tuple(int(x) for x in n), mu is not None)


def grafted_log_partition(n: int, a, y) -> float:
    """log P^G_{2n}(a, y); exact sums for exact fugacities, scaled floats otherwise."""
    if isinstance(a, (int, Fraction)) and isinstance(y, (int, Fraction)):
        return log_number(cf.PG(n, a, y))
    return transfer.polygon_dp(n, "G", float(a), float(y)).log


def grafted_growth(a: float, y: float) -> float:
    """Growth rate of P^G_{2n} per unit of n, exp(2 psi^G)."""
    if a <= 2:
        ga = 2.0
    else:
        ga = a / math.sqrt(a - 1)
    gy = 2.0 if y <= 1 else (y + 1) / math.sqrt(y)
    return ga * gy


# exponents of P^G_{2n} by regime; rows y > 1, y = 1, y < 1; columns a < 2, a = 2, a > 2
GRAFTED_EXPONENTS = {
    (">", "<"): 2.0, (">", "="): 1.0, (">", ">"): 0.5,
    ("=", "<"): 5.0, ("=", "="): 3.0, ("=", ">"): 1.5,
    ("<", "<"): 10.0, ("<", "="): 6.0, ("<", ">"): 3.0,
}


def _cmp(x: float, ref: float) -> str:
    return "=" if x == ref else (">" if x > ref else "<")


def grafted_exponent(a: float, y: float) -> float:
    return GRAFTED_EXPONENTS[(_cmp(y, 1), _cmp(a, 2))]


def grafted_fit(a, y, ladder=(64, 96, 128, 160, 192, 224, 256), pin: bool = True) -> AsymptoticFit:
    pts = [(n, grafted_log_partition(n, a, y)) for n in ladder]
    return fit_asymptotics(pts, mu=grafted_growth(float(a), float(y)) if pin else None)


# ---------------------------------------------------------------------------
# amplitude ratio reports

@dataclass(frozen=True)
class AmplitudeRegime:
    name: str
    a: object
    y: object
    part: str  # "full", "G1" or "G2"
    parity: int | None  # required n mod 4, or None for any even n

    def amplitude(self, n: int) -> float:
        a, y = float(self.a), float(self.y)
        if self.name == "multicritical":
            return 4 / math.pi
        if self.name == "multicritical-G1":
            return 24 * math.sqrt(2) / math.pi**1.5
        if self.name == "weak-G2":
            return 48 * a * a / (math.pi * (a - 2) ** 4)
        if self.name == "weak-G1":
            return 1920 * math.sqrt(2) * a**4 / (math.pi**1.5 * (a - 2) ** 6)
        core = (y - 1) ** 2 * ((a - 1) * y - 1) ** 2 / (math.sqrt(2 * math.pi) * y**1.5 * (y + 1))
        if self.name == "strong-G1":
            return (a - 2) ** 2 * core / (a - 1) ** 3
        if self.name == "strong-G2":
            return (a - 2) * core / (a * (a - 1) ** (3 if n % 4 == 2 else 2))
        raise ValueError(self.name)

    def log_asymptote(self, n: int) -> float:
        a, y = float(self.a), float(self.y)
        if self.name.startswith("strong"):
            return math.log(self.amplitude(n)) - 0.5 * math.log(n) + n * math.log(grafted_growth(a, y))
        theta = {"multicritical": 3.0, "multicritical-G1": 3.5, "weak-G2": 5.0, "weak-G1": 6.5}[self.name]
        return math.log(self.amplitude(n)) + n * math.log(4) - theta * math.log(n)


REGIMES = {
    "multicritical": AmplitudeRegime("multicritical", 2, 1, "full", None),
    "multicritical-G1": AmplitudeRegime("multicritical-G1", 2, 1, "G1", 2),
    "weak-G2": AmplitudeRegime("weak-G2", 1, 1, "G2", None),
    "weak-G1": AmplitudeRegime("weak-G1", 1, 1, "G1", 2),
    "strong-G1": AmplitudeRegime("strong-G1", 3, 2, "G1", 2),
    "strong-G2": AmplitudeRegime("strong-G2", 3, 2, "G2", None),
}


@dataclass
class RatioReport:
    regime: str
    a: float
    y: float
    rows: list[tuple[int, float]] = field(default_factory=list)

    @property
    def final_ratio(self) -> float:
        return self.rows[-1][1]

    @property
    def gaps(self) -> list[float]:
        return [abs(r - 1) for _, r in self.rows]

    def improving(self) -> bool:
        g = self.gaps
        return all(x > y for x, y in zip(g, g[1:]))


def _part_value(regime: AmplitudeRegime, n: int):
    a, y = regime.a, regime.y
    if regime.part == "full":
        return cf.PG(n, a, y)
    g1, g2 = cf.grafted_parts(n, a, y)
    return g1 if regime.part == "G1" else g2


def verify_amplitude(regime: str | AmplitudeRegime, ns, a=None, y=None) -> RatioReport:
    """Tabulate exact partition value divided by its predicted asymptote."""
    reg = REGIMES[regime] if isinstance(regime, str) else regime
    if a is not None or y is not None:
        reg = AmplitudeRegime(reg.name, a if a is not None else reg.a, y if y is not None else reg.y, reg.part, reg.parity)
    rep = RatioReport(reg.name, float(reg.a), float(reg.y))
    for n in ns:
        if n % 2 or (reg.parity is not None and n % 4 != reg.parity):
            raise ValueError(f"n={n} is outside the parity class of regime {reg.name}")
        val = _part_value(reg, n)
        rep.rows.append((n, math.exp(log_number(val) - reg.log_asymptote(n))))
    return rep


# ---------------------------------------------------------------------------
# dominant contributions of the relaxed sums

@dataclass(frozen=True)
class ScanPoint:
    n: int
    argmax: dict


@dataclass
class ScanReport:
    kind: str
    a: float
    y: float
    points: list[ScanPoint]
    scaling: dict[str, str]
    ratios: dict[str, float]
    flat: bool = False


def _log_or_none(x: int):
    return math.log(x) if x > 0 else None


FLAT_TOL = 1e-6


def _t_profile(n: int, a: float, y: float) -> dict[int, tuple[float, int, int]]:
    """For each start height i: (best log summand, k, w) of t1(n,i,k) y^(k/2) d_w(i) (a-1)^w.

    d_w(i) (a-1)^w are the expansion terms of t_n(i, 0), so this is the T
    summand with the lower path's w index exposed.
    """
    la1 = math.log(a - 1) if a > 1 else None
    ly = math.log(y)
    out = {}
    for i in range(0, n + 1):
        if (n + i) % 2:  # lower path must reach 0
            continue
        up = (-math.inf, None)
        for k in range(0, 2 * n + 1):
            lt = _log_or_none(cf.t1(n, i, k))
            if lt is not None and lt + 0.5 * k * ly > up[0]:
                up = (lt + 0.5 * k * ly, k)
        lo = (-math.inf, None)
        c2 = n + i
        for w in range((n - i) // 2 + 1):
            if la1 is None and w > 0:
                break
            d = cf._half_binom(n, c2 + 2 * w) - cf._half_binom(n, c2 + 2 * w + 2)
            if d > 0:
                v = math.log(d) + (w * la1 if w else 0.0)
                if v > lo[0]:
                    lo = (v, w)
        if up[1] is not None and lo[1] is not None:
            out[i] = (up[0] + lo[0], up[1], lo[1])
    return out


def _s_profile(n: int, a: float, y: float) -> np.ndarray:
    """log S_{4n, q}(a, y) for q = 0..2n (float evaluation)."""
    N = 2 * n
    L, M = N // 2, N - N // 2
    ly = math.log(y)
    out = np.full(N + 1, -math.inf)
    for q in range(N + 1):
        row = transfer.single_path_table(N - q, 0, float(a))
        terms = []
        for k in range(0, N + L + 1):
            if q == 0:
                left = cf.t1(L, 0, k)
            else:
                left = sum(cf.t1(L, i1, k) * cf.t1(q - 1, i1 - 1, 0) for i1 in range(1, q + 1))
            if not left:
                continue
            right = 0.0
            for i2, w in row.items():
                c = cf.t1(M, k, i2)
                if c:
                    right += float(c) * w
            if right > 0:
                terms.append(math.log(left) + math.log(right) + k * ly)
        if terms:
            top = max(terms)
            out[q] = top + math.log(sum(math.exp(t - top) for t in terms))
    return out


def _scaling_class(ns, xs) -> str:
    xs = np.asarray(xs, dtype=float)
    ns = np.asarray(ns, dtype=float)
    if np.ptp(xs) <= 2 and xs.max() <= 4:
        return "O(1)"
    slope = np.polyfit(np.log(ns), np.log(xs + 1), 1)[0]
    if slope < 0.25:
        return "O(1)"
    if slope < 0.75:
        return "O(sqrt n)"
    return "O(n)"


def dominant_contribution_scan(kind: str, a: float, y: float, ns=(25, 50, 75, 100)) -> ScanReport:
    """Largest summands of T_{4n} (indices k, i, w) or S_{4n} (index q) along a ladder of n.

    A T profile whose maximum is attained (to within FLAT_TOL in log) at more
    than two start heights, or an S profile at the largest n with over half of
    all q within one nat of its maximum, is reported as flat.
    """
    kind = kind.upper()
    pts = []
    flat = False
    if kind == "T":
        for n in ns:
            prof = _t_profile(n, a, y)
            i = max(prof, key=lambda j: prof[j][0])
            top, k, w = prof[i]
            ties = sum(1 for v in prof.values() if v[0] >= top - FLAT_TOL)
            flat = flat or ties > 2
            pts.append(ScanPoint(n, {"k": k, "i": i, "w": w}))
    elif kind == "S":
        for n in ns:
            prof = _s_profile(n, a, y)
            q = int(np.argmax(prof))
            flat = int(np.sum(prof >= prof[q] - 1.0)) > len(prof) / 2
            pts.append(ScanPoint(n, {"q": q}))
    else:
        raise ValueError("kind must be T or S")
    keys = pts[0].argmax.keys()
    scaling = {key: _scaling_class(ns, [p.argmax[key] for p in pts]) for key in keys}
    ratios = {key: pts[-1].argmax[key] / pts[-1].n for key in keys}
    return ScanReport(kind, a, y, pts, scaling, ratios, flat)


# ---------------------------------------------------------------------------
# bridges and the series inequality

@dataclass
class BridgeGrowthReport:
    y: float
    target: float
    rows: list[tuple[int, float]]

    @property
    def gaps(self) -> list[float]:
        return [abs(v - self.target) for _, v in self.rows]

    def shrinking(self) -> bool:
        g = self.gaps
        return all(x > y for x, y in zip(g, g[1:]))


def bridge_growth_check(y: float, ns=(100, 200, 300, 400)) -> BridgeGrowthReport:
    if y <= 1:
        raise ValueError("bridge growth check needs y > 1")
    rows = [(n, cf.log_bridge_partition(n, y) / n) for n in ns]
    return BridgeGrowthReport(y, lambdaP(y), rows)


@dataclass
class SeriesCheckReport:
    y: object
    order: int
    lhs: list
    rhs: list

    @property
    def failures(self) -> list[int]:
        return [k for k, (l, r) in enumerate(zip(self.lhs, self.rhs)) if l > r]

    @property
    def ok(self) -> bool:
        return not self.failures


def bridge_series(order: int, y) -> list:
    """B(t; y) = sum_n B_n(y) t^n truncated at ``order``."""
    return [0] + [cf.bridge_partition(n, y) for n in range(1, order + 1)]


def appendix_series_check(y, order: int = 20) -> SeriesCheckReport:
    """[t^k] t y C(t; 1, y) <= [t^k] exp(B(t; y) + B(t; 1/y)) for k <= order."""
    if order > 40:
        raise ValueError("order is limited to 40")
    y = Fraction(y)
    C = transfer.series_C(order - 1, 1, y) if order >= 1 else []
    lhs = [Fraction(0)] + [y * c for c in C]
    lhs = series.truncate(lhs, order)
    B = series.add(bridge_series(order, y), bridge_series(order, 1 / y), order)
    rhs = series.exp(B, order)
    return SeriesCheckReport(y, order, lhs, rhs)


@dataclass(frozen=True)
class FourBridgeReport:
    a: object
    y: object
    n: int
    h_star: int
    lhs: object
    rhs_4n: object
    rhs_4n2: object

    @property
    def ok(self) -> bool:
        return self.lhs <= self.rhs_4n and self.lhs <= self.rhs_4n2


def four_bridge_lower_bound_check(a, y, n: int) -> FourBridgeReport:
    """a (b_{n,h*} y^h*)^4 against the centred partition functions at lengths 4n and 4n+2, at y^2."""
    if not y > 1:
        raise ValueError("four-bridge bound needs y > 1")
    h, w = cf.most_popular_height(n, y)
    lhs = a * w**4
    if 2 * n + 1 <= brute.POLYGON_N_MAX:
        r4 = brute.enumerate_polygons(2 * n, "C").evaluate(a, y * y)
        r42 = brute.enumerate_polygons(2 * n + 1, "C").evaluate(a, y * y)
    else:
        r4 = transfer.polygon_partition(2 * n, "C", a, y * y)
        r42 = transfer.polygon_partition(2 * n + 1, "C", a, y * y)
    return FourBridgeReport(a, y, n, h, lhs, r4, r42)
