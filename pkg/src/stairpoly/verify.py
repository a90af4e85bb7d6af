"""The acceptance battery: twelve numbered checks grouped into suites."""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import asymptotics as asy
from . import brute
from . import closed_form as cf
from . import free_energy as fe
from . import transfer
from .lattice import PolygonClass
from .polynomial import A, Y, BivariatePolynomial

SEED = 20240611


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str = ""
    failures: list[str] = field(default_factory=list)
    data: dict = field(default_factory=dict)
    elapsed: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number:2d} {self.name}: {self.detail}"

    def to_dict(self) -> dict:
        return {
            "criterion": self.number,
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
            "failures": list(self.failures),
            "data": self.data,
            "elapsed_s": round(self.elapsed, 3),
        }


def _finish(number, name, failures, detail, data=None, limit=20) -> CheckResult:
    return CheckResult(number, name, not failures, detail, failures[:limit], data or {})


# ---------------------------------------------------------------------------

def check_oracle_equality(n_max: int = 10) -> CheckResult:
    """Transfer and closed forms equal exhaustive enumeration as polynomials."""
    failures = []
    compared = 0
    for cls in PolygonClass:
        for n in range(1, n_max + 1):
            ref = brute.enumerate_polygons(n, cls)
            got = transfer.polygon_dp(n, cls, A, Y).value
            compared += 1
            if got != ref:
                failures.append(f"transfer {cls.value} n={n}")
            if cls in (PolygonClass.G, PolygonClass.GC):
                cfv = cf.closed_form_partition(n, cls, A, Y)
                compared += 1
                if cfv != ref:
                    failures.append(f"closed form {cls.value} n={n}")
    return _finish(1, "oracle equality", failures, f"{compared} polynomial comparisons, 2n <= {2 * n_max}")


def check_pair_counts(n_max: int = 10) -> CheckResult:
    failures = []
    for n in range(n_max + 1):
        plain = brute.enumerate_pairs_from(n, 0, 2)
        hat = brute.enumerate_pairs_from(n, 1, 3)
        for k in range(n + 3):
            for m in range(n + 3):
                ref = plain.get((m, k + 2), BivariatePolynomial()).evaluate(1)
                if cf.s1(n, k, m) != ref:
                    failures.append(f"s1({n},{k},{m}) = {cf.s1(n, k, m)} != {ref}")
                ref = hat.get((m, k + 2), BivariatePolynomial()).evaluate(1)
                if cf.shat1(n, k, m) != ref:
                    failures.append(f"shat1({n},{k},{m}) = {cf.shat1(n, k, m)} != {ref}")
    fits = cf.calibrate_shat1_argument()
    if cf.SHAT1_FIRST_ARGUMENT not in fits:
        failures.append(f"calibration {fits} excludes the configured argument")
    return _finish(2, "pair-count formulas", failures,
                   f"n <= {n_max}, calibrated shat1 arguments {fits}", {"calibration": fits})


def check_single_path(n_max: int = 14) -> CheckResult:
    failures = []
    count = 0
    for n in range(n_max + 1):
        for i in range(n_max + 1):
            table = transfer.single_path_table(n, i, A)
            for k in range(i + n + 1):
                got = cf.t_closed(n, i, k, A)
                ref = table.get(k, 0)
                count += 1
                if BivariatePolynomial() + got != BivariatePolynomial() + ref:
                    failures.append(f"t({n},{i},{k})")
    return _finish(3, "single-path closed form", failures, f"{count} (n, i, k) triples, n <= {n_max}")


def random_rationals(count: int, seed: int = SEED) -> list[tuple[Fraction, Fraction]]:
    rng = random.Random(seed)
    return [(Fraction(rng.randint(1, 40), rng.randint(1, 12)), Fraction(rng.randint(1, 40), rng.randint(1, 12)))
            for _ in range(count)]


def check_series(order: int = 12) -> CheckResult:
    failures = []
    points = random_rationals(5)
    for a, y in points:
        coeffs = transfer.series_C(order, a, y)
        for n in range(order + 1):
            ref = sum(c * a**v * y**h for (v, h), c in brute.enumerate_half_space_paths(n).items())
            if coeffs[n] != ref:
                failures.append(f"C_{n}({a},{y}) = {coeffs[n]} != {ref}")
    return _finish(4, "generating-function series", failures,
                   f"coefficients 0..{order} at {[(str(a), str(y)) for a, y in points]}")


CRITERION5_POINTS = [(1, 1), (3, 1), (1, 2), (3, 2), (2, 1)]


def check_free_energy(n: int = 200, tol: float = 0.03) -> CheckResult:
    failures, rows = [], []
    for a, y in CRITERION5_POINTS:
        est = fe.psi_estimate(fe.ModelKind.Grafted, float(a), float(y), n)
        ref = fe.psi_closed(fe.ModelKind.Grafted, a, y)
        gap = abs(est - ref)
        theta = asy.grafted_exponent(a, y)
        rows.append({"a": a, "y": y, "estimate": est, "closed": ref, "gap": gap,
                     "theta_log_n_over_2n": theta * math.log(n) / (2 * n)})
        if gap > tol:
            failures.append(f"({a},{y}): |{est:.6f} - {ref:.6f}| = {gap:.4f} > {tol}")
    detail = "gaps " + ", ".join(f"({r['a']},{r['y']}) {r['gap']:.4f}" for r in rows)
    return _finish(5, "free-energy convergence", failures, detail, {"rows": rows})


def check_amplitude(ns=(100, 200, 300), tol: float = 0.15) -> CheckResult:
    rep = asy.verify_amplitude("multicritical", ns)
    failures = []
    if abs(rep.final_ratio - 1) > tol:
        failures.append(f"ratio {rep.final_ratio:.5f} at n={ns[-1]} outside {tol:.0%}")
    if not rep.improving():
        failures.append(f"ratio gaps not decreasing: {rep.gaps}")
    value = rep.final_ratio * 4 / math.pi
    return _finish(6, "multicritical amplitude", failures,
                   f"P^G n^3/4^n = {value:.5f} vs 4/pi = {4 / math.pi:.5f}; ratios "
                   + ", ".join(f"{n}:{r:.5f}" for n, r in rep.rows),
                   {"rows": rep.rows})


EXPONENT_CELLS = [((2, 1), 3.0), ((1, 1), 5.0), ((3.0, 2.0), 0.5)]


def check_exponents(ladder=(64, 96, 128, 160, 192, 224, 256), tol: float = 0.3) -> CheckResult:
    failures, fits = [], {}
    for (a, y), theta in EXPONENT_CELLS:
        f = asy.grafted_fit(a, y, ladder)
        fits[f"{a},{y}"] = {"theta": f.theta, "mu": f.mu, "amplitude": f.amplitude, "residual": f.residual}
        if abs(f.theta - theta) > tol:
            failures.append(f"({a},{y}): theta {f.theta:.3f} vs {theta}")
    detail = ", ".join(f"({k}) theta={v['theta']:.3f}" for k, v in fits.items())
    return _finish(7, "exponent recovery", failures, detail, {"fits": fits})


BOUND_POINTS = [(Fraction(1, 2), Fraction(1, 2)), (Fraction(2), Fraction(1)), (Fraction(3), Fraction(2)),
                (Fraction(2), Fraction(3)), (Fraction(7, 5), Fraction(5, 2))]


def check_bounds(half_max: int = 8) -> CheckResult:
    failures = []
    count = 0
    polys = {(n, c): brute.enumerate_polygons(n, c) for n in range(2, half_max + 1) for c in ("C", "S")}
    for a, y in BOUND_POINTS:
        for n in range(2, half_max + 1):
            pc = polys[(n, "C")].evaluate(a, y)
            ps = polys[(n, "S")].evaluate(a, y)
            t = cf.T_upper(n, a, y)
            s = cf.S_upper(n, a, y)
            count += 2
            if t < pc:
                failures.append(f"T_{2 * n}({a},{y}) = {t} < P^C = {pc}")
            if s < ps:
                failures.append(f"S_{2 * n}({a},{y}) = {s} < P^S = {ps}")
    for a, y, n in itertools.product((1, 2), (2, 3), range(1, 6)):
        r = asy.four_bridge_lower_bound_check(a, y, n)
        count += 2
        if not r.ok:
            failures.append(f"four-bridge a={a} y={y} n={n}: {r.lhs} vs {r.rhs_4n}, {r.rhs_4n2}")
    return _finish(8, "bounds battery", failures, f"{count} exact inequalities")


def check_bridge_growth(y: float = 3.0, ns=(100, 200, 300, 400), tol: float = 0.05) -> CheckResult:
    rep = asy.bridge_growth_check(y, ns)
    failures = []
    if rep.gaps[-1] > tol:
        failures.append(f"gap {rep.gaps[-1]:.5f} at n={ns[-1]}")
    if not rep.shrinking():
        failures.append(f"gaps not shrinking: {rep.gaps}")
    return _finish(9, "bridge growth", failures,
                   f"target {rep.target:.6f}; " + ", ".join(f"{n}:{v:.6f}" for n, v in rep.rows),
                   {"rows": rep.rows})


def check_appendix(order: int = 20) -> CheckResult:
    failures = []
    for y in (1, 2):
        rep = asy.appendix_series_check(y, order)
        failures += [f"y={y}: coefficient t^{k}" for k in rep.failures]
    return _finish(10, "series inequality", failures, f"exact through t^{order} at y in {{1, 2}}")


SADDLE_POINTS = [(3, 2), (4, 3), (10, 1.5)]


def check_saddle(tol: float = 1e-6) -> CheckResult:
    failures, errs = [], []
    for a, y in SADDLE_POINTS:
        try:
            g, d = fe.saddle_solve(a, y)
        except fe.SaddleError as exc:
            failures.append(str(exc))
            continue
        g0, d0 = fe.saddle_values(a, y)
        err = max(abs(g - g0), abs(d - d0))
        errs.append(err)
        if err > tol:
            failures.append(f"({a},{y}): ({g:.9f},{d:.9f}) vs ({g0:.9f},{d0:.9f})")
    return _finish(11, "saddle agreement", failures, f"max error {max(errs) if errs else float('nan'):.2e}")


def log_grid(lo: float, hi: float, count: int) -> np.ndarray:
    return np.exp(np.linspace(math.log(lo), math.log(hi), count))


def check_phase_grid(count: int = 25, half_max: int = 10, tol: float = 1e-12) -> CheckResult:
    failures = []
    grid = log_grid(0.5, 8.0, count)
    worst = 0.0
    for a in grid:
        for y in grid:
            a_, y_ = float(a), float(y)
            for kind in fe.ModelKind:
                d = abs(fe.psi_closed(kind, a_, y_) - fe.psi_max_form(kind, a_, y_))
                worst = max(worst, d)
                if d > tol:
                    failures.append(f"max form {kind.value} at ({a_:.4g},{y_:.4g}): {d:.2e}")
            if fe.psi_closed("Centred", a_, y_) < fe.psi_closed("Grafted", a_, y_) - tol:
                failures.append(f"psi^C < psi^G at ({a_:.4g},{y_:.4g})")
    failures += finite_size_invariants(half_max)
    return _finish(12, "phase-grid properties", failures,
                   f"{count}x{count} grid, max-form worst {worst:.1e}; convexity/monotonicity for 2n <= {2 * half_max}")


def finite_size_invariants(half_max: int = 10, points: int = 9, tol: float = 1e-9) -> list[str]:
    """Convexity in log a, log y and monotonicity of (1/2n) log P on a 9-point log grid."""
    failures = []
    grid = log_grid(0.5, 8.0, points)
    for kind in (fe.ModelKind.Grafted, fe.ModelKind.Centred, fe.ModelKind.Staircase):
        for n in range(2, half_max + 1):
            poly = fe.partition_polynomial(kind, n)
            terms = poly.terms
            vs = np.array([v for v, _ in terms], dtype=float)
            hs = np.array([h for _, h in terms], dtype=float)
            lc = np.array([math.log(c) for c in terms.values()])

            def f(la, ly):
                x = lc + vs * la + hs * ly
                m = x.max()
                return (m + math.log(np.exp(x - m).sum())) / (2 * n)

            L = np.log(grid)
            table = np.array([[f(la, ly) for ly in L] for la in L])
            if np.any(np.diff(table, axis=0) < -tol) or np.any(np.diff(table, axis=1) < -tol):
                failures.append(f"monotonicity {kind.value} n={n}")
            if np.any(np.diff(table, 2, axis=0) < -tol) or np.any(np.diff(table, 2, axis=1) < -tol):
                failures.append(f"convexity {kind.value} n={n}")
    return failures


CRITERIA: dict[int, Callable[[], CheckResult]] = {
    1: check_oracle_equality,
    2: check_pair_counts,
    3: check_single_path,
    4: check_series,
    5: check_free_energy,
    6: check_amplitude,
    7: check_exponents,
    8: check_bounds,
    9: check_bridge_growth,
    10: check_appendix,
    11: check_saddle,
    12: check_phase_grid,
}

SUITES = {
    "oracle": (1, 2, 3, 4),
    "bounds": (8,),
    "asymptotics": (5, 6, 7, 9, 11),
    "appendix": (10,),
    "phase": (12,),
    "all": tuple(range(1, 13)),
}


def run_criterion(number: int) -> CheckResult:
    t = time.perf_counter()
    res = CRITERIA[number]()
    res.elapsed = time.perf_counter() - t
    return res


def run_suite(name: str) -> list[CheckResult]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return [run_criterion(k) for k in SUITES[name]]
