"""Limiting free energies, finite-size estimates, order parameters and phases."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .lattice import PolygonClass
from .polynomial import A, Y, BivariatePolynomial
from . import transfer

LOG2 = math.log(2.0)
BOUNDARY_TOL = 1e-9
POLY_N_MAX = 12  # exact ensemble means are used up to this half-length


class ModelKind(str, enum.Enum):
    PathP = "PathP"
    Grafted = "Grafted"
    Centred = "Centred"
    Staircase = "Staircase"
    SemiGrafted = "SemiGrafted"


class Phase(str, enum.Enum):
    Free = "Free"
    Adsorbed = "Adsorbed"
    Ballistic = "Ballistic"
    Mixed = "Mixed"
    Boundary = "Boundary"


_KIND_ALIASES = {"p": "pathp", "g": "grafted", "c": "centred", "s": "staircase"}


def to_kind(kind: ModelKind | str) -> ModelKind:
    if isinstance(kind, ModelKind):
        return kind
    key = str(kind).lower()
    key = _KIND_ALIASES.get(key, key)
    for k in ModelKind:
        if k.value.lower() == key:
            return k
    raise ValueError(f"unknown model kind {kind!r}")


def _check_domain(a, y=1.0):
    if not (a > 0 and y > 0):
        raise ValueError(f"fugacities must be positive, got a={a}, y={y}")


# ---------------------------------------------------------------------------
# single binomial paths

def lambdaP(y: float) -> float:
    _check_domain(1.0, y)
    return LOG2 if y <= 1 else math.log(y * y + 1) - math.log(y)


def kappaP(a: float) -> float:
    _check_domain(a)
    return LOG2 if a <= 2 else math.log(a) - 0.5 * math.log(a - 1)


def psiP(a: float, y: float) -> float:
    return max(lambdaP(y), kappaP(a))


def t_crit(a: float, y: float) -> float:
    """Dominant singularity of the half-space path generating function."""
    _check_domain(a, y)
    cands = [0.5]
    if y > 1:
        cands.append(y / (y * y + 1))
    if a > 2:
        cands.append(math.sqrt(a - 1) / a)
    return min(cands)


# ---------------------------------------------------------------------------
# polygon free energies

def psi_closed(kind: ModelKind | str, a: float, y: float) -> float:
    """Piecewise closed-form free energy per unit length."""
    kind = to_kind(kind)
    _check_domain(a, y)
    if kind is ModelKind.PathP:
        return psiP(a, y)
    if kind is ModelKind.SemiGrafted:
        return LOG2 if a <= 2 else 0.5 * LOG2 + 0.5 * math.log(a) - 0.25 * math.log(a - 1)
    if kind is ModelKind.Grafted:
        if a <= 2 and y <= 1:
            return LOG2
        if a > 2 and y <= 1:
            return 0.5 * LOG2 + 0.5 * math.log(a) - 0.25 * math.log(a - 1)
        if a <= 2:
            return 0.5 * LOG2 + 0.5 * math.log(y + 1) - 0.25 * math.log(y)
        return 0.5 * math.log(a) - 0.25 * math.log(a - 1) + 0.5 * math.log(y + 1) - 0.25 * math.log(y)
    # centred and all staircase polygons share a free energy
    if a <= 2 and y <= 1:
        return LOG2
    if a > 2 and y <= 1:
        return 0.5 * LOG2 + 0.5 * math.log(a) - 0.25 * math.log(a - 1)
    if a <= y + 1:
        return math.log(y + 1) - 0.5 * math.log(y)
    return 0.5 * math.log(a) - 0.25 * math.log(a - 1) + 0.5 * math.log(y + 1) - 0.25 * math.log(y)


def psi_max_form(kind: ModelKind | str, a: float, y: float) -> float:
    """Free energy assembled from the single-path quantities lambdaP and kappaP."""
    kind = to_kind(kind)
    ly = lambdaP(math.sqrt(y))
    if kind is ModelKind.PathP:
        return max(lambdaP(y), kappaP(a))
    if kind is ModelKind.SemiGrafted:
        return 0.5 * LOG2 + 0.5 * kappaP(a)
    if kind is ModelKind.Grafted:
        return 0.5 * ly + 0.5 * kappaP(a)
    return 0.5 * ly + 0.5 * max(ly, kappaP(a))


def order_parameters_closed(kind: ModelKind | str, a: float, y: float) -> tuple[float, float]:
    """Limiting (V, H) = (a d/da, y d/dy) of the closed-form free energy."""
    kind = to_kind(kind)
    _check_domain(a, y)
    v_ads = (a - 2) / (4 * (a - 1)) if a > 2 else 0.0
    h_bal = (y - 1) / (4 * (y + 1)) if y > 1 else 0.0
    if kind is ModelKind.Grafted:
        return v_ads, h_bal
    if kind is ModelKind.SemiGrafted:
        return v_ads, 0.0
    if kind is ModelKind.PathP:
        kap, lam = kappaP(a), lambdaP(y)
        if kap >= lam and a > 2:
            return (a - 2) / (2 * (a - 1)), 0.0
        if lam > kap and y > 1:
            return 0.0, (y * y - 1) / (y * y + 1)
        return 0.0, 0.0
    if y > 1 and a <= y + 1:
        return 0.0, 2 * h_bal
    return v_ads, h_bal


def classify_phase(kind: ModelKind | str, a: float, y: float, tol: float = BOUNDARY_TOL) -> Phase:
    kind = to_kind(kind)
    _check_domain(a, y)
    if kind is ModelKind.SemiGrafted:
        if abs(a - 2) < tol:
            return Phase.Boundary
        return Phase.Adsorbed if a > 2 else Phase.Free
    if kind is ModelKind.Grafted:
        if abs(a - 2) < tol or abs(y - 1) < tol:
            return Phase.Boundary
        return {(False, False): Phase.Free, (True, False): Phase.Adsorbed,
                (False, True): Phase.Ballistic, (True, True): Phase.Mixed}[(a > 2, y > 1)]
    if kind is ModelKind.PathP:
        kap, lam = kappaP(a), lambdaP(y)
        if (abs(a - 2) < tol and y <= 1 + tol) or (abs(y - 1) < tol and a <= 2 + tol):
            return Phase.Boundary
        if a < 2 and y < 1:
            return Phase.Free
        if abs(kap - lam) < tol:
            return Phase.Boundary
        return Phase.Adsorbed if kap > lam else Phase.Ballistic
    # centred / staircase
    if abs(y - 1) < tol:
        return Phase.Boundary
    if y < 1:
        if abs(a - 2) < tol:
            return Phase.Boundary
        return Phase.Adsorbed if a > 2 else Phase.Free
    if abs(a - (y + 1)) < tol:
        return Phase.Boundary
    return Phase.Mixed if a > y + 1 else Phase.Ballistic


@dataclass(frozen=True)
class PhasePoint:
    a: float
    y: float
    psi: float
    phase: Phase
    V: float
    H: float


def phase_point(kind: ModelKind | str, a: float, y: float) -> PhasePoint:
    V, H = order_parameters_closed(kind, a, y)
    return PhasePoint(a, y, psi_closed(kind, a, y), classify_phase(kind, a, y), V, H)


# ---------------------------------------------------------------------------
# finite-size estimates

def _model_dp(kind: ModelKind, n: int, a, y) -> transfer.PolygonDPResult:
    if kind is ModelKind.Grafted:
        return transfer.polygon_dp(n, PolygonClass.G, a, y)
    if kind is ModelKind.Centred:
        return transfer.polygon_dp(n, PolygonClass.C, a, y)
    if kind is ModelKind.Staircase:
        return transfer.polygon_dp(n, PolygonClass.S, a, y)
    if kind is ModelKind.SemiGrafted:
        # no height weight in this model
        return transfer.polygon_dp(n, PolygonClass.S, a, 1.0 if transfer.is_numeric(a) else 1, starts=[1])
    raise ValueError(f"{kind.value} has no polygon transfer evaluator")


def partition_polynomial(kind: ModelKind | str, n: int) -> BivariatePolynomial:
    kind = to_kind(kind)
    if kind is ModelKind.PathP:
        return sum((w * Y**k for k, w in transfer.single_path_table(n, 0, A).items()), BivariatePolynomial())
    return _model_dp(kind, n, A, Y).value


def log_partition(kind: ModelKind | str, a, y, n: int) -> float:
    """log of the finite-size partition function (length 2n, or n for PathP)."""
    kind = to_kind(kind)
    if kind is ModelKind.PathP:
        row = transfer.single_path_table(n, 0, float(a))
        terms = [math.log(w) + k * math.log(y) for k, w in row.items() if w > 0]
        top = max(terms)
        return top + math.log(sum(math.exp(t - top) for t in terms))
    return _model_dp(kind, n, a, y).log


def psi_estimate(kind: ModelKind | str, a, y, n: int) -> float:
    """(1/2n) log P_{2n}(a, y); for PathP, (1/n) log C_n(a, y)."""
    kind = to_kind(kind)
    _check_domain(a, y)
    lp = log_partition(kind, a, y, n)
    return lp / n if kind is ModelKind.PathP else lp / (2 * n)


def ensemble_means(poly: BivariatePolynomial, a: float, y: float) -> tuple[float, float]:
    """Boltzmann means <v>, <h> of an exact partition polynomial at (a, y)."""
    terms = poly.terms
    vs = np.array([v for v, _ in terms], dtype=float)
    hs = np.array([h for _, h in terms], dtype=float)
    logw = np.array([math.log(c) for c in terms.values()]) + vs * math.log(a) + hs * math.log(y)
    w = np.exp(logw - logw.max())
    z = w.sum()
    return float((w * vs).sum() / z), float((w * hs).sum() / z)


def order_parameters(kind: ModelKind | str, a: float, y: float, n: int, delta: float = 1e-3) -> tuple[float, float]:
    """Finite-size (V, H) = (<v>, <h>) per unit length at length 2n (n for PathP)."""
    kind = to_kind(kind)
    _check_domain(a, y)
    length = n if kind is ModelKind.PathP else 2 * n
    if n <= POLY_N_MAX:
        mv, mh = ensemble_means(partition_polynomial(kind, n), a, y)
        return mv / length, mh / length

    def lp(la, ly):
        return log_partition(kind, math.exp(la), math.exp(ly), n)

    la, ly = math.log(a), math.log(y)
    V = (lp(la + delta, ly) - lp(la - delta, ly)) / (2 * delta) / length
    H = (lp(la, ly + delta) - lp(la, ly - delta)) / (2 * delta) / length
    return V, H


# ---------------------------------------------------------------------------
# saddle point of the dominant summands for a > 2, y > 1

def saddle_values(a: float, y: float) -> tuple[float, float]:
    """Closed-form maximisers (gamma, delta) = ((y-1)/(y+1), (a-2)/(2a))."""
    _check_domain(a, y)
    return (y - 1) / (y + 1), (a - 2) / (2 * a)


def _entropy(x):
    return -(x * np.log(x) + (1 - x) * np.log1p(-x))


def stirling_log_summand(gamma: float, delta: float, a: float, y: float) -> float:
    """Leading (1/n) log of s1_n(gamma n, 2 delta n) (a-1)^(delta n) y^(gamma n / 2).

    Each binomial C(n, x n) contributes the Stirling limit -x log x - (1-x) log(1-x).
    """
    return float(
        _entropy((1 + gamma) / 2) + _entropy((1 + 2 * delta) / 2) + delta * math.log(a - 1) + 0.5 * gamma * math.log(y)
    )


class SaddleError(RuntimeError):
    pass


def saddle_solve(a: float, y: float, tol: float = 1e-10) -> tuple[float, float]:
    """Numerically maximise the Stirling log-summand over (0, 1) x (0, 1/2).

    The box is removed with logistic maps gamma = sigma(u), delta = sigma(v)/2
    and the unconstrained problem is handed to BFGS.
    """
    if not (a > 2 and y > 1):
        raise ValueError("interior saddle needs a > 2 and y > 1")

    def unpack(x):
        g = 1 / (1 + math.exp(-x[0]))
        d = 0.5 / (1 + math.exp(-x[1]))
        return g, d

    def neg(x):
        return -stirling_log_summand(*unpack(x), a, y)

    res = optimize.minimize(neg, x0=np.zeros(2), method="BFGS", options={"gtol": tol, "maxiter": 1000})
    g, d = unpack(res.x)
    if not res.success and np.linalg.norm(res.jac) > 1e-6:
        raise SaddleError(f"saddle search failed at (gamma, delta)=({g}, {d}), |grad|={np.linalg.norm(res.jac):.2e}: {res.message}")
    return float(g), float(d)
