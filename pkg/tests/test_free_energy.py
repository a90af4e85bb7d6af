import math

import pytest
from hypothesis import given, settings, strategies as st

from stairpoly import free_energy as fe
from stairpoly.free_energy import ModelKind, Phase

pos = st.floats(0.05, 20, allow_nan=False)
LOG2 = math.log(2)


def test_single_path_pieces():
    assert fe.lambdaP(1) == LOG2
    assert fe.kappaP(2) == LOG2
    assert fe.t_crit(2, 1) == 0.5


@given(pos, pos)
def test_psiP_is_minus_log_tcrit(a, y):
    assert fe.psiP(a, y) == pytest.approx(-math.log(fe.t_crit(a, y)), abs=1e-12)


@pytest.mark.parametrize("f", [fe.lambdaP, fe.kappaP])
def test_domain_errors(f):
    with pytest.raises(ValueError):
        f(0)
    with pytest.raises(ValueError):
        fe.psi_closed("Grafted", 1, -1)


def test_closed_form_values():
    assert fe.psi_closed(ModelKind.Grafted, 2, 1) == LOG2
    assert fe.psi_closed(ModelKind.Grafted, 3, 2) == pytest.approx(math.log(3) - 0.5 * math.log(2), abs=1e-15)
    assert fe.psi_closed(ModelKind.Grafted, 3, 2) == pytest.approx(0.752038, abs=1e-6)


@given(pos, pos)
def test_max_form_identities(a, y):
    for kind in ModelKind:
        assert fe.psi_closed(kind, a, y) == pytest.approx(fe.psi_max_form(kind, a, y), abs=1e-12)


@given(pos, pos)
def test_staircase_equals_centred_and_dominates_grafted(a, y):
    c, g = fe.psi_closed("Centred", a, y), fe.psi_closed("Grafted", a, y)
    assert fe.psi_closed("Staircase", a, y) == c
    assert c >= g - 1e-15
    if a > y + 1 or y <= 1:
        assert c == pytest.approx(g, abs=1e-15)
    if y <= 1:
        assert g == pytest.approx(fe.psi_closed("SemiGrafted", a, y), abs=1e-15)


def test_phase_examples():
    assert fe.classify_phase("Grafted", 3, 2) is Phase.Mixed
    assert fe.classify_phase("Centred", 4, 2) is Phase.Mixed
    assert fe.classify_phase("Centred", 2.5, 2) is Phase.Ballistic
    assert fe.classify_phase("Centred", 1, 0.5) is Phase.Free
    assert fe.classify_phase("Centred", 3, 0.5) is Phase.Adsorbed


def test_boundary_band():
    assert fe.classify_phase("Grafted", 2, 1.5) is Phase.Boundary
    assert fe.classify_phase("Grafted", 2 + 1e-10, 1.5) is Phase.Boundary
    assert fe.classify_phase("Grafted", 2 + 1e-8, 1.5) is Phase.Mixed
    # the first-order line y = a - 1
    assert fe.classify_phase("Centred", 3, 2) is Phase.Boundary


@given(pos, pos)
def test_phase_labels_agree_with_order_parameters(a, y):
    for kind in ModelKind:
        pt = fe.phase_point(kind, a, y)
        if pt.phase is Phase.Free:
            assert pt.V == 0 and pt.H == 0
        elif pt.phase is Phase.Adsorbed:
            assert pt.V > 0 and pt.H == 0
        elif pt.phase is Phase.Ballistic:
            assert pt.H > 0 and pt.V == 0
        elif pt.phase is Phase.Mixed:
            assert pt.V > 0 and pt.H > 0
        assert 0 <= pt.V <= 1 and 0 <= pt.H <= 1


@given(st.floats(0.3, 8), st.floats(0.3, 8))
@settings(max_examples=30)
def test_closed_order_parameters_are_log_derivatives(a, y):
    h = 1e-6
    for kind in (ModelKind.Grafted, ModelKind.Centred):
        if fe.classify_phase(kind, a, y, tol=1e-4) is Phase.Boundary:
            continue
        V, H = fe.order_parameters_closed(kind, a, y)
        dv = (fe.psi_closed(kind, a * math.exp(h), y) - fe.psi_closed(kind, a * math.exp(-h), y)) / (2 * h)
        dh = (fe.psi_closed(kind, a, y * math.exp(h)) - fe.psi_closed(kind, a, y * math.exp(-h))) / (2 * h)
        assert V == pytest.approx(dv, abs=1e-6)
        assert H == pytest.approx(dh, abs=1e-6)


def test_estimate_trends_to_log2_in_free_phase():
    est = [fe.psi_estimate("Grafted", 1.0, 1.0, n) for n in (50, 100, 200)]
    assert est[0] < est[1] < est[2] < LOG2


def test_estimate_close_in_mixed_phase():
    assert abs(fe.psi_estimate("Grafted", 3.0, 2.0, 200) - 0.752038) <= 0.03


def test_exact_and_float_estimates_agree():
    assert fe.psi_estimate("Grafted", 3, 2, 30) == pytest.approx(fe.psi_estimate("Grafted", 3.0, 2.0, 30), rel=1e-12)


def test_grafted_centred_sandwich():
    # centred polygons sit between grafted-centred and the four-path bound
    from stairpoly import closed_form as cf
    from stairpoly.asymptotics import log_number
    n = 40
    low = log_number(cf.PGC(n, 3, 2)) / (2 * n)
    mid = fe.psi_estimate("Centred", 3, 2, n)
    high = log_number(cf.T_upper(n, 3, 2)) / (2 * n)
    assert low <= mid <= high


def test_order_parameters_free_phase():
    V, H = fe.order_parameters("Grafted", 1.0, 1.0, 200)
    assert V < 0.05 and H < 0.05


def test_order_parameters_adsorbed():
    V, H = fe.order_parameters("Grafted", 4.0, 1.0, 200)
    assert V > 0.1 and H < 0.06
    assert fe.order_parameters_closed("Grafted", 4, 1) == (pytest.approx(1 / 6), 0.0)


def test_order_parameters_ballistic():
    V, H = fe.order_parameters("Grafted", 1.0, 4.0, 200)
    assert V < 0.05
    # limiting value y d/dy of half lambdaP(sqrt y) at y = 4
    assert fe.order_parameters_closed("Grafted", 1, 4) == (0.0, pytest.approx(0.15))
    assert H == pytest.approx(0.15, abs=0.03)


def test_exact_means_match_differences():
    exact = fe.order_parameters("Grafted", 2.5, 1.5, 12)
    poly = fe.partition_polynomial("Grafted", 12)
    assert exact == pytest.approx(tuple(x / 24 for x in fe.ensemble_means(poly, 2.5, 1.5)))
    h = 1e-5
    lp = lambda a, y: fe.log_partition("Grafted", a, y, 12)
    dv = (lp(2.5 * math.exp(h), 1.5) - lp(2.5 * math.exp(-h), 1.5)) / (2 * h) / 24
    assert exact[0] == pytest.approx(dv, rel=1e-6)


def test_saddle_values():
    assert fe.saddle_values(4, 3) == (0.5, 0.25)
    assert fe.saddle_values(2 + 1e-9, 2)[1] == pytest.approx(0, abs=1e-9)


@pytest.mark.parametrize("a, y", [(3, 2), (4, 3), (10, 1.5), (6, 8)])
def test_saddle_solve(a, y):
    g, d = fe.saddle_solve(a, y)
    g0, d0 = fe.saddle_values(a, y)
    assert abs(g - g0) < 1e-6 and abs(d - d0) < 1e-6


def test_saddle_needs_interior():
    with pytest.raises(ValueError):
        fe.saddle_solve(2, 3)
