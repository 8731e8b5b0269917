import cmath
import math

import pytest

import crossing_kit as ck


def test_gamma_and_mu():
    assert ck.gamma_real(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-12)
    assert ck.mu_m(2, 0.3) == pytest.approx(math.cos(0.3), abs=1e-15)
    assert ck.mu_m(1, 0.3) == pytest.approx(cmath.exp(0.3j), abs=1e-15)


def test_stationary_phase_constants():
    w1 = ck.osc_leading_term(1, 1.0, 1.0, 1.0)
    assert abs(w1 - math.sqrt(2 * math.pi) * cmath.exp(0.25j * math.pi)) < 1e-12
    w2 = ck.osc_leading_term(2, 2.0, 1.0, 1.0)
    assert abs(w2 - 2.230707051824496) < 1e-10
    value, err = ck.osc_integral(2, 2.0, ck.Coupling.bump(1.0, 1.0), 1e-4)
    assert abs(value / (w2 * 1e-4 ** (1 / 3)) - 1) < 3e-2
    assert err < 1e-6


def test_brackets_and_contact():
    xi, x = [(0, 1, 1.0)], [(1, 0, 1.0)]
    assert ck.poisson_bracket(xi, x) == [(0, 0, 1.0)]
    p2 = [(0, 1, 1.0), (2, 0, -1.0)]
    assert ck.contact_order(xi, p2) == (2, -2.0)
    T = ck.predict_general(xi, p2, 1.0, 1.0, 1e-3)
    assert abs(T[0][1] - (-1j) * 1e-1 * 2.230707051824496) < 1e-12


def test_model_transfer_matches_prediction():
    bump = ck.Coupling.bump(1.0, 0.5)
    ext, pred, solver = ck.model_transfer([0, 0, 1], bump, bump, 1e-3)
    assert solver == "neumann"
    assert abs(ext[1][0] / pred[1][0] - 1) < 0.05
    assert abs(abs(ext[0][0]) ** 2 + abs(ext[1][0]) ** 2 - 1) < 1e-8


def test_schrodinger_caustic_golden_values():
    T = ck.schrodinger_predict([0, -1], [0, -2], 0.0, ck.Coupling.constant(1.0), 1.0, "caustic")
    assert T[0][1] == pytest.approx(-2.810514770742616j, abs=1e-12)
    assert T[1][0] == pytest.approx(-1.405257385371308j, abs=1e-12)


def test_schrodinger_numeric_n1():
    W = ck.Coupling.bump(1.0, 0.5)
    pred = ck.schrodinger_predict([0, -0.5], [0, 0.5], 1.0, W, 1e-3)
    num = ck.schrodinger_numeric([0, -0.5], [0, 0.5], 1.0, W, 1e-3)
    assert abs(num[1][0] / pred[1][0] - 1) < 0.15


def test_sweep_and_fit():
    rep = ck.model_sweep(1, ck.geometric_grid(1e-2, 1e-4, 5))
    assert rep["all_pass"]
    assert rep["fits"]["t21"]["exponent"] == pytest.approx(0.5, abs=0.02)
    exp_, amp, res = ck.fit_power_law([(h, 3 * h**0.5) for h in (1e-2, 1e-3, 1e-4)])
    assert exp_ == pytest.approx(0.5, abs=1e-9)
    assert amp == pytest.approx(3.0, rel=1e-9)


def test_errors_are_raised():
    with pytest.raises(ck.CrossingError, match="NoFiniteContact"):
        ck.contact_order([(0, 1, 1.0)], [(0, 1, 2.0)])
    with pytest.raises(ck.CrossingError):
        ck.gamma_real(-1.0)
