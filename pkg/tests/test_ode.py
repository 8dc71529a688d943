import numpy as np
import pytest

from tmsdyn import (GaussianQuadraticPulse, IntegratorConfig, NullPulse,
                    integrate, residual, rhs, theta_minus_closed)


def test_rhs_zero_state():
    out = rhs([0, 0, 0, 0], 0.0, NullPulse(), chi=0.7)
    assert out[0] == pytest.approx(1.4)
    assert np.isnan(out[1])
    assert out[2] == 0.0 and out[3] == 0.0


def test_rhs_drive_only():
    p = GaussianQuadraticPulse(lam=0.3 * np.e, eta0=1.0)
    out = rhs([0, 0, 0, 0], 1.0, p, chi=1.0)
    assert out[3] == pytest.approx(0.3, rel=1e-12)


def test_rhs_hyperbolic_terms():
    out = rhs([0, 0, 0.1, 0.2], 10.0, NullPulse(), chi=1.0, epsilon=0.5)
    assert out[1] == pytest.approx(1.5)
    assert out[2] == pytest.approx(-np.sinh(0.2), abs=1e-12)
    assert out[3] == pytest.approx(np.cosh(0.2) * np.tanh(0.1), abs=1e-12)
    assert out[2] == pytest.approx(-0.201336, abs=1e-6)
    assert out[3] == pytest.approx(0.101668, abs=1e-6)


def test_null_pulse_stays_at_zero():
    traj = integrate(NullPulse(), chi=1.0, eta_end=100.0)
    assert np.max(np.abs(traj.f_plus)) <= 1e-12
    assert np.max(np.abs(traj.f_minus)) <= 1e-12
    assert traj.eta[0] == 0.0 and traj.theta_plus[0] == 0.0


def test_theta_minus_closed():
    assert theta_minus_closed(1.0, 10.0) == 0.0
    assert theta_minus_closed(0.5, 2.0) == pytest.approx(3.0)
    traj = integrate(GaussianQuadraticPulse(lam=0.3, eta0=1.0),
                     chi=(1 + 0.49) / 1.4, eta_end=20.0, epsilon=0.7)
    assert traj.theta_minus[-1] == pytest.approx(
        theta_minus_closed(0.7, traj.eta[-1]), abs=1e-10)


def test_theta_minus_omitted_without_epsilon():
    traj = integrate(GaussianQuadraticPulse(lam=0.3, eta0=1.0),
                     chi=0.5, eta_end=5.0)
    assert traj.theta_minus is None
    assert traj.epsilon is None


def test_rk4_step_halving_convergence():
    pulse = GaussianQuadraticPulse(lam=1.0, eta0=1.0)
    ref = integrate(pulse, chi=0.3, eta_end=10.0,
                    config=IntegratorConfig(rel_tol=1e-12, abs_tol=1e-14,
                                            max_step=0.05))
    f_ref = ref.f_plus[-1]
    errs = []
    for step in (0.04, 0.02):
        traj = integrate(pulse, chi=0.3, eta_end=10.0,
                         config=IntegratorConfig(method="rk4", step=step))
        errs.append(abs(traj.f_plus[-1] - f_ref))
    ratio = errs[0] / errs[1]
    assert 10.0 < ratio < 25.0  # ~16x for a 4th-order method


def test_residual_null():
    traj = integrate(NullPulse(), chi=1.0, eta_end=10.0,
                     config=IntegratorConfig(method="rk4", step=1e-2))
    assert residual(traj) <= 1e-10


def test_residual_second_order_in_sampling():
    pulse = GaussianQuadraticPulse(lam=0.1, eta0=1.0)
    res = []
    for step in (2e-3, 1e-3):
        traj = integrate(pulse, chi=0.1, eta_end=20.0,
                         config=IntegratorConfig(method="rk4", step=step))
        res.append(residual(traj))
    ratio = res[0] / res[1]
    assert 2.5 < ratio < 6.0  # ~4x for the central-difference estimator


def test_determinism():
    cfg = IntegratorConfig(rel_tol=1e-9, abs_tol=1e-11)
    pulse = GaussianQuadraticPulse(lam=0.5, eta0=1.0)
    a = integrate(pulse, chi=0.2, eta_end=30.0, config=cfg)
    b = integrate(pulse, chi=0.2, eta_end=30.0, config=cfg)
    assert np.array_equal(a.f_plus, b.f_plus)
    assert np.array_equal(a.eta, b.eta)


def test_invalid_arguments():
    with pytest.raises(ValueError):
        integrate(NullPulse(), chi=1.0, eta_end=-1.0)
    with pytest.raises(ValueError):
        IntegratorConfig(method="euler")
    with pytest.raises(ValueError):
        IntegratorConfig(rel_tol=-1.0)
