"""The numba kernels and their pure-python fallbacks must agree exactly."""

import numpy as np
import pytest

from tmsdyn import kernels
from tmsdyn.pulses import GaussianQuadraticPulse, pulse_kernel_args


def _maybe_pyfunc(fn):
    return getattr(fn, "py_func", fn)


@pytest.mark.skipif(not kernels.JIT_ENABLED, reason="numba disabled")
def test_pulse_eval_jit_matches_python():
    kind, params, xs, ys = pulse_kernel_args(
        GaussianQuadraticPulse(lam=0.7, eta0=1.3))
    py = _maybe_pyfunc(kernels.pulse_eval)
    for eta in np.linspace(0.0, 12.0, 97):
        # numba may contract the multiply-exp chain into fma, so allow ULP slack
        assert kernels.pulse_eval(kind, params, xs, ys, eta) == pytest.approx(
            py(kind, params, xs, ys, eta), rel=1e-14, abs=0.0)


@pytest.mark.skipif(not kernels.JIT_ENABLED, reason="numba disabled")
def test_integrator_jit_matches_python():
    kind, params, xs, ys = pulse_kernel_args(
        GaussianQuadraticPulse(lam=0.4, eta0=1.0))
    args = (0.6, 1.2, kind, params, xs, ys, 25.0, 1e-9, 1e-11, 0.1, 200000)
    etas_j, states_j, n_j, st_j = kernels.integrate_dopri5(*args)
    etas_p, states_p, n_p, st_p = _maybe_pyfunc(kernels.integrate_dopri5)(*args)
    assert st_j == st_p == kernels.STATUS_OK
    assert n_j == n_p
    assert np.array_equal(etas_j[:n_j], etas_p[:n_p])
    assert np.array_equal(states_j[:n_j], states_p[:n_p])


def test_status_codes_distinct():
    codes = {kernels.STATUS_OK, kernels.STATUS_MAX_STEPS,
             kernels.STATUS_NONFINITE, kernels.STATUS_STEP_UNDERFLOW}
    assert len(codes) == 4
