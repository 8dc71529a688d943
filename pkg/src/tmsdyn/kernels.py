"""Hot numerical kernels: pulse evaluation and ODE stepping.

Compiled with numba unless TMSDYN_DISABLE_JIT=1 (see _jit.py); the source
is written so the same functions run unmodified as plain Python/numpy.

State vector layout: y = (theta_plus, theta_minus, f_plus, f_minus).
"""

import numpy as np

from ._jit import JIT_ENABLED, njit

__all__ = ["JIT_ENABLED", "pulse_eval", "rhs_into", "integrate_dopri5", "integrate_rk4"]

STATUS_OK = 0
STATUS_MAX_STEPS = 1
STATUS_NONFINITE = 2
STATUS_STEP_UNDERFLOW = 3


@njit(cache=True)
def pulse_eval(kind, params, xs, ys, eta):
    if kind == 0:
        return 0.0
    if kind == 1:  # gaussian quadratic: lam * eta^2 * exp(-eta^2/eta0^2)
        lam = params[0]
        eta0 = params[1]
        eta_f = params[2]
        if eta >= eta_f:
            return 0.0
        return lam * eta * eta * np.exp(-(eta * eta) / (eta0 * eta0))
    if kind == 2:  # tabulated, linear interpolation, clamped to 0 outside
        n = xs.shape[0]
        if n == 0 or eta < xs[0] or eta > xs[n - 1]:
            return 0.0
        return np.interp(eta, xs, ys)
    if kind == 3:  # raised cosine lobe
        amp = params[0]
        start = params[1]
        dur = params[2]
        if eta <= start or eta >= start + dur:
            return 0.0
        return amp * 0.5 * (1.0 - np.cos(2.0 * np.pi * (eta - start) / dur))
    return 0.0


@njit(cache=True)
def rhs_into(y, eta, chi, theta_minus_rate, kind, params, xs, ys, out):
    fp = y[2]
    fm = y[3]
    h = pulse_eval(kind, params, xs, ys, eta)
    out[0] = 2.0 * chi * np.cosh(fm) / np.cosh(fp)
    out[1] = theta_minus_rate
    out[2] = -chi * np.sinh(fm)
    out[3] = h + chi * np.cosh(fm) * np.tanh(fp)


@njit(cache=True)
def integrate_dopri5(chi, theta_minus_rate, kind, params, xs, ys,
                     eta_end, rtol, atol, max_step, max_steps):
    """Adaptive Dormand-Prince RK45 from eta=0, zero initial state.

    Returns (etas, states, n, status) where only the first n rows are valid.
    """
    etas = np.empty(max_steps + 1)
    states = np.empty((max_steps + 1, 4))
    y = np.zeros(4)
    eta = 0.0
    etas[0] = 0.0
    states[0, :] = 0.0
    n = 1

    k1 = np.empty(4)
    k2 = np.empty(4)
    k3 = np.empty(4)
    k4 = np.empty(4)
    k5 = np.empty(4)
    k6 = np.empty(4)
    k7 = np.empty(4)
    ytmp = np.empty(4)
    ynew = np.empty(4)

    h = min(max_step, 1e-3 * eta_end)
    if h <= 0.0:
        return etas, states, n, STATUS_OK

    rhs_into(y, eta, chi, theta_minus_rate, kind, params, xs, ys, k1)
    while eta < eta_end:
        if h > max_step:
            h = max_step
        if eta + h > eta_end:
            h = eta_end - eta
        if h < 1e-14 * max(1.0, eta):
            return etas, states, n, STATUS_STEP_UNDERFLOW

        for i in range(4):
            ytmp[i] = y[i] + h * (0.2 * k1[i])
        rhs_into(ytmp, eta + 0.2 * h, chi, theta_minus_rate, kind, params, xs, ys, k2)

        for i in range(4):
            ytmp[i] = y[i] + h * (3.0 / 40.0 * k1[i] + 9.0 / 40.0 * k2[i])
        rhs_into(ytmp, eta + 0.3 * h, chi, theta_minus_rate, kind, params, xs, ys, k3)

        for i in range(4):
            ytmp[i] = y[i] + h * (44.0 / 45.0 * k1[i] - 56.0 / 15.0 * k2[i]
                                  + 32.0 / 9.0 * k3[i])
        rhs_into(ytmp, eta + 0.8 * h, chi, theta_minus_rate, kind, params, xs, ys, k4)

        for i in range(4):
            ytmp[i] = y[i] + h * (19372.0 / 6561.0 * k1[i] - 25360.0 / 2187.0 * k2[i]
                                  + 64448.0 / 6561.0 * k3[i] - 212.0 / 729.0 * k4[i])
        rhs_into(ytmp, eta + 8.0 / 9.0 * h, chi, theta_minus_rate, kind, params, xs, ys, k5)

        for i in range(4):
            ytmp[i] = y[i] + h * (9017.0 / 3168.0 * k1[i] - 355.0 / 33.0 * k2[i]
                                  + 46732.0 / 5247.0 * k3[i] + 49.0 / 176.0 * k4[i]
                                  - 5103.0 / 18656.0 * k5[i])
        rhs_into(ytmp, eta + h, chi, theta_minus_rate, kind, params, xs, ys, k6)

        for i in range(4):
            ynew[i] = y[i] + h * (35.0 / 384.0 * k1[i] + 500.0 / 1113.0 * k3[i]
                                  + 125.0 / 192.0 * k4[i] - 2187.0 / 6784.0 * k5[i]
                                  + 11.0 / 84.0 * k6[i])
        rhs_into(ynew, eta + h, chi, theta_minus_rate, kind, params, xs, ys, k7)

        # embedded 4th-order error estimate
        err = 0.0
        for i in range(4):
            e = h * (71.0 / 57600.0 * k1[i] - 71.0 / 16695.0 * k3[i]
                     + 71.0 / 1920.0 * k4[i] - 17253.0 / 339200.0 * k5[i]
                     + 22.0 / 525.0 * k6[i] - 1.0 / 40.0 * k7[i])
            sc = atol + rtol * max(abs(y[i]), abs(ynew[i]))
            err += (e / sc) ** 2
        err = np.sqrt(err / 4.0)

        if err <= 1.0:
            eta += h
            for i in range(4):
                y[i] = ynew[i]
                k1[i] = k7[i]
            if not (np.isfinite(y[0]) and np.isfinite(y[1])
                    and np.isfinite(y[2]) and np.isfinite(y[3])):
                return etas, states, n, STATUS_NONFINITE
            etas[n] = eta
            states[n, :] = y
            n += 1
            if n > max_steps:
                return etas, states, n, STATUS_MAX_STEPS

        if err == 0.0:
            fac = 5.0
        else:
            fac = 0.9 * err ** (-0.2)
            if fac < 0.2:
                fac = 0.2
            elif fac > 5.0:
                fac = 5.0
        h *= fac

    return etas, states, n, STATUS_OK


@njit(cache=True)
def integrate_rk4(chi, theta_minus_rate, kind, params, xs, ys,
                  eta_end, step, stride):
    """Fixed-step classical RK4 from eta=0, zero initial state.

    Records every ``stride``-th step (and the final one). Returns
    (etas, states, n, status).
    """
    n_steps = int(np.ceil(eta_end / step))
    h = eta_end / n_steps
    n_rec = n_steps // stride + 2
    etas = np.empty(n_rec)
    states = np.empty((n_rec, 4))
    y = np.zeros(4)
    etas[0] = 0.0
    states[0, :] = 0.0
    n = 1

    k1 = np.empty(4)
    k2 = np.empty(4)
    k3 = np.empty(4)
    k4 = np.empty(4)
    ytmp = np.empty(4)

    for m in range(n_steps):
        eta = m * h
        rhs_into(y, eta, chi, theta_minus_rate, kind, params, xs, ys, k1)
        for i in range(4):
            ytmp[i] = y[i] + 0.5 * h * k1[i]
        rhs_into(ytmp, eta + 0.5 * h, chi, theta_minus_rate, kind, params, xs, ys, k2)
        for i in range(4):
            ytmp[i] = y[i] + 0.5 * h * k2[i]
        rhs_into(ytmp, eta + 0.5 * h, chi, theta_minus_rate, kind, params, xs, ys, k3)
        for i in range(4):
            ytmp[i] = y[i] + h * k3[i]
        rhs_into(ytmp, eta + h, chi, theta_minus_rate, kind, params, xs, ys, k4)
        for i in range(4):
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
        if not (np.isfinite(y[2]) and np.isfinite(y[3])):
            return etas, states, n, STATUS_NONFINITE
        if (m + 1) % stride == 0 or m == n_steps - 1:
            etas[n] = (m + 1) * h
            states[n, :] = y
            n += 1

    return etas, states, n, STATUS_OK
