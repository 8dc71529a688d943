"""Closed-form and perturbative solutions for the decoupling functions.

After the drive switches off the system follows a one-parameter family of
periodic orbits with amplitude A and phase phi (period 2 pi / chi):

    sinh F_+ = A sin(chi eta + phi)
    sinh F_- = -A cos(chi eta + phi) / cosh F_+

The pair (A, phi) can be extracted algebraically from any post-switch-off
sample, or predicted from the drive by quadrature in the weak regime.
"""

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad, quad_vec
from scipy.linalg import cosm, sinm, sqrtm

from .pulses import CouplingPulse, pulse_switch_off, pulse_value


def wrap_phase(phi: float) -> float:
    """Wrap to (-pi, pi]."""
    w = np.remainder(phi + np.pi, 2.0 * np.pi) - np.pi
    if w == -np.pi:
        w = np.pi
    return float(w)


@dataclass(frozen=True)
class OscillatorySolution:
    """Post-switch-off oscillation: amplitude A >= 0, phase in (-pi, pi]."""

    amplitude: float
    phase: float
    chi: float

    def __post_init__(self):
        if self.amplitude < 0:
            raise ValueError("amplitude must be nonnegative")
        if self.chi <= 0:
            raise ValueError("chi must be positive")


def closed_form_F(sol: OscillatorySolution, eta):
    """Exact (F_+, F_-) of the free oscillation at eta (scalar or array)."""
    eta = np.asarray(eta, dtype=float)
    A = sol.amplitude
    arg = sol.chi * eta + sol.phase
    s, c = np.sin(arg), np.cos(arg)
    As = A * s
    f_plus = np.arcsinh(As)
    log1p_A2s2 = np.log1p(As * As)
    root = np.sqrt(1.0 + A * A)
    # F_- = log(root - A c) - 0.5 log(1 + A^2 sin^2). For c > 0 and large A
    # the difference root - A c cancels catastrophically; use the conjugate
    # identity root - A c = (1 + A^2 sin^2) / (root + A c) on that branch.
    f_minus = np.where(c >= 0.0,
                       0.5 * log1p_A2s2 - np.log(root + A * np.abs(c)),
                       np.log(root + A * np.abs(c)) - 0.5 * log1p_A2s2)
    return f_plus, f_minus


def small_amplitude_F(sol: OscillatorySolution, eta):
    """Leading small-A approximation: (A sin, -A cos) of chi*eta + phi."""
    eta = np.asarray(eta, dtype=float)
    arg = sol.chi * eta + sol.phase
    return sol.amplitude * np.sin(arg), -sol.amplitude * np.cos(arg)


def _drive_quadratures(pulse: CouplingPulse, chi: float, eta: float,
                       eta0_hint: float | None = None) -> tuple[float, float]:
    """(integral of sin(chi t) h(t), integral of cos(chi t) h(t)) over [0, eta]."""
    if eta == 0.0:
        return 0.0, 0.0
    s, _ = quad(lambda t: np.sin(chi * t) * pulse_value(pulse, t), 0.0, eta,
                limit=800, epsabs=1e-13, epsrel=1e-12)
    c, _ = quad(lambda t: np.cos(chi * t) * pulse_value(pulse, t), 0.0, eta,
                limit=800, epsabs=1e-13, epsrel=1e-12)
    return float(s), float(c)


def perturbative_F(pulse: CouplingPulse, chi: float, eta: float) -> tuple[float, float]:
    """Weak-drive quadrature solution at a single eta."""
    s, c = _drive_quadratures(pulse, chi, eta)
    cs, sn = np.cos(chi * eta), np.sin(chi * eta)
    return float(cs * s - sn * c), float(cs * c + sn * s)


def perturbative_F_grid(pulse: CouplingPulse, chi: float, etas: np.ndarray,
                        resolution: float = 1e-3) -> tuple[np.ndarray, np.ndarray]:
    """Weak-drive solution sampled on a grid, via cumulative quadrature."""
    etas = np.asarray(etas, dtype=float)
    eta_max = float(etas[-1])
    n = max(int(np.ceil(eta_max / resolution)), 8)
    fine = np.linspace(0.0, eta_max, n + 1)
    h = pulse_value(pulse, fine)
    dt = fine[1] - fine[0]
    s_int = np.concatenate(([0.0], np.cumsum(
        0.5 * dt * (np.sin(chi * fine[:-1]) * h[:-1] + np.sin(chi * fine[1:]) * h[1:]))))
    c_int = np.concatenate(([0.0], np.cumsum(
        0.5 * dt * (np.cos(chi * fine[:-1]) * h[:-1] + np.cos(chi * fine[1:]) * h[1:]))))
    s = np.interp(etas, fine, s_int)
    c = np.interp(etas, fine, c_int)
    cs, sn = np.cos(chi * etas), np.sin(chi * etas)
    return cs * s - sn * c, cs * c + sn * s


def weak_coupling_A_phi(pulse: CouplingPulse, chi: float) -> OscillatorySolution:
    """Predict (A, phi) from the drive by quadrature (weak-coupling regime).

    Matching F_+ = S cos(chi eta) - C sin(chi eta) to A sin(chi eta + phi)
    gives A sin(phi) = S and A cos(phi) = -C, with S, C the sine/cosine
    quadratures of h up to switch-off; phi = 0 by convention when A = 0.
    """
    eta_f = pulse_switch_off(pulse)
    s, c = _drive_quadratures(pulse, chi, eta_f)
    A = float(np.hypot(s, c))
    phi = wrap_phase(np.arctan2(s, -c)) if A > 0.0 else 0.0
    return OscillatorySolution(amplitude=A, phase=phi, chi=chi)


def oscillation_invariant(f_plus, f_minus):
    """sinh^2 F_+ + sinh^2 F_- cosh^2 F_+; equals A^2 on any free orbit."""
    sp = np.sinh(np.asarray(f_plus, dtype=float))
    q = np.sinh(np.asarray(f_minus, dtype=float)) * np.cosh(np.asarray(f_plus, dtype=float))
    return sp * sp + q * q


def extract_A_phi(f_plus: float, f_minus: float, xi: float,
                  chi: float = 1.0) -> OscillatorySolution:
    """Invert one post-switch-off sample (F_+, F_-) at xi = chi*eta into (A, phi)."""
    sp = np.sinh(f_plus)
    q = -np.sinh(f_minus) * np.cosh(f_plus)  # equals A cos(xi + phi)
    A = float(np.hypot(sp, q))
    if A == 0.0:
        return OscillatorySolution(amplitude=0.0, phase=0.0, chi=chi)
    phi = wrap_phase(np.arctan2(sp, q) - xi)
    return OscillatorySolution(amplitude=A, phase=phi, chi=chi)


def extract_from_trajectory(traj, eta_from: float | None = None) -> OscillatorySolution:
    """Extract (A, phi) from a numerically integrated tail.

    Uses the tail sample with the largest oscillation invariant, which is
    maximally distant from the degenerate zero crossing.
    """
    if eta_from is None:
        eta_from = pulse_switch_off(traj.pulse)
    tail = traj.tail(eta_from)
    if len(tail) == 0:
        raise ValueError("trajectory has no samples beyond the switch-off time")
    inv = oscillation_invariant(tail.f_plus, tail.f_minus)
    i = int(np.argmax(inv))
    return extract_A_phi(tail.f_plus[i], tail.f_minus[i],
                         traj.chi * tail.eta[i], chi=traj.chi)


def linearized_solve(M: np.ndarray, drive, eta: float,
                     drive_dot=None, quad_tol: float = 1e-11) -> np.ndarray:
    """Formal solution of F' = M F + H(eta), F(0) = 0, for constant M.

    Assumes oscillatory coupling (the eigenvalues of M are purely imaginary,
    as for the rotation-like generators of the decoupling system), so that
    W = sqrt(-M^2) is a real frequency matrix. Then

        F(eta) = sin(W eta) I_c - cos(W eta) I_s,

    with I_c, I_s the cos(W t)/sin(W t) quadratures of
    g = W^{-1} (M H + H'). Requires invertible M and H(0) = 0.
    """
    M = np.asarray(M, dtype=float)
    if np.linalg.cond(M) > 1e12:
        raise np.linalg.LinAlgError("M is singular or near-singular")
    W2 = -M @ M
    W = np.real(sqrtm(W2))
    if np.max(np.abs(W @ W - W2)) > 1e-9 * max(1.0, np.max(np.abs(W2))):
        raise np.linalg.LinAlgError(
            "M does not have purely imaginary spectrum (no real sqrt(-M^2))")
    Winv = np.linalg.inv(W)

    if drive_dot is None:
        def drive_dot(t, _step=1e-6 * max(1.0, eta)):
            lo = max(t - _step, 0.0)
            return (np.asarray(drive(t + _step)) - np.asarray(drive(lo))) / (t + _step - lo)

    def g(t):
        return Winv @ (M @ np.asarray(drive(t), dtype=float)
                       + np.asarray(drive_dot(t), dtype=float))

    ic = quad_vec(lambda t: cosm(W * t) @ g(t), 0.0, eta,
                  epsabs=quad_tol, epsrel=quad_tol)[0]
    is_ = quad_vec(lambda t: sinm(W * t) @ g(t), 0.0, eta,
                   epsabs=quad_tol, epsrel=quad_tol)[0]
    return sinm(W * eta) @ ic - cosm(W * eta) @ is_
