"""Numerical integration of the decoupling-function ODE system.

d/deta of (Theta_+, Theta_-, F_+, F_-):
    Theta_+' = 2 chi cosh(F_-) / cosh(F_+)
    Theta_-' = (1 - eps^2) / eps          (only defined when eps is known)
    F_+'     = -chi sinh(F_-)
    F_-'     = h(eta) + chi cosh(F_-) tanh(F_+)
with zero initial conditions. chi may be given directly as a free positive
parameter (no eps), in which case Theta_- is omitted from the trajectory.
"""

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .pulses import CouplingPulse, pulse_kernel_args, pulse_value


class DivergenceError(RuntimeError):
    """Integration produced a non-finite state."""

    def __init__(self, message: str, last_eta: float):
        super().__init__(message)
        self.last_eta = last_eta


@dataclass(frozen=True)
class IntegratorConfig:
    method: str = "rk45"          # "rk45" (adaptive) or "rk4" (fixed step)
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_step: float = 0.1
    step: float = 1e-3            # rk4 only
    sample_stride: int = 1        # rk4 only
    max_steps: int = 2_000_000

    def __post_init__(self):
        if self.method not in ("rk45", "rk4"):
            raise ValueError(f"unknown method {self.method!r}")
        if min(self.rel_tol, self.abs_tol, self.max_step, self.step) <= 0:
            raise ValueError("tolerances and steps must be positive")
        if self.sample_stride < 1:
            raise ValueError("sample_stride must be >= 1")


@dataclass(frozen=True)
class Trajectory:
    """Samples of the decoupling functions along dimensionless time eta."""

    eta: np.ndarray
    theta_plus: np.ndarray
    f_plus: np.ndarray
    f_minus: np.ndarray
    chi: float
    pulse: CouplingPulse
    epsilon: float | None = None
    theta_minus: np.ndarray | None = field(default=None)

    def __len__(self) -> int:
        return self.eta.size

    def h(self) -> np.ndarray:
        return pulse_value(self.pulse, self.eta)

    def interp(self, eta) -> tuple[np.ndarray, np.ndarray]:
        """(F_+, F_-) at requested eta via linear interpolation."""
        eta = np.asarray(eta, dtype=float)
        return (np.interp(eta, self.eta, self.f_plus),
                np.interp(eta, self.eta, self.f_minus))

    def tail(self, eta_from: float) -> "Trajectory":
        """Sub-trajectory with eta >= eta_from."""
        m = self.eta >= eta_from
        return Trajectory(eta=self.eta[m], theta_plus=self.theta_plus[m],
                          f_plus=self.f_plus[m], f_minus=self.f_minus[m],
                          chi=self.chi, pulse=self.pulse, epsilon=self.epsilon,
                          theta_minus=None if self.theta_minus is None
                          else self.theta_minus[m])


def rhs(state, eta: float, pulse: CouplingPulse, chi: float,
        epsilon: float | None = None) -> np.ndarray:
    """Right-hand side at one point; Theta_- slot is NaN when eps is unknown."""
    y = np.asarray(state, dtype=float)
    kind, params, xs, ys = pulse_kernel_args(pulse)
    out = np.empty(4)
    rate = (1.0 - epsilon ** 2) / epsilon if epsilon is not None else 0.0
    kernels.rhs_into(y, eta, chi, rate, kind, params, xs, ys, out)
    if epsilon is None:
        out[1] = np.nan
    return out


def integrate(pulse: CouplingPulse, chi: float, eta_end: float,
              config: IntegratorConfig | None = None,
              epsilon: float | None = None) -> Trajectory:
    """Integrate the system from eta = 0 (zero state) to eta_end."""
    if eta_end <= 0:
        raise ValueError("eta_end must be positive")
    if chi <= 0:
        raise ValueError("chi must be positive")
    cfg = config or IntegratorConfig()
    kind, params, xs, ys = pulse_kernel_args(pulse)
    rate = (1.0 - epsilon ** 2) / epsilon if epsilon is not None else 0.0

    if cfg.method == "rk45":
        etas, states, n, status = kernels.integrate_dopri5(
            chi, rate, kind, params, xs, ys, eta_end,
            cfg.rel_tol, cfg.abs_tol, cfg.max_step, cfg.max_steps)
    else:
        etas, states, n, status = kernels.integrate_rk4(
            chi, rate, kind, params, xs, ys, eta_end, cfg.step, cfg.sample_stride)

    if status == kernels.STATUS_NONFINITE:
        raise DivergenceError(
            f"non-finite state at eta ~ {etas[n - 1]:.6g}", float(etas[n - 1]))
    if status in (kernels.STATUS_MAX_STEPS, kernels.STATUS_STEP_UNDERFLOW):
        raise RuntimeError(f"integrator failed with status {status} "
                           f"at eta ~ {etas[n - 1]:.6g}")

    etas = etas[:n].copy()
    states = states[:n].copy()
    return Trajectory(eta=etas, theta_plus=states[:, 0],
                      f_plus=states[:, 2], f_minus=states[:, 3],
                      chi=chi, pulse=pulse, epsilon=epsilon,
                      theta_minus=states[:, 1] if epsilon is not None else None)


def theta_minus_closed(epsilon: float, eta) -> np.ndarray:
    """Theta_- = (1 - eps^2)/eps * eta (exact)."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    return (1.0 - epsilon ** 2) / epsilon * np.asarray(eta, dtype=float)


def _central_derivative(eta: np.ndarray, vals: np.ndarray) -> np.ndarray:
    """Three-point derivative at interior samples of a nonuniform grid."""
    x0, x1, x2 = eta[:-2], eta[1:-1], eta[2:]
    f0, f1, f2 = vals[:-2], vals[1:-1], vals[2:]
    return (f0 * (x1 - x2) / ((x0 - x1) * (x0 - x2))
            + f1 * (2.0 * x1 - x0 - x2) / ((x1 - x0) * (x1 - x2))
            + f2 * (x1 - x0) / ((x2 - x0) * (x2 - x1)))


def residual(traj: Trajectory) -> float:
    """Max deviation between finite-difference derivatives and the RHS.

    Second-order finite-difference estimator, so the value is O(step^2)
    even for an exact trajectory; useful as a relative quality metric.
    """
    if len(traj) < 3:
        raise ValueError("trajectory needs at least 3 samples")
    kind, params, xs, ys = pulse_kernel_args(traj.pulse)
    eta_mid = traj.eta[1:-1]
    rate = ((1.0 - traj.epsilon ** 2) / traj.epsilon
            if traj.epsilon is not None else 0.0)

    columns = [traj.theta_plus, traj.f_plus, traj.f_minus]
    rows = [0, 2, 3]
    if traj.theta_minus is not None:
        columns.append(traj.theta_minus)
        rows.append(1)

    rhs_vals = np.empty((eta_mid.size, 4))
    y = np.empty(4)
    out = np.empty(4)
    for i, eta in enumerate(eta_mid):
        y[0] = traj.theta_plus[i + 1]
        y[1] = traj.theta_minus[i + 1] if traj.theta_minus is not None else 0.0
        y[2] = traj.f_plus[i + 1]
        y[3] = traj.f_minus[i + 1]
        kernels.rhs_into(y, eta, traj.chi, rate, kind, params, xs, ys, out)
        rhs_vals[i] = out

    worst = 0.0
    for col, row in zip(columns, rows):
        d = _central_derivative(traj.eta, col)
        worst = max(worst, float(np.max(np.abs(d - rhs_vals[:, row]))))
    return worst
