"""Dimensionless Hamiltonian of the driven mode pair.

H = (1/2) diag(1/eps, eps, 1/eps, eps) plus the i*h two-mode squeezing
anti-blocks. chi = (1 + eps^2) / (2 eps) sets the oscillation scale; the
spectrum stays nonnegative while |h| <= 1.
"""

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from .pulses import CouplingPulse, NullPulse, pulse_max, pulse_switch_off, pulse_value


def chi_from_epsilon(epsilon: float) -> float:
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    return (1.0 + epsilon ** 2) / (2.0 * epsilon)


def epsilon_from_chi(chi: float, branch: str = "lower") -> float:
    """Invert chi = (1 + eps^2)/(2 eps); branch 'lower' gives eps <= 1."""
    if chi < 1.0:
        raise ValueError("no real epsilon exists for chi < 1")
    root = np.sqrt(chi ** 2 - 1.0)
    return chi - root if branch == "lower" else chi + root


@dataclass(frozen=True)
class ModePair:
    """Two mode frequencies and the derived dimensionless parameters."""

    omega_D: float
    omega_d: float

    def __post_init__(self):
        if self.omega_D <= 0 or self.omega_d <= 0:
            raise ValueError("mode frequencies must be positive")

    @property
    def epsilon(self) -> float:
        return np.sqrt(self.omega_d / self.omega_D)

    @property
    def chi(self) -> float:
        return chi_from_epsilon(self.epsilon)

    @property
    def critical_coupling(self) -> float:
        return 0.5 * np.sqrt(self.omega_D * self.omega_d)


def hamiltonian_matrix(epsilon: float, h: float) -> np.ndarray:
    """4x4 Hermitian matrix of the dimensionless Hamiltonian at coupling h."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    H = np.zeros((4, 4), dtype=complex)
    H[0, 0] = H[2, 2] = 1.0 / epsilon
    H[1, 1] = H[3, 3] = epsilon
    H[0, 3] = H[1, 2] = 1j * h
    H[2, 1] = H[3, 0] = -1j * h
    return 0.5 * H


def hamiltonian_eigenvalues(chi: float, h: float) -> tuple[float, float]:
    """Doubly degenerate eigenvalue pair (lambda_minus, lambda_plus).

    lambda_pm = (chi -+ sqrt(chi^2 - 1 + h^2)) / 2; the gap closes exactly
    at |h| = 1.
    """
    if chi < 1.0:
        raise ValueError("chi must be >= 1")
    if abs(h) == 1.0:
        root = chi
    else:
        root = np.sqrt((chi - 1.0) * (chi + 1.0) + h * h)
    return 0.5 * (chi - root), 0.5 * (chi + root)


@dataclass(frozen=True)
class StabilityReport:
    ok: bool
    h_max: float
    eta_peak: float
    eta_first_violation: float | None = None


def stability_check(pulse: CouplingPulse) -> StabilityReport:
    """Check sup |h| <= 1; on violation report where |h| first exceeds 1."""
    h_max, eta_peak = pulse_max(pulse)
    if h_max <= 1.0:
        return StabilityReport(ok=True, h_max=h_max, eta_peak=eta_peak)
    crossing = lambda eta: abs(pulse_value(pulse, eta)) - 1.0
    lo = 0.0
    # |h| starts at 0, so a sign change exists on [0, eta_peak]
    eta_first = float(brentq(crossing, lo, eta_peak, xtol=1e-12))
    return StabilityReport(ok=False, h_max=h_max, eta_peak=eta_peak,
                           eta_first_violation=eta_first)


def energy_input_bound(pulse: CouplingPulse) -> float:
    """(integral of |h| up to switch-off)^2; the run is perturbative when << 1."""
    if isinstance(pulse, NullPulse):
        return 0.0
    eta_f = pulse_switch_off(pulse)
    if eta_f == 0.0:
        return 0.0
    val, _ = quad(lambda eta: abs(pulse_value(pulse, eta)), 0.0, eta_f,
                  limit=400, epsabs=1e-13, epsrel=1e-12)
    return float(val ** 2)
