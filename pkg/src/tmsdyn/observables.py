"""Physical outputs: particle numbers, entanglement negativity, energy change.

Each quantity exists on two cross-validated routes: the matrix route
(covariance matrix evolved by the composed symplectic matrix) and the
closed-form route in terms of the oscillation constants (A, phi).
"""

from dataclasses import dataclass

import numpy as np

from .analytic import OscillatorySolution
from .core_symplectic import is_physical, partial_transpose, symplectic_eigenvalues
from .hamiltonian import ModePair


@dataclass(frozen=True)
class NuCombination:
    """Half-sum and half-difference of the initial symplectic eigenvalues."""

    nu_plus: float
    nu_minus: float

    def __post_init__(self):
        if self.nu_plus < 1.0 - 1e-9:
            raise ValueError("nu_plus must be >= 1")
        if abs(self.nu_minus) >= self.nu_plus + 1e-12:
            raise ValueError("|nu_minus| must not exceed nu_plus")

    @classmethod
    def from_spectrum(cls, nu_D: float, nu_d: float) -> "NuCombination":
        return cls(nu_plus=0.5 * (nu_D + nu_d), nu_minus=0.5 * (nu_D - nu_d))


def number_expectation(sigma: np.ndarray, check: bool = True) -> tuple[float, float]:
    """(N_D, N_d) from the covariance diagonal: N = (sigma_nn - 1) / 2."""
    if check and not is_physical(sigma):
        raise ValueError("covariance matrix is unphysical")
    n_D, n_d = 0.5 * (sigma[0, 0] - 1.0), 0.5 * (sigma[1, 1] - 1.0)
    if max(abs(np.imag(n_D)), abs(np.imag(n_d))) > 1e-10:
        raise ValueError("covariance diagonal has a non-negligible imaginary part")
    return float(np.real(n_D)), float(np.real(n_d))


def _closed_Ch(sol: OscillatorySolution, eta, r: float):
    A = sol.amplitude
    c = np.cos(sol.chi * np.asarray(eta, dtype=float) + sol.phase)
    return (np.sqrt(1.0 + A * A) * np.cosh(2.0 * r)
            - A * np.sinh(2.0 * r) * c)


def N_plusminus_closed(sol: OscillatorySolution, eta, r: float,
                       nus: NuCombination):
    """Closed-form (N_+, N_-) after switch-off; N_- is time independent."""
    n_plus = nus.nu_plus * _closed_Ch(sol, eta, r) - 1.0
    return n_plus, nus.nu_minus * np.ones_like(np.asarray(n_plus))


def nu_tilde_minus_closed(f_plus, f_minus, r: float, nus: NuCombination):
    """Smallest symplectic eigenvalue of the partial transpose, closed form."""
    ch = np.cosh(np.asarray(f_plus, dtype=float)) * np.cosh(np.asarray(f_minus, dtype=float) + 2.0 * r)
    ratio2 = (nus.nu_minus / nus.nu_plus) ** 2
    # ch - sqrt(ch^2 - 1 + ratio2) cancels for large ch; use the conjugate form
    return nus.nu_plus * (1.0 - ratio2) / (ch + np.sqrt(ch * ch - 1.0 + ratio2))


def nu_tilde_minus(sigma: np.ndarray) -> float:
    """Smallest symplectic eigenvalue of the partial transpose, matrix route."""
    lo, _ = symplectic_eigenvalues(partial_transpose(sigma))
    return lo


def log_negativity(sigma: np.ndarray) -> float:
    """max{0, (1 - nu~_-)/nu~_-} with numerically computed nu~_-."""
    nt = nu_tilde_minus(sigma)
    return max(0.0, (1.0 - nt) / nt)


def _negativity_from_Ch(ch, r_unused, nus: NuCombination):
    ratio2 = (nus.nu_minus / nus.nu_plus) ** 2
    threshold = (1.0 + nus.nu_plus ** 2 - nus.nu_minus ** 2) / (2.0 * nus.nu_plus)
    val = (nus.nu_plus / (nus.nu_plus ** 2 - nus.nu_minus ** 2)
           * (ch + np.sqrt(np.maximum(ch * ch - 1.0 + ratio2, 0.0))) - 1.0)
    return np.where(ch > threshold, val, 0.0)


def log_negativity_closed(sol: OscillatorySolution, eta, r: float,
                          nus: NuCombination):
    """Closed-form negativity after switch-off; 0 below the PPT threshold."""
    return _negativity_from_Ch(_closed_Ch(sol, eta, r), r, nus)


def delta_E(sigma_i: np.ndarray, sigma_f: np.ndarray, modes: ModePair) -> float:
    """Energy change (units hbar = 1) from the covariance diagonals."""
    return float(np.real(
        modes.omega_D * (sigma_f[0, 0] - sigma_i[0, 0])
        + modes.omega_d * (sigma_f[1, 1] - sigma_i[1, 1])) / 2.0)


def delta_E_closed(sol: OscillatorySolution, eta, r: float,
                   nus: NuCombination, modes: ModePair):
    """Closed-form energy change after switch-off.

    DeltaE = (omega_D + omega_d)/2 * DeltaN_+ since the number difference is
    conserved; equals
    A nu_+ (omega_D + omega_d)/2 cosh(2r) [A/(sqrt(1+A^2)+1)
                                           - tanh(2r) cos(chi eta + phi)].
    """
    A = sol.amplitude
    c = np.cos(sol.chi * np.asarray(eta, dtype=float) + sol.phase)
    return (0.5 * A * nus.nu_plus * (modes.omega_D + modes.omega_d)
            * np.cosh(2.0 * r)
            * (A / (np.sqrt(1.0 + A * A) + 1.0) - np.tanh(2.0 * r) * c))


def delta_E_weak_drive(double_cosine_integral: float, modes: ModePair) -> float:
    """Small-input estimate (omega_D + omega_d) * A^2, A^2 given as the
    double cosine quadrature of the drive."""
    return (modes.omega_D + modes.omega_d) * double_cosine_integral
