"""Covariance-matrix formalism for two bosonic modes.

All matrices are 4x4 complex arrays in the operator ordering
(D, d, D^dag, d^dag). States are covariance matrices sigma with
sigma_11 = 2 N_D + 1 on the diagonal; linear dynamics is a symplectic
matrix S acting by sigma -> S^dag sigma S.
"""

from dataclasses import dataclass

import numpy as np

PHYSICALITY_TOL = 1e-9


def symplectic_form() -> np.ndarray:
    """Symplectic form Omega, fixed by i*Omega = diag(1, 1, -1, -1)."""
    return np.diag([-1j, -1j, 1j, 1j])


_OMEGA = np.diag([-1.0j, -1.0j, 1.0j, 1.0j])
_IOMEGA = np.diag([1.0, 1.0, -1.0, -1.0])


def is_symplectic(S: np.ndarray, tol: float = 1e-10) -> bool:
    """True iff S preserves the symplectic form: max|S^dag Omega S - Omega| <= tol."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    defect = S.conj().T @ _OMEGA @ S - _OMEGA
    return float(np.max(np.abs(defect))) <= tol


def symplectic_defect(S: np.ndarray) -> float:
    """Max-abs entry of S^dag Omega S - Omega."""
    return float(np.max(np.abs(S.conj().T @ _OMEGA @ S - _OMEGA)))


def thermal_nu(omega: float, temperature: float) -> float:
    """Symplectic eigenvalue of a thermal mode: coth(2*omega/T), hbar = k_B = 1.

    Returns exactly 1 at zero temperature.
    """
    if omega <= 0:
        raise ValueError(f"mode frequency must be positive, got {omega}")
    if temperature < 0:
        raise ValueError(f"temperature must be nonnegative, got {temperature}")
    if temperature == 0:
        return 1.0
    return 1.0 / np.tanh(2.0 * omega / temperature)


def two_mode_squeezer(r: float) -> np.ndarray:
    """Symplectic matrix of the two-mode squeezing operation with parameter r."""
    if not np.isfinite(r):
        raise ValueError("squeezing parameter must be finite")
    ch, sh = np.cosh(r), np.sinh(r)
    S = np.zeros((4, 4), dtype=complex)
    S[0, 0] = S[1, 1] = S[2, 2] = S[3, 3] = ch
    S[0, 3] = S[1, 2] = S[2, 1] = S[3, 0] = sh
    return S


@dataclass(frozen=True)
class InitialStateSpec:
    """Two-mode squeezed thermal state: squeezing r on top of diag(nu_D, nu_d)."""

    r: float
    nu_D: float = 1.0
    nu_d: float = 1.0

    def __post_init__(self):
        if not np.isfinite(self.r):
            raise ValueError("r must be finite")
        if self.nu_D < 1.0 - PHYSICALITY_TOL or self.nu_d < 1.0 - PHYSICALITY_TOL:
            raise ValueError("symplectic eigenvalues must be >= 1")

    @classmethod
    def from_temperature(cls, r: float, omega_D: float, omega_d: float,
                         temperature: float) -> "InitialStateSpec":
        return cls(r=r, nu_D=thermal_nu(omega_D, temperature),
                   nu_d=thermal_nu(omega_d, temperature))


def initial_state(spec: InitialStateSpec) -> np.ndarray:
    """Covariance matrix S_TMS(r)^dag diag(nu_D, nu_d, nu_D, nu_d) S_TMS(r)."""
    S = two_mode_squeezer(spec.r)
    nu = np.diag([spec.nu_D, spec.nu_d, spec.nu_D, spec.nu_d]).astype(complex)
    return S.conj().T @ nu @ S


def evolve_state(sigma: np.ndarray, S: np.ndarray) -> np.ndarray:
    """Heisenberg evolution sigma -> S^dag sigma S."""
    return S.conj().T @ sigma @ S


def partial_transpose(sigma: np.ndarray) -> np.ndarray:
    """Partial transposition of the second mode: P sigma P, P swapping rows/cols 2 and 4."""
    perm = [0, 3, 2, 1]
    return sigma[np.ix_(perm, perm)]


def symplectic_eigenvalues(sigma: np.ndarray, herm_tol: float = 1e-8) -> tuple[float, float]:
    """The two symplectic eigenvalues of sigma, sorted ascending.

    Computed as the absolute values of the (paired) eigenvalues of
    i*Omega*sigma. Each pair is averaged to suppress roundoff.
    """
    if np.max(np.abs(sigma - sigma.conj().T)) > herm_tol:
        raise ValueError("covariance matrix must be Hermitian")
    vals = np.sort(np.abs(np.linalg.eigvals(_IOMEGA @ sigma)))
    return (0.5 * (vals[0] + vals[1]), 0.5 * (vals[2] + vals[3]))


def is_physical(sigma: np.ndarray, tol: float = PHYSICALITY_TOL) -> bool:
    """True iff both symplectic eigenvalues are >= 1 - tol."""
    nu_lo, _ = symplectic_eigenvalues(sigma)
    return nu_lo >= 1.0 - tol


def purity(sigma: np.ndarray) -> float:
    """det(sigma); equals (nu_1 * nu_2)^2 and is 1 exactly for pure states."""
    return float(np.real(np.linalg.det(sigma)))


def evolution_matrix(f_plus: float, f_minus: float,
                     theta_plus: float = 0.0, theta_minus: float = 0.0) -> np.ndarray:
    """Composed symplectic evolution matrix in terms of the decoupling functions.

    Product of the single-mode phase and joint squeezing factors; only the
    (1,1),(2,2),(3,3),(4,4) and (1,4),(2,3),(3,2),(4,1) entries are nonzero.
    """
    f_D = 0.5 * (theta_plus + theta_minus)
    f_d = 0.5 * (theta_plus - theta_minus)
    chm, shm = np.cosh(0.5 * f_minus), np.sinh(0.5 * f_minus)
    chp, shp = np.cosh(0.5 * f_plus), np.sinh(0.5 * f_plus)
    a = chm * chp + 1j * shm * shp
    b = shm * chp - 1j * chm * shp
    S = np.zeros((4, 4), dtype=complex)
    S[0, 0] = np.exp(-0.5j * f_D) * a
    S[2, 2] = np.conj(S[0, 0])
    S[1, 1] = np.exp(-0.5j * f_d) * a
    S[3, 3] = np.conj(S[1, 1])
    S[0, 3] = np.exp(0.5j * f_d) * b
    S[2, 1] = np.conj(S[0, 3])
    S[1, 2] = np.exp(0.5j * f_D) * b
    S[3, 0] = np.conj(S[1, 2])
    return S
