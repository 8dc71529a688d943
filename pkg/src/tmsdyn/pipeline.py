"""Matrix-route observable series along a trajectory, shared by the CLI
and the validation suite."""

from dataclasses import dataclass

import numpy as np

from .core_symplectic import (InitialStateSpec, evolution_matrix, evolve_state,
                              initial_state)
from .hamiltonian import ModePair
from .observables import NuCombination, nu_tilde_minus, number_expectation
from .ode import Trajectory


@dataclass(frozen=True)
class ObservableSeries:
    """Per-sample observables computed on the covariance-matrix route."""

    eta: np.ndarray
    N_D: np.ndarray
    N_d: np.ndarray
    nu_tilde: np.ndarray
    negativity: np.ndarray      # max{0, (1 - nu~)/nu~}
    negativity_log: np.ndarray  # conventional max{0, -ln nu~}, auxiliary
    delta_E: np.ndarray


def state_matrices(traj: Trajectory, spec: InitialStateSpec) -> list[np.ndarray]:
    """Covariance matrix at every trajectory sample."""
    sigma_i = initial_state(spec)
    out = []
    for i in range(len(traj)):
        tm = traj.theta_minus[i] if traj.theta_minus is not None else 0.0
        S = evolution_matrix(traj.f_plus[i], traj.f_minus[i],
                             traj.theta_plus[i], tm)
        out.append(evolve_state(sigma_i, S))
    return out


def observable_series(traj: Trajectory, spec: InitialStateSpec,
                      modes: ModePair | None = None) -> ObservableSeries:
    """Evolve the initial state along the trajectory and read out observables.

    Energies use the mode frequencies when given, else omega_D = omega_d = 1.
    """
    if modes is None:
        modes = ModePair(omega_D=1.0, omega_d=1.0)
    n = len(traj)
    N_D = np.empty(n)
    N_d = np.empty(n)
    nu_t = np.empty(n)
    for i, sigma in enumerate(state_matrices(traj, spec)):
        N_D[i], N_d[i] = number_expectation(sigma, check=False)
        nu_t[i] = nu_tilde_minus(sigma)
    neg = np.maximum(0.0, (1.0 - nu_t) / nu_t)
    neg_log = np.maximum(0.0, -np.log(nu_t))
    dE = (modes.omega_D * (N_D - N_D[0]) + modes.omega_d * (N_d - N_d[0]))
    return ObservableSeries(eta=traj.eta, N_D=N_D, N_d=N_d, nu_tilde=nu_t,
                            negativity=neg, negativity_log=neg_log, delta_E=dE)


def nus_of(spec: InitialStateSpec) -> NuCombination:
    return NuCombination.from_spectrum(spec.nu_D, spec.nu_d)
