"""Time-dependent two-mode squeezing dynamics for Gaussian states.

Numerical integration of the decoupling-function ODE system, exact and
perturbative closed-form solutions, and cross-validated observables
(particle numbers, entanglement negativity, energy change).
"""

from .analytic import (OscillatorySolution, closed_form_F, extract_A_phi,
                       extract_from_trajectory, linearized_solve,
                       oscillation_invariant, perturbative_F,
                       perturbative_F_grid, small_amplitude_F,
                       weak_coupling_A_phi)
from .core_symplectic import (InitialStateSpec, evolution_matrix, evolve_state,
                              initial_state, is_physical, is_symplectic,
                              partial_transpose, purity, symplectic_eigenvalues,
                              symplectic_form, thermal_nu, two_mode_squeezer)
from .hamiltonian import (ModePair, StabilityReport, chi_from_epsilon,
                          energy_input_bound, epsilon_from_chi,
                          hamiltonian_eigenvalues, hamiltonian_matrix,
                          stability_check)
from .observables import (NuCombination, N_plusminus_closed, delta_E,
                          delta_E_closed, delta_E_weak_drive, log_negativity,
                          log_negativity_closed, nu_tilde_minus,
                          nu_tilde_minus_closed, number_expectation)
from .ode import (DivergenceError, IntegratorConfig, Trajectory, integrate,
                  residual, rhs, theta_minus_closed)
from .pipeline import ObservableSeries, observable_series
from .pulses import (GaussianQuadraticPulse, NullPulse, RaisedCosinePulse,
                     TabulatedPulse, pulse_switch_off, pulse_value)

__version__ = "0.1.0"
