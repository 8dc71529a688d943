"""Validation suite: every release gate as an executable check.

Each criterion function returns a CriterionResult; run_all() executes the
whole suite and is what the ``tmsdyn validate`` subcommand and the
acceptance tests call.
"""

import time
from dataclasses import dataclass

import numpy as np

from .analytic import (closed_form_F, extract_from_trajectory, linearized_solve,
                       oscillation_invariant, perturbative_F,
                       perturbative_F_grid, weak_coupling_A_phi)
from .core_symplectic import (InitialStateSpec, evolution_matrix, evolve_state,
                              initial_state, symplectic_defect,
                              symplectic_eigenvalues, partial_transpose)
from .hamiltonian import (ModePair, epsilon_from_chi, hamiltonian_eigenvalues,
                          hamiltonian_matrix)
from .observables import (NuCombination, N_plusminus_closed, delta_E,
                          delta_E_closed, log_negativity,
                          log_negativity_closed, nu_tilde_minus,
                          nu_tilde_minus_closed, number_expectation)
from .ode import IntegratorConfig, integrate
from .pipeline import observable_series
from .pulses import GaussianQuadraticPulse, NullPulse, pulse_switch_off

TIGHT = IntegratorConfig(rel_tol=1e-11, abs_tol=1e-13, max_step=0.1)


@dataclass(frozen=True)
class CriterionResult:
    name: str
    passed: bool
    measured: float
    tolerance: float
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"[{status}] {self.name}: measured {self.measured:.3e} "
                f"(tolerance {self.tolerance:.1e}, {self.seconds:.2f}s)")


def _result(name, measured, tolerance, t0) -> CriterionResult:
    return CriterionResult(name=name, passed=bool(measured <= tolerance),
                           measured=float(measured), tolerance=tolerance,
                           seconds=time.perf_counter() - t0)


def criterion_null_drive() -> CriterionResult:
    """With no drive the F functions stay at zero over eta in [0, 100]."""
    t0 = time.perf_counter()
    traj = integrate(NullPulse(), chi=1.0, eta_end=100.0)
    worst = max(np.max(np.abs(traj.f_plus)), np.max(np.abs(traj.f_minus)))
    return _result("null-drive fixed point", worst, 1e-12, t0)


def criterion_weak_drive_match() -> CriterionResult:
    """Perturbative quadrature solution tracks the ODE in the weak regime."""
    t0 = time.perf_counter()
    worst_ratio = 0.0
    for lam, tol in ((0.1, 0.01), (1.0, 0.05)):
        pulse = GaussianQuadraticPulse(lam=lam, eta0=1.0)
        traj = integrate(pulse, chi=0.1, eta_end=60.0, config=TIGHT)
        fp_pert, _ = perturbative_F_grid(pulse, 0.1, traj.eta, resolution=5e-4)
        dev = np.max(np.abs(traj.f_plus - fp_pert)) / np.max(np.abs(traj.f_plus))
        worst_ratio = max(worst_ratio, dev / tol)
    return _result("weak-regime perturbative match (scaled to per-case tol)",
                   worst_ratio, 1.0, t0)


def _tail_runs():
    # rel_tol well below the 1e-10 floor the gate stipulates: the strong-pulse
    # grid points reach amplitudes A ~ 1e5 where the 1e-7 sup-norm target
    # demands tail phase coherence of ~1e-12.
    for chi in (0.1, 1.0, 2.0):
        for lam in (0.1, 1.0):
            for eta0 in (1.0, 3.0):
                pulse = GaussianQuadraticPulse(lam=lam, eta0=eta0)
                eta_f = pulse_switch_off(pulse)
                eta_end = eta_f + 2.0 * 2.0 * np.pi / chi
                cfg = IntegratorConfig(rel_tol=1e-13, abs_tol=1e-15, max_step=0.1)
                yield integrate(pulse, chi=chi, eta_end=eta_end, config=cfg), eta_f


def criterion_closed_form_tail() -> CriterionResult:
    """(A, phi) from one post-switch-off sample reproduces the whole tail."""
    t0 = time.perf_counter()
    worst = 0.0
    for traj, eta_f in _tail_runs():
        sol = extract_from_trajectory(traj, eta_f)
        tail = traj.tail(eta_f)
        fp, fm = closed_form_F(sol, tail.eta)
        worst = max(worst, float(np.max(np.abs(fp - tail.f_plus))),
                    float(np.max(np.abs(fm - tail.f_minus))))
    return _result("closed-form tail reproduction", worst, 1e-7, t0)


def criterion_first_integral() -> CriterionResult:
    """sinh^2 F_+ + sinh^2 F_- cosh^2 F_+ is constant on every free tail.

    The spread is scaled by max(1, A^2): for amplitudes A ~ 1e5 the invariant
    is ~1e10 and an absolute 1e-8 sits below double-precision round-off, so
    the gate is applied to the scale-free deviation.
    """
    t0 = time.perf_counter()
    worst = 0.0
    cfg = IntegratorConfig(rel_tol=1e-13, abs_tol=1e-15, max_step=0.1)
    for chi in (0.1, 1.0):
        for eta0 in (1.0, 3.0):
            pulse = GaussianQuadraticPulse(lam=1.0, eta0=eta0)
            eta_f = pulse_switch_off(pulse)
            traj = integrate(pulse, chi=chi, eta_end=eta_f + 4.0 * np.pi / chi,
                             config=cfg)
            inv = oscillation_invariant(traj.tail(eta_f).f_plus,
                                        traj.tail(eta_f).f_minus)
            spread = float(np.max(inv) - np.min(inv))
            worst = max(worst, spread / max(1.0, float(np.max(inv))))
    return _result("free-motion first integral (scale-relative)", worst, 1e-8, t0)


def criterion_number_difference() -> CriterionResult:
    """N_D - N_d is conserved through the pulse window on the matrix route."""
    t0 = time.perf_counter()
    pulse = GaussianQuadraticPulse(lam=0.5, eta0=1.0)
    epsilon = 0.5
    chi = (1.0 + epsilon ** 2) / (2.0 * epsilon)
    worst = 0.0
    traj = integrate(pulse, chi=chi, eta_end=30.0, config=TIGHT, epsilon=epsilon)
    for r in (0.0, 0.5):
        for nu_D in (1.0, 1.3):
            for nu_d in (1.0, 1.3):
                series = observable_series(traj, InitialStateSpec(r, nu_D, nu_d))
                diff = series.N_D - series.N_d
                worst = max(worst, float(np.max(diff) - np.min(diff)))
    return _result("number-difference conservation", worst, 1e-8, t0)


def criterion_cross_path() -> CriterionResult:
    """Closed-form observables equal the covariance route on random draws."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(20240817)
    modes = ModePair(omega_D=1.3, omega_d=0.7)
    worst = 0.0
    for _ in range(200):
        from .analytic import OscillatorySolution
        A = rng.uniform(0.0, 2.0)
        sol = OscillatorySolution(amplitude=A,
                                  phase=rng.uniform(-np.pi, np.pi),
                                  chi=rng.uniform(0.1, 3.0))
        eta = rng.uniform(0.0, 20.0)
        r = rng.uniform(0.0, 1.0)
        nu_D, nu_d = rng.uniform(1.0, 2.0, size=2)
        nus = NuCombination.from_spectrum(nu_D, nu_d)
        spec = InitialStateSpec(r, nu_D, nu_d)

        fp, fm = closed_form_F(sol, eta)
        S = evolution_matrix(float(fp), float(fm),
                             rng.uniform(-2, 2), rng.uniform(-2, 2))
        sigma_i = initial_state(spec)
        sigma_f = evolve_state(sigma_i, S)

        n_D, n_d = number_expectation(sigma_f, check=False)
        n_plus_closed, _ = N_plusminus_closed(sol, eta, r, nus)
        worst = max(worst, abs((n_D + n_d) - float(n_plus_closed)))

        nt_matrix = nu_tilde_minus(sigma_f)
        nt_closed = float(nu_tilde_minus_closed(float(fp), float(fm), r, nus))
        worst = max(worst, abs(nt_matrix - nt_closed))

        worst = max(worst, abs(log_negativity(sigma_f)
                               - float(log_negativity_closed(sol, eta, r, nus))))

        worst = max(worst, abs(delta_E(sigma_i, sigma_f, modes)
                               - float(delta_E_closed(sol, eta, r, nus, modes))))
    return _result("closed-form vs matrix-route observables", worst, 1e-9, t0)


def criterion_squeezed_vacuum_anchors() -> CriterionResult:
    """Two-mode squeezed vacuum: N_+ = cosh 2r - 1, nu~ = e^{-2r}, N = e^{2r}-1."""
    t0 = time.perf_counter()
    worst = 0.0
    for r in (0.1, 0.5, 1.0):
        sigma = initial_state(InitialStateSpec(r, 1.0, 1.0))
        n_D, n_d = number_expectation(sigma)
        worst = max(worst, abs(n_D + n_d - (np.cosh(2 * r) - 1.0)))
        worst = max(worst, abs(nu_tilde_minus(sigma) - np.exp(-2.0 * r)))
        worst = max(worst, abs(log_negativity(sigma) - (np.exp(2.0 * r) - 1.0)))
    return _result("two-mode squeezed vacuum anchors", worst, 1e-12, t0)


def criterion_spectrum() -> CriterionResult:
    """Eigenvalue formula matches direct eigendecomposition; gap closes at h=1."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(1000):
        chi = rng.uniform(1.0, 5.0)
        h = rng.uniform(0.0, 1.0)
        lo, hi = hamiltonian_eigenvalues(chi, h)
        eps = epsilon_from_chi(chi)
        direct = np.linalg.eigvalsh(hamiltonian_matrix(eps, h))
        worst = max(worst, float(np.max(np.abs(
            direct - np.array([lo, lo, hi, hi])))))
    lo_crit, _ = hamiltonian_eigenvalues(rng.uniform(1.0, 5.0), 1.0)
    if lo_crit != 0.0:
        worst = max(worst, 1.0)
    return _result("stability spectrum", worst, 1e-10, t0)


def criterion_symplectic_integrity() -> CriterionResult:
    """Composed evolution matrices preserve the symplectic form."""
    t0 = time.perf_counter()
    pulse = GaussianQuadraticPulse(lam=1.0, eta0=3.0)
    traj = integrate(pulse, chi=0.1, eta_end=100.0, epsilon=0.2)
    worst = 0.0
    for i in range(0, len(traj), max(1, len(traj) // 200)):
        S = evolution_matrix(traj.f_plus[i], traj.f_minus[i],
                             traj.theta_plus[i], traj.theta_minus[i])
        worst = max(worst, symplectic_defect(S))
    return _result("symplectic integrity", worst, 1e-10, t0)


def criterion_linearized_solver() -> CriterionResult:
    """General linearized solver reproduces the two-mode quadrature solution."""
    t0 = time.perf_counter()
    chi = 0.1
    pulse = GaussianQuadraticPulse(lam=1.0, eta0=1.0)
    M = np.array([[0.0, -chi], [chi, 0.0]])

    def drive(t):
        return np.array([0.0, _gauss_quad_h(pulse, t)])

    def drive_dot(t):
        return np.array([0.0, _gauss_quad_hdot(pulse, t)])

    worst = 0.0
    for eta in np.linspace(2.0, 40.0, 12):
        F = linearized_solve(M, drive, float(eta), drive_dot=drive_dot)
        fp, fm = perturbative_F(pulse, chi, float(eta))
        worst = max(worst, abs(F[0] - fp), abs(F[1] - fm))
    return _result("linearized general solver", worst, 1e-8, t0)


def _gauss_quad_h(pulse: GaussianQuadraticPulse, eta: float) -> float:
    from .pulses import pulse_value
    return pulse_value(pulse, max(eta, 0.0))


def _gauss_quad_hdot(pulse: GaussianQuadraticPulse, eta: float) -> float:
    if eta <= 0.0:
        return 0.0
    lam, eta0 = pulse.lam, pulse.eta0
    return lam * (2.0 * eta - 2.0 * eta ** 3 / eta0 ** 2) * np.exp(-(eta / eta0) ** 2)


def criterion_r0_stationarity() -> CriterionResult:
    """Without initial squeezing the post-switch-off observables are constant."""
    t0 = time.perf_counter()
    pulse = GaussianQuadraticPulse(lam=1.0, eta0=1.0)
    eta_f = pulse_switch_off(pulse)
    traj = integrate(pulse, chi=0.1, eta_end=eta_f + 4.0 * np.pi / 0.1,
                     config=TIGHT)
    series = observable_series(traj.tail(eta_f), InitialStateSpec(0.0, 1.0, 1.0))
    worst = 0.0
    for vals in ((series.N_D + series.N_d), series.negativity,
                 series.delta_E - series.delta_E[0]):
        worst = max(worst, float(np.max(vals) - np.min(vals)))
    return _result("r=0 post-switch-off stationarity", worst, 1e-9, t0)


ALL_CRITERIA = [
    criterion_null_drive,
    criterion_weak_drive_match,
    criterion_closed_form_tail,
    criterion_first_integral,
    criterion_number_difference,
    criterion_cross_path,
    criterion_squeezed_vacuum_anchors,
    criterion_spectrum,
    criterion_symplectic_integrity,
    criterion_linearized_solver,
    criterion_r0_stationarity,
]


def energy_scaling_diagnostic() -> float:
    """Ratio of the small-input energy estimate to the small-A limit of the
    closed form, at r = 0 and unit frequencies (reported, not asserted)."""
    pulse = GaussianQuadraticPulse(lam=0.01, eta0=1.0)
    chi = 0.5
    modes = ModePair(1.0, 1.0)
    sol = weak_coupling_A_phi(pulse, chi)
    nus = NuCombination.from_spectrum(1.0, 1.0)
    from .observables import delta_E_weak_drive
    small_input = delta_E_weak_drive(sol.amplitude ** 2, modes)
    closed = float(delta_E_closed(sol, 0.0, 0.0, nus, modes))
    return small_input / closed


def run_all(verbose: bool = True) -> list[CriterionResult]:
    results = []
    for crit in ALL_CRITERIA:
        res = crit()
        results.append(res)
        if verbose:
            print(res.line(), flush=True)
    if verbose:
        ratio = energy_scaling_diagnostic()
        print(f"[INFO] small-input vs closed-form energy ratio at r=0: "
              f"{ratio:.6g} (reported only)")
        n_fail = sum(not r.passed for r in results)
        print(f"{len(results) - n_fail}/{len(results)} criteria passed")
    return results
