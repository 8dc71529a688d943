import numpy as np
import pytest

from tmsdyn import (InitialStateSpec, ModePair, NuCombination,
                    N_plusminus_closed, OscillatorySolution, closed_form_F,
                    delta_E, delta_E_closed, delta_E_weak_drive,
                    evolution_matrix, evolve_state, initial_state,
                    log_negativity, log_negativity_closed, nu_tilde_minus,
                    nu_tilde_minus_closed, number_expectation,
                    two_mode_squeezer)

MODES = ModePair(omega_D=1.0, omega_d=1.0)


def evolved_state(spec, f_plus, f_minus, theta_plus=0.0, theta_minus=0.0):
    S = evolution_matrix(f_plus, f_minus, theta_plus, theta_minus)
    return evolve_state(initial_state(spec), S)


def test_nu_combination():
    nus = NuCombination.from_spectrum(1.4, 1.0)
    assert nus.nu_plus == pytest.approx(1.2)
    assert nus.nu_minus == pytest.approx(0.2)
    with pytest.raises(ValueError):
        NuCombination(nu_plus=0.5, nu_minus=0.0)
    with pytest.raises(ValueError):
        NuCombination(nu_plus=1.0, nu_minus=1.5)


def test_number_expectation_basics():
    assert number_expectation(np.eye(4)) == (0.0, 0.0)
    assert number_expectation(np.diag([1.4, 1.2, 1.4, 1.2])) == (
        pytest.approx(0.2), pytest.approx(0.1))
    sigma = evolve_state(np.eye(4, dtype=complex), two_mode_squeezer(0.6))
    n_D, n_d = number_expectation(sigma)
    assert n_D == pytest.approx(np.sinh(0.6) ** 2, rel=1e-12)
    assert n_d == pytest.approx(np.sinh(0.6) ** 2, rel=1e-12)


def test_number_expectation_rejects_unphysical():
    with pytest.raises(ValueError):
        number_expectation(0.5 * np.eye(4))


def test_closed_numbers_match_matrix_route():
    spec = InitialStateSpec(r=0.4, nu_D=1.3, nu_d=1.1)
    nus = NuCombination.from_spectrum(spec.nu_D, spec.nu_d)
    sol = OscillatorySolution(amplitude=0.6, phase=0.5, chi=1.0)
    for eta in (0.0, 1.3, 4.0):
        f_plus, f_minus = closed_form_F(sol, eta)
        sigma = evolved_state(spec, float(f_plus), float(f_minus), 0.7, -0.4)
        n_D, n_d = number_expectation(sigma, check=False)
        n_plus_c, n_minus_c = N_plusminus_closed(sol, eta, spec.r, nus)
        assert n_D + n_d == pytest.approx(float(n_plus_c), abs=1e-10)
        assert n_D - n_d == pytest.approx(float(n_minus_c), abs=1e-10)


def test_number_difference_conserved():
    spec = InitialStateSpec(r=0.5, nu_D=1.5, nu_d=1.2)
    rng = np.random.default_rng(7)
    base = None
    for _ in range(10):
        sigma = evolved_state(spec, rng.uniform(-1, 1), rng.uniform(-1, 1),
                              rng.uniform(-3, 3), rng.uniform(-3, 3))
        n_D, n_d = number_expectation(sigma, check=False)
        diff = n_D - n_d
        if base is None:
            base = diff
        assert diff == pytest.approx(base, abs=1e-10)
    assert base == pytest.approx(0.5 * (spec.nu_D - spec.nu_d), abs=1e-10)


def test_nu_tilde_closed_squeezed_vacuum():
    # pure two-mode squeezed vacuum: nu~_- = exp(-2r) at F = 0
    nus = NuCombination(nu_plus=1.0, nu_minus=0.0)
    assert nu_tilde_minus_closed(0.0, 0.0, 0.5, nus) == pytest.approx(
        np.exp(-1.0), abs=1e-12)
    sigma = initial_state(InitialStateSpec(0.5, 1.0, 1.0))
    assert nu_tilde_minus(sigma) == pytest.approx(np.exp(-1.0), abs=1e-12)


def test_nu_tilde_matrix_vs_closed_random():
    rng = np.random.default_rng(21)
    for _ in range(25):
        r = rng.uniform(-0.7, 0.7)
        nu_D, nu_d = rng.uniform(1.0, 1.8, size=2)
        spec = InitialStateSpec(r=r, nu_D=nu_D, nu_d=nu_d)
        nus = NuCombination.from_spectrum(nu_D, nu_d)
        f_plus, f_minus = rng.uniform(-1, 1, size=2)
        sigma = evolved_state(spec, f_plus, f_minus,
                              rng.uniform(-3, 3), rng.uniform(-3, 3))
        assert nu_tilde_minus(sigma) == pytest.approx(
            float(nu_tilde_minus_closed(f_plus, f_minus, r, nus)), abs=1e-10)


def test_negativity_cases():
    # vacuum and thermal states are not entangled
    assert log_negativity(np.eye(4)) == 0.0
    assert log_negativity(np.diag([1.5, 1.2, 1.5, 1.2])) == 0.0
    # two-mode squeezed vacuum: N = (1 - e^{-2r}) / e^{-2r} = e^{2r} - 1
    sigma = initial_state(InitialStateSpec(0.5, 1.0, 1.0))
    assert log_negativity(sigma) == pytest.approx(np.e - 1.0, rel=1e-12)


def test_negativity_closed_threshold():
    # hot enough initial state stays separable for a weak oscillation
    nus = NuCombination.from_spectrum(2.0, 2.0)
    sol = OscillatorySolution(amplitude=0.1, phase=0.0, chi=1.0)
    vals = log_negativity_closed(sol, np.linspace(0, 10, 50), 0.0, nus)
    assert np.all(vals == 0.0)
    # pure squeezed vacuum is entangled at all times
    nus0 = NuCombination(nu_plus=1.0, nu_minus=0.0)
    vals = log_negativity_closed(sol, np.linspace(0, 10, 50), 0.5, nus0)
    assert np.all(vals > 0.0)


def test_negativity_closed_matches_matrix():
    spec = InitialStateSpec(r=0.5, nu_D=1.0, nu_d=1.0)
    nus = NuCombination.from_spectrum(1.0, 1.0)
    sol = OscillatorySolution(amplitude=0.7, phase=-0.3, chi=1.0)
    for eta in (0.0, 0.9, 2.7, 6.1):
        f_plus, f_minus = closed_form_F(sol, eta)
        sigma = evolved_state(spec, float(f_plus), float(f_minus), 1.0, 0.0)
        assert log_negativity(sigma) == pytest.approx(
            float(log_negativity_closed(sol, eta, spec.r, nus)), abs=1e-9)


def test_delta_E_matrix_route():
    sigma_i = np.eye(4, dtype=complex)
    sigma_f = evolve_state(sigma_i, two_mode_squeezer(0.3))
    # vacuum -> squeezed vacuum costs (omega_D + omega_d) sinh^2 r
    val = delta_E(sigma_i, sigma_f, ModePair(1.3, 0.7))
    assert val == pytest.approx(2.0 * np.sinh(0.3) ** 2, rel=1e-12)


def test_delta_E_closed_example():
    # r = 0 makes the cos term drop out: DeltaE = A^2 nu_+ (w_D + w_d) /
    # (2 (sqrt(1 + A^2) + 1)), constant in time.
    sol = OscillatorySolution(amplitude=0.3, phase=0.0, chi=1.0)
    nus = NuCombination(nu_plus=1.0, nu_minus=0.0)
    for eta in (0.0, 1.1, np.pi):
        val = float(delta_E_closed(sol, eta, 0.0, nus, MODES))
        assert val == pytest.approx(0.09 / (np.sqrt(1.09) + 1.0), rel=1e-12)
        assert val == pytest.approx(0.0440306, abs=1e-6)


def test_delta_E_closed_cross_validates_matrix():
    spec = InitialStateSpec(r=0.3, nu_D=1.2, nu_d=1.0)
    nus = NuCombination.from_spectrum(1.2, 1.0)
    sol = OscillatorySolution(amplitude=0.5, phase=0.4, chi=1.0)
    sigma_i = initial_state(spec)
    for eta in (0.5, 2.0, 5.5):
        f_plus, f_minus = closed_form_F(sol, eta)
        sigma_f = evolved_state(spec, float(f_plus), float(f_minus), 0.2, 0.1)
        assert delta_E(sigma_i, sigma_f, MODES) == pytest.approx(
            float(delta_E_closed(sol, eta, spec.r, nus, MODES)), abs=1e-10)


def test_delta_E_closed_zero_amplitude():
    sol = OscillatorySolution(amplitude=0.0, phase=0.0, chi=1.0)
    nus = NuCombination(nu_plus=1.0, nu_minus=0.0)
    assert float(delta_E_closed(sol, 3.0, 0.6, nus, MODES)) == 0.0


def test_delta_E_weak_drive():
    assert delta_E_weak_drive(0.25, ModePair(1.5, 0.5)) == pytest.approx(0.5)
