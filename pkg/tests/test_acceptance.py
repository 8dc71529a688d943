"""Validation suite: every criterion must pass at its stated tolerance.

Each test prints a single pass/fail line with the measured value; run with
`pytest -v -s tests/test_acceptance.py` to see them, or use `tmsdyn validate`.
"""

import pytest

from tmsdyn.acceptance import ALL_CRITERIA, energy_scaling_diagnostic


@pytest.mark.parametrize("criterion", ALL_CRITERIA,
                         ids=[c.__name__ for c in ALL_CRITERIA])
def test_criterion(criterion):
    res = criterion()
    print(res.line())
    assert res.passed, res.line()
    assert res.measured <= res.tolerance


def test_energy_scaling_diagnostic_reported():
    ratio = energy_scaling_diagnostic()
    print(f"energy scaling ratio (small-input estimate / closed form): {ratio:.6f}")
    assert ratio > 0.0
