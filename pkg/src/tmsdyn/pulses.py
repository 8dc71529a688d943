"""Coupling pulse h(eta): the dimensionless drive of the two-mode squeezing term.

Every pulse starts at h(0) = 0, is real valued and vanishes identically
beyond its switch-off time eta_f. Pulses are lowered to a (kind, params,
xs, ys) encoding for the integration kernels.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

DEFAULT_SWITCH_OFF_THRESHOLD = 1e-12

KIND_NULL = 0
KIND_GAUSSIAN_QUADRATIC = 1
KIND_TABULATED = 2
KIND_RAISED_COSINE = 3

_EMPTY = np.empty(0)


@dataclass(frozen=True)
class NullPulse:
    """No drive: h identically zero."""


@dataclass(frozen=True)
class GaussianQuadraticPulse:
    """h(eta) = lam * eta^2 * exp(-eta^2 / eta0^2), clamped to 0 beyond eta_f.

    The envelope peaks at eta = eta0 with value lam * eta0^2 / e.
    """

    lam: float
    eta0: float
    switch_off_threshold: float = DEFAULT_SWITCH_OFF_THRESHOLD

    def __post_init__(self):
        if self.eta0 <= 0:
            raise ValueError("eta0 must be positive")
        if self.switch_off_threshold <= 0:
            raise ValueError("switch-off threshold must be positive")


@dataclass(frozen=True)
class TabulatedPulse:
    """Linear interpolation through (eta, h) samples, 0 outside the sample range."""

    etas: tuple = field(default=())
    values: tuple = field(default=())

    def __post_init__(self):
        xs = np.asarray(self.etas, dtype=float)
        ys = np.asarray(self.values, dtype=float)
        if xs.shape != ys.shape or xs.ndim != 1 or xs.size < 2:
            raise ValueError("tabulated pulse needs matching 1-d eta/value samples")
        if np.any(np.diff(xs) <= 0):
            raise ValueError("tabulated etas must be strictly increasing")
        object.__setattr__(self, "etas", tuple(xs))
        object.__setattr__(self, "values", tuple(ys))


@dataclass(frozen=True)
class RaisedCosinePulse:
    """Single raised-cosine lobe of given amplitude over [start, start + duration]."""

    amplitude: float
    start: float = 0.0
    duration: float = 1.0

    def __post_init__(self):
        if self.duration <= 0:
            raise ValueError("duration must be positive")
        if self.start < 0:
            raise ValueError("start must be nonnegative")


CouplingPulse = NullPulse | GaussianQuadraticPulse | TabulatedPulse | RaisedCosinePulse


def pulse_switch_off(pulse: CouplingPulse,
                     threshold: float = DEFAULT_SWITCH_OFF_THRESHOLD) -> float:
    """Smallest eta_f with |h(eta)| below threshold for all eta >= eta_f."""
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    if isinstance(pulse, NullPulse):
        return 0.0
    if isinstance(pulse, GaussianQuadraticPulse):
        lam, eta0 = abs(pulse.lam), pulse.eta0
        if lam * eta0 ** 2 / np.e < threshold:
            return 0.0
        # envelope is monotone decreasing beyond the peak at eta0
        tail = lambda eta: lam * eta ** 2 * np.exp(-(eta / eta0) ** 2) - threshold
        hi = 2.0 * eta0
        while tail(hi) > 0:
            hi *= 2.0
        return float(brentq(tail, eta0, hi, xtol=1e-14, rtol=1e-15))
    if isinstance(pulse, TabulatedPulse):
        xs = np.asarray(pulse.etas)
        ys = np.asarray(pulse.values)
        above = np.nonzero(np.abs(ys) >= threshold)[0]
        if above.size == 0:
            return 0.0
        return float(xs[above[-1]])
    if isinstance(pulse, RaisedCosinePulse):
        if abs(pulse.amplitude) < threshold:
            return 0.0
        return pulse.start + pulse.duration
    raise TypeError(f"unknown pulse type: {type(pulse)!r}")


def pulse_kernel_args(pulse: CouplingPulse) -> tuple[int, np.ndarray, np.ndarray, np.ndarray]:
    """Lower a pulse to the (kind, params, xs, ys) encoding used by the kernels."""
    if isinstance(pulse, NullPulse):
        return KIND_NULL, _EMPTY, _EMPTY, _EMPTY
    if isinstance(pulse, GaussianQuadraticPulse):
        eta_f = pulse_switch_off(pulse, pulse.switch_off_threshold)
        params = np.array([pulse.lam, pulse.eta0, eta_f])
        return KIND_GAUSSIAN_QUADRATIC, params, _EMPTY, _EMPTY
    if isinstance(pulse, TabulatedPulse):
        return (KIND_TABULATED, _EMPTY,
                np.asarray(pulse.etas, dtype=float), np.asarray(pulse.values, dtype=float))
    if isinstance(pulse, RaisedCosinePulse):
        params = np.array([pulse.amplitude, pulse.start, pulse.duration])
        return KIND_RAISED_COSINE, params, _EMPTY, _EMPTY
    raise TypeError(f"unknown pulse type: {type(pulse)!r}")


def pulse_value(pulse: CouplingPulse, eta):
    """Evaluate h(eta); accepts scalars or arrays, eta must be nonnegative."""
    from .kernels import pulse_eval

    kind, params, xs, ys = pulse_kernel_args(pulse)
    eta_arr = np.asarray(eta, dtype=float)
    if np.any(eta_arr < 0):
        raise ValueError("eta must be nonnegative")
    out = np.empty(eta_arr.shape)
    for idx in np.ndindex(eta_arr.shape):
        out[idx] = pulse_eval(kind, params, xs, ys, float(eta_arr[idx]))
    if np.isscalar(eta) or eta_arr.ndim == 0:
        return float(pulse_eval(kind, params, xs, ys, float(eta_arr)))
    return out


def pulse_max(pulse: CouplingPulse) -> tuple[float, float]:
    """(sup |h|, eta at which it is attained)."""
    if isinstance(pulse, NullPulse):
        return 0.0, 0.0
    if isinstance(pulse, GaussianQuadraticPulse):
        return abs(pulse.lam) * pulse.eta0 ** 2 / np.e, pulse.eta0
    if isinstance(pulse, TabulatedPulse):
        ys = np.abs(np.asarray(pulse.values))
        i = int(np.argmax(ys))
        return float(ys[i]), float(pulse.etas[i])
    if isinstance(pulse, RaisedCosinePulse):
        return abs(pulse.amplitude), pulse.start + 0.5 * pulse.duration
    raise TypeError(f"unknown pulse type: {type(pulse)!r}")
