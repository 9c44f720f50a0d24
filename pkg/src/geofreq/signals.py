"""Parametric multi-phase waveform families, Clarke transform and sampling.

The three-phase families are expressed directly in the alpha/beta/gamma
(Clarke) frame; the dc family is one-dimensional.  ``synthesize`` evaluates
the waveform, its time derivative and the zero-mean flux linkage from closed
forms.  ``numeric_derivative`` and ``flux_from_samples`` are the sampled-data
counterparts used as independent cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_SQ3_2 = np.sqrt(3.0) / 2.0

# Amplitude-invariant Clarke matrix and its inverse.
CLARKE = (2.0 / 3.0) * np.array([
    [1.0, -0.5, -0.5],
    [0.0, _SQ3_2, -_SQ3_2],
    [0.5, 0.5, 0.5],
])
CLARKE_INV = np.array([
    [1.0, 0.0, 1.0],
    [-0.5, _SQ3_2, 1.0],
    [-0.5, -_SQ3_2, 1.0],
])


def clarke_forward(v_abc) -> np.ndarray:
    """Map abc phase quantities to alpha/beta/gamma components.

    Accepts a single 3-vector or an (N, 3) array of rows.
    """
    v = np.asarray(v_abc, dtype=float)
    if v.shape[-1] != 3:
        raise ValueError(f"expected 3 phase components, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("non-finite phase values")
    return v @ CLARKE.T


def clarke_inverse(v_abg) -> np.ndarray:
    """Map alpha/beta/gamma components back to abc phase quantities."""
    v = np.asarray(v_abg, dtype=float)
    if v.shape[-1] != 3:
        raise ValueError(f"expected 3 components, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("non-finite values")
    return v @ CLARKE_INV.T


@dataclass(frozen=True)
class Overtone:
    """One harmonic term: order h >= 2, amplitude and phase offset."""

    order: int
    amplitude: float
    phase: float = 0.0

    def __post_init__(self):
        if int(self.order) != self.order or self.order < 2:
            raise ValueError(f"harmonic order must be an integer >= 2, got {self.order}")
        if self.amplitude < 0.0:
            raise ValueError("harmonic amplitude must be >= 0")


@dataclass(frozen=True)
class Balanced:
    """Balanced sinusoid: v = amplitude*(cos th, sin th, 0), th = omega*t + phase."""

    amplitude: float
    omega: float
    phase: float = 0.0

    def __post_init__(self):
        _check_ac(self.omega, self.amplitude)


@dataclass(frozen=True)
class Unbalanced:
    """Unbalanced sinusoid: v = (Va*cos th, Vb*sin th, 0)."""

    amplitude_alpha: float
    amplitude_beta: float
    omega: float
    phase: float = 0.0

    def __post_init__(self):
        _check_ac(self.omega, self.amplitude_alpha, self.amplitude_beta)


@dataclass(frozen=True)
class Harmonic:
    """Balanced fundamental plus a set of positive-sequence overtones."""

    amplitude: float
    omega: float
    phase: float = 0.0
    overtones: tuple[Overtone, ...] = ()

    def __post_init__(self):
        _check_ac(self.omega, self.amplitude)
        orders = [o.order for o in self.overtones]
        if len(set(orders)) != len(orders):
            raise ValueError(f"harmonic orders must be distinct, got {orders}")


@dataclass(frozen=True)
class Dc:
    """Exponential dc waveform v(t) = level * exp(rate * t), one-dimensional."""

    level: float
    rate: float = 0.0

    def __post_init__(self):
        if self.level < 0.0:
            raise ValueError("dc level must be >= 0")


SignalSpec = Balanced | Unbalanced | Harmonic | Dc


def _check_ac(omega, *amplitudes):
    if omega <= 0.0:
        raise ValueError(f"fundamental frequency must be > 0, got {omega}")
    for a in amplitudes:
        if a < 0.0:
            raise ValueError("amplitudes must be >= 0")


def spec_dim(spec: SignalSpec) -> int:
    return 1 if isinstance(spec, Dc) else 3


@dataclass(frozen=True)
class SampleGrid:
    """Uniform time grid: count samples at t0 + k*dt, k = 0..count-1."""

    t0: float
    dt: float
    count: int

    def __post_init__(self):
        if self.dt <= 0.0:
            raise ValueError(f"dt must be > 0, got {self.dt}")
        if self.count < 2:
            raise ValueError(f"count must be >= 2, got {self.count}")

    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.count)


@dataclass(frozen=True)
class SignalBundle:
    """Sampled waveform with analytic derivative and flux trajectories."""

    spec: SignalSpec
    grid: SampleGrid
    v: np.ndarray        # (N, n) volts
    v_prime: np.ndarray  # (N, n) V/s
    flux: np.ndarray     # (N, n) Wb, zero-mean for ac families

    @property
    def dim(self) -> int:
        return self.v.shape[1]


def _planar(c_alpha, c_beta) -> np.ndarray:
    """Stack alpha/beta series with a zero gamma column."""
    return np.stack([c_alpha, c_beta, np.zeros_like(c_alpha)], axis=-1)


def synthesize(spec: SignalSpec, grid: SampleGrid) -> SignalBundle:
    """Evaluate a waveform family on a grid from its closed forms."""
    t = grid.times()
    if isinstance(spec, Balanced):
        th = spec.omega * t + spec.phase
        a, w = spec.amplitude, spec.omega
        v = _planar(a * np.cos(th), a * np.sin(th))
        vp = _planar(-a * w * np.sin(th), a * w * np.cos(th))
        flux = _planar((a / w) * np.sin(th), -(a / w) * np.cos(th))
    elif isinstance(spec, Unbalanced):
        th = spec.omega * t + spec.phase
        va, vb, w = spec.amplitude_alpha, spec.amplitude_beta, spec.omega
        v = _planar(va * np.cos(th), vb * np.sin(th))
        vp = _planar(-va * w * np.sin(th), vb * w * np.cos(th))
        flux = _planar((va / w) * np.sin(th), -(vb / w) * np.cos(th))
    elif isinstance(spec, Harmonic):
        w = spec.omega
        terms = [(1, spec.amplitude, spec.phase)]
        terms += [(o.order, o.amplitude, o.phase) for o in spec.overtones]
        v_a = np.zeros_like(t)
        v_b = np.zeros_like(t)
        vp_a = np.zeros_like(t)
        vp_b = np.zeros_like(t)
        fl_a = np.zeros_like(t)
        fl_b = np.zeros_like(t)
        for order, amp, ph in terms:
            th = order * w * t + ph
            v_a += amp * np.cos(th)
            v_b += amp * np.sin(th)
            vp_a += -amp * order * w * np.sin(th)
            vp_b += amp * order * w * np.cos(th)
            fl_a += (amp / (order * w)) * np.sin(th)
            fl_b += -(amp / (order * w)) * np.cos(th)
        v = _planar(v_a, v_b)
        vp = _planar(vp_a, vp_b)
        flux = _planar(fl_a, fl_b)
    elif isinstance(spec, Dc):
        level, rate = spec.level, spec.rate
        vdc = level * np.exp(rate * t)
        v = vdc[:, None]
        vp = (rate * vdc)[:, None]
        if rate == 0.0:
            flux = (level * t)[:, None]
        else:
            flux = ((level / rate) * (np.exp(rate * t) - 1.0))[:, None]
    else:
        raise TypeError(f"unknown signal spec {type(spec).__name__}")
    return SignalBundle(spec=spec, grid=grid, v=v, v_prime=vp, flux=flux)


def numeric_derivative(series, dt: float) -> np.ndarray:
    """Second-order finite-difference time derivative of a sampled series.

    Central differences in the interior, one-sided three-point stencils at
    both ends, so the output has the same length as the input.
    """
    y = np.asarray(series, dtype=float)
    if y.shape[0] < 3:
        raise ValueError(f"need at least 3 samples, got {y.shape[0]}")
    if dt <= 0.0:
        raise ValueError(f"dt must be > 0, got {dt}")
    d = np.empty_like(y)
    d[1:-1] = (y[2:] - y[:-2]) / (2.0 * dt)
    d[0] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * dt)
    d[-1] = (3.0 * y[-1] - 4.0 * y[-2] + y[-3]) / (2.0 * dt)
    return d


def flux_from_samples(series, grid: SampleGrid, detrend_period: float | None = None) -> np.ndarray:
    """Recover flux by trapezoidal integration of sampled voltages.

    When ``detrend_period`` is given, the per-component mean over the trailing
    whole number of such periods is subtracted, which removes the integration
    constant for periodic signals.  The period must span an integer number of
    grid steps.
    """
    y = np.asarray(series, dtype=float)
    if y.shape[0] != grid.count:
        raise ValueError(f"series length {y.shape[0]} does not match grid count {grid.count}")
    integral = np.zeros_like(y)
    integral[1:] = np.cumsum(0.5 * grid.dt * (y[1:] + y[:-1]), axis=0)
    if detrend_period is None:
        return integral
    steps = detrend_period / grid.dt
    m = int(round(steps))
    if m < 1 or abs(steps - m) > 1e-6 * max(steps, 1.0):
        raise ValueError(f"detrend period {detrend_period} is not an integer number of grid steps")
    windows = grid.count // m
    if windows < 1:
        raise ValueError("series shorter than one detrend period")
    tail = integral[grid.count - windows * m:]
    return integral - tail.mean(axis=0)
