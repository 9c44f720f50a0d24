"""Operating-condition classification from frequency components or samples.

The exact path inspects the decomposed components directly: shear-strain
content marks unbalance, explicit time variation marks harmonic content, no
rotation at all marks dc.  The sampled path sees only rho and omega series,
so it attributes their fluctuation by the dominant ripple frequency of rho
(about twice the fundamental for unbalance, (h-1) times it for harmonics)
and then applies the same thresholds.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .fields import ComponentsSeries
from .frequency import FrequencySeries

# Ripple ratios at or above this are attributed to harmonic content (the
# unbalance signature sits at 2, the lowest admissible harmonic beat at h-1).
RIPPLE_SPLIT = 3.0


class ConditionLabel(str, enum.Enum):
    DC = "DC"
    BALANCED_SINUSOIDAL = "BALANCED_SINUSOIDAL"
    UNBALANCED_SINUSOIDAL = "UNBALANCED_SINUSOIDAL"
    BALANCED_NONSINUSOIDAL = "BALANCED_NONSINUSOIDAL"
    MIXED_OR_UNKNOWN = "MIXED_OR_UNKNOWN"


@dataclass(frozen=True)
class FeatureVector:
    """RMS statistics over a whole number of fundamental periods."""

    rms_rho_t: float
    rms_rho_r: float
    rms_omega_t: float
    rms_omega_r: float
    mean_omega_v: float
    dominant_ripple_ratio: float


def _rms(x: np.ndarray) -> float:
    return float(np.sqrt(np.mean(np.square(x)))) if x.size else 0.0


def _row_norms(x: np.ndarray) -> np.ndarray:
    return np.sqrt(np.einsum("ij,ij->i", x, x))


def _decide(rms_rho_t, rms_rho_r, rms_omega_t, rms_omega_r, rotation, tol) -> ConditionLabel:
    if rotation <= tol:
        return ConditionLabel.DC
    t_quiet = rms_rho_t <= tol and rms_omega_t <= tol
    r_quiet = rms_rho_r <= tol and rms_omega_r <= tol
    if t_quiet and r_quiet:
        return ConditionLabel.BALANCED_SINUSOIDAL
    if t_quiet and not r_quiet:
        return ConditionLabel.UNBALANCED_SINUSOIDAL
    if r_quiet and not t_quiet:
        return ConditionLabel.BALANCED_NONSINUSOIDAL
    return ConditionLabel.MIXED_OR_UNKNOWN


def classify_components(series: ComponentsSeries, omega0: float,
                        tol: float | None = None) -> ConditionLabel:
    """Label a condition from exact frequency components.

    ``omega0`` is the fundamental angular frequency; the series must cover at
    least one period of it (or at least 10 samples for a non-rotating signal).
    ``tol`` defaults to 1e-3 * omega0.
    """
    if omega0 <= 0.0:
        raise ValueError(f"omega0 must be > 0, got {omega0}")
    if tol is None:
        tol = 1e-3 * omega0
    count = series.times.shape[0]
    if count < 2:
        raise ValueError("series too short to classify")
    rotation = max(_rms(_row_norms(series.omega_t)),
                   _rms(_row_norms(series.omega_r)),
                   _rms(_row_norms(series.half_w)))
    if rotation > tol:
        span = count * (series.times[1] - series.times[0])
        if span < (2.0 * math.pi / omega0) * (1.0 - 1e-9):
            raise ValueError("series covers less than one fundamental period")
    elif count < 10:
        raise ValueError("need at least 10 samples to classify a non-rotating signal")
    return _decide(
        _rms(series.rho_t), _rms(series.rho_r),
        _rms(_row_norms(series.omega_t)), _rms(_row_norms(series.omega_r)),
        rotation, tol,
    )


def features_from_components(series: ComponentsSeries, omega0: float) -> FeatureVector:
    """Exact-path feature report with the same fields as the sampled path."""
    omega_z = series.omega_v[:, 2]
    return FeatureVector(
        rms_rho_t=_rms(series.rho_t),
        rms_rho_r=_rms(series.rho_r),
        rms_omega_t=_rms(_row_norms(series.omega_t)),
        rms_omega_r=_rms(_row_norms(series.omega_r)),
        mean_omega_v=float(np.mean(omega_z)),
        dominant_ripple_ratio=_ripple_ratio(
            series.rho_v - np.mean(series.rho_v),
            series.times, float(abs(np.mean(omega_z)))),
    )


def _ripple_ratio(fluct: np.ndarray, times: np.ndarray, mean_rotation: float) -> float:
    """Dominant fluctuation frequency over the mean rotation, by zero-crossing count."""
    if fluct.size < 3 or mean_rotation <= 0.0:
        return 0.0
    signs = np.sign(fluct)
    signs = signs[signs != 0.0]
    if signs.size < 2:
        return 0.0
    crossings = int(np.count_nonzero(signs[1:] != signs[:-1]))
    span = times[-1] - times[0]
    if span <= 0.0:
        return 0.0
    ripple_omega = math.pi * crossings / span
    return ripple_omega / mean_rotation


def features_from_samples(series: FrequencySeries, omega_est: float,
                          min_samples: int = 10) -> FeatureVector:
    """Heuristic features from a sampled geometric-frequency series.

    Requires at least two periods of ``omega_est`` for rotating signals; the
    statistics are taken over the largest whole number of periods so that the
    result is invariant under a global time shift.
    """
    if omega_est <= 0.0:
        raise ValueError(f"omega_est must be > 0, got {omega_est}")
    mask = series.valid
    if int(np.count_nonzero(mask)) < min_samples:
        raise ValueError("insufficient data: too few valid samples")
    times = series.times[mask]
    rho = series.rho[mask]
    count = times.shape[0]
    dt = float((times[-1] - times[0]) / (count - 1))
    period = 2.0 * math.pi / omega_est

    if series.omega is None:
        return FeatureVector(
            rms_rho_t=0.0, rms_rho_r=_rms(rho - np.mean(rho)),
            rms_omega_t=0.0, rms_omega_r=0.0,
            mean_omega_v=0.0, dominant_ripple_ratio=0.0,
        )

    if count * dt < 2.0 * period * (1.0 - 1e-9):
        raise ValueError("insufficient data: need at least two fundamental periods")
    whole = int(math.floor(count * dt / period + 1e-9))
    keep = min(count, int(round(whole * period / dt)))
    times, rho = times[:keep], rho[:keep]
    omega_z = series.omega[mask][:keep, 2]

    mean_omega = float(np.mean(omega_z))
    rho_fluct = rho - float(np.mean(rho))
    omega_fluct = omega_z - mean_omega
    rms_rho_fluct = _rms(rho_fluct)
    rms_omega_fluct = _rms(omega_fluct)
    ratio = _ripple_ratio(rho_fluct, times, abs(mean_omega))
    if ratio >= RIPPLE_SPLIT:
        return FeatureVector(rms_rho_t=rms_rho_fluct, rms_rho_r=0.0,
                             rms_omega_t=rms_omega_fluct, rms_omega_r=0.0,
                             mean_omega_v=mean_omega, dominant_ripple_ratio=ratio)
    return FeatureVector(rms_rho_t=0.0, rms_rho_r=rms_rho_fluct,
                         rms_omega_t=0.0, rms_omega_r=rms_omega_fluct,
                         mean_omega_v=mean_omega, dominant_ripple_ratio=ratio)


def classify_samples(series: FrequencySeries, omega_est: float,
                     tol: float | None = None) -> ConditionLabel:
    """Label a condition from sampled rho/omega series alone."""
    if tol is None:
        tol = 1e-3 * omega_est
    f = features_from_samples(series, omega_est)
    rotation = max(abs(f.mean_omega_v), f.rms_omega_t, f.rms_omega_r)
    return _decide(f.rms_rho_t, f.rms_rho_r, f.rms_omega_t, f.rms_omega_r, rotation, tol)
