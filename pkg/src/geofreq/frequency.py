"""Geometric frequency of a time-dependent vector.

The geometric frequency of a vector v with derivative v' is the multivector

    rho + W  with  rho = v.v' / |v|^2  and  W = wedge(v, v') / |v|^2,

whose scalar part measures relative magnitude change and whose bivector part
measures rotation.  In three dimensions the bivector has the axial vector
``omega = hodge3(W)`` and the derivative is recovered as
``v' = rho*v + cross(omega, v)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import bivector_apply, hodge3, wedge, Multivector
from .errors import SingularMagnitudeError
from .signals import SignalBundle, numeric_derivative


@dataclass(frozen=True)
class GeometricFrequency:
    """Point value: scalar rate rho (1/s), bivector W and, for n=3, omega = hodge3(W)."""

    rho: float
    bivector: np.ndarray
    omega: np.ndarray | None

    def as_multivector(self) -> Multivector:
        return Multivector(self.rho, self.bivector)


def geometric_frequency(v, v_prime, min_magnitude: float = 0.0) -> GeometricFrequency:
    """Geometric frequency of (v, v'); raises SingularMagnitudeError near |v| = 0."""
    v = np.asarray(v, dtype=float)
    vp = np.asarray(v_prime, dtype=float)
    if v.shape != vp.shape or v.ndim != 1:
        raise ValueError(f"expected two equal-length vectors, got {v.shape} and {vp.shape}")
    norm2 = float(v @ v)
    if not np.isfinite(norm2) or norm2 <= max(min_magnitude, 0.0) ** 2 or norm2 == 0.0:
        raise SingularMagnitudeError(f"|v| = {np.sqrt(max(norm2, 0.0)):.3e} is too small")
    rho = float(v @ vp) / norm2
    biv = wedge(v, vp) / norm2
    omega = hodge3(biv) if v.size == 3 else None
    return GeometricFrequency(rho=rho, bivector=biv, omega=omega)


def reconstruct_derivative(gf: GeometricFrequency, v) -> np.ndarray:
    """Recover v' from its geometric frequency: rho*v - W@v."""
    v = np.asarray(v, dtype=float)
    return gf.rho * v - bivector_apply(gf.bivector, v)


@dataclass(frozen=True)
class FrequencySeries:
    """Per-sample geometric frequency; masked samples are NaN with valid=False."""

    times: np.ndarray
    rho: np.ndarray            # (N,)
    omega: np.ndarray | None   # (N, 3) when the signal is three-dimensional
    valid: np.ndarray          # (N,) bool

    @property
    def dim(self) -> int:
        return 3 if self.omega is not None else 1


def geometric_frequency_series(bundle: SignalBundle, derivative: str = "analytic") -> FrequencySeries:
    """Geometric frequency along a sampled bundle.

    ``derivative`` selects the analytic closed form or the finite-difference
    estimate.  Samples whose magnitude falls below 1e-9 times the series RMS
    magnitude are flagged invalid rather than extrapolated.
    """
    if derivative == "analytic":
        vp = bundle.v_prime
    elif derivative == "numeric":
        vp = numeric_derivative(bundle.v, bundle.grid.dt)
    else:
        raise ValueError(f"derivative must be 'analytic' or 'numeric', got {derivative!r}")
    return frequency_series_from_samples(bundle.grid.times(), bundle.v, vp)


def frequency_series_from_samples(times, v, v_prime) -> FrequencySeries:
    """Vectorized geometric frequency for pre-computed (v, v') sample arrays."""
    times = np.asarray(times, dtype=float)
    v = np.asarray(v, dtype=float)
    vp = np.asarray(v_prime, dtype=float)
    if v.ndim != 2 or v.shape != vp.shape or v.shape[0] != times.shape[0]:
        raise ValueError("times, v and v_prime must have matching sample counts")
    norm2 = np.einsum("ij,ij->i", v, v)
    rms_mag = np.sqrt(norm2.mean())
    eps = 1e-9 * rms_mag
    valid = np.isfinite(norm2) & (np.sqrt(norm2) > eps) & (norm2 > 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        rho = np.where(valid, np.einsum("ij,ij->i", v, vp) / norm2, np.nan)
        if v.shape[1] == 3:
            omega = np.where(valid[:, None], np.cross(v, vp) / norm2[:, None], np.nan)
        else:
            omega = None
    return FrequencySeries(times=times, rho=rho, omega=omega, valid=valid)
