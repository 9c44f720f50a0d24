"""Flux-parameterized velocity fields and their kinematic decomposition.

A waveform family is re-expressed as a field v(t, phi) over its own flux
trajectory, so that the time derivative along a stream-line splits into a
local time variation plus the action of the flux Jacobian:

    v' = partial_t v + (S + R + Q) v

with S the isotropic (normal strain) part, R the traceless symmetric (shear
strain) part and Q the skew (rigid rotation) part of J.  The same split turns
the geometric frequency into per-mechanism components (``frequency_components``)
whose sums reproduce rho and omega of the direct definition exactly.

All families used here are affine in the flux, v(t, phi) = A phi + e(t); the
rotating explicit terms e(t) are sums of planar tones.  The vorticity is the
curl of the field with respect to the flux coordinates, oriented so that the
balanced family has vorticity +2*omega on the gamma axis.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Protocol

import numpy as np

from .algebra import decompose_matrix, hodge3, wedge
from .errors import SingularMagnitudeError
from .signals import Balanced, Dc, Harmonic, SampleGrid, SignalSpec, Unbalanced

Frame = str | int


class VelocityField(Protocol):
    """Duck interface: a field knows its dimension and three evaluators."""

    @property
    def dim(self) -> int: ...

    def velocity(self, t: float, phi: np.ndarray) -> np.ndarray: ...

    def partial_t(self, t: float, phi: np.ndarray) -> np.ndarray: ...

    def jacobian(self, t: float, phi: np.ndarray) -> np.ndarray: ...


@dataclass(frozen=True)
class AffineField:
    """Field affine in the flux: v(t, phi) = matrix @ phi + drive(t)."""

    matrix: np.ndarray
    drive: Callable[[float], np.ndarray] | None = None
    drive_rate: Callable[[float], np.ndarray] | None = None

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def velocity(self, t: float, phi: np.ndarray) -> np.ndarray:
        v = self.matrix @ np.asarray(phi, dtype=float)
        if self.drive is not None:
            v = v + self.drive(t)
        return v

    def partial_t(self, t: float, phi: np.ndarray) -> np.ndarray:
        if self.drive_rate is None:
            return np.zeros(self.dim)
        return self.drive_rate(t)

    def jacobian(self, t: float, phi: np.ndarray) -> np.ndarray:
        return self.matrix


def _rotation3(rate: float) -> np.ndarray:
    """Planar rotation generator about the gamma axis."""
    return np.array([
        [0.0, -rate, 0.0],
        [rate, 0.0, 0.0],
        [0.0, 0.0, 0.0],
    ])


def _tone_drive(tones: list[tuple[float, float, float]]):
    """Build drive(t) = sum_i a_i (cos(r_i t + p_i), sin(..), 0) and its rate.

    Both callables accept a scalar time or an array of times.
    """
    amps = np.array([a for a, _, _ in tones])
    rates = np.array([r for _, r, _ in tones])
    phases = np.array([p for _, _, p in tones])

    def drive(t) -> np.ndarray:
        ang = np.multiply.outer(np.asarray(t, dtype=float), rates) + phases
        ca = np.sum(amps * np.cos(ang), axis=-1)
        sa = np.sum(amps * np.sin(ang), axis=-1)
        return np.stack([ca, sa, np.zeros_like(ca)], axis=-1)

    def drive_rate(t) -> np.ndarray:
        ang = np.multiply.outer(np.asarray(t, dtype=float), rates) + phases
        ca = -np.sum(amps * rates * np.sin(ang), axis=-1)
        sa = np.sum(amps * rates * np.cos(ang), axis=-1)
        return np.stack([ca, sa, np.zeros_like(ca)], axis=-1)

    return drive, drive_rate


def make_field(spec: SignalSpec, frame: Frame = "fundamental") -> AffineField:
    """Closed-form velocity field of a waveform family.

    ``frame`` selects the rotation rate of the flux-coupled part.  The default
    "fundamental" ties it to the fundamental frequency; for a Harmonic spec an
    overtone order may be passed instead, which moves the corresponding tone
    out of the explicit time term and scales the rigid rotation (and hence the
    vorticity) by that order.  The component sums are frame-independent.
    """
    if isinstance(spec, Balanced):
        _require_fundamental(spec, frame)
        return AffineField(matrix=_rotation3(spec.omega))
    if isinstance(spec, Unbalanced):
        _require_fundamental(spec, frame)
        va, vb = spec.amplitude_alpha, spec.amplitude_beta
        if va <= 0.0 or vb <= 0.0:
            raise ValueError("unbalanced field needs strictly positive amplitudes")
        matrix = np.array([
            [0.0, -spec.omega * va / vb, 0.0],
            [spec.omega * vb / va, 0.0, 0.0],
            [0.0, 0.0, 0.0],
        ])
        return AffineField(matrix=matrix)
    if isinstance(spec, Harmonic):
        w = spec.omega
        if frame == "fundamental":
            tones = [((1.0 - 1.0 / o.order) * o.amplitude, o.order * w, o.phase)
                     for o in spec.overtones]
            if not tones:
                return AffineField(matrix=_rotation3(w))
            drive, drive_rate = _tone_drive(tones)
            return AffineField(matrix=_rotation3(w), drive=drive, drive_rate=drive_rate)
        k = _frame_order(spec, frame)
        tones = [((1.0 - k) * spec.amplitude, w, spec.phase)]
        tones += [((1.0 - k / o.order) * o.amplitude, o.order * w, o.phase)
                  for o in spec.overtones]
        drive, drive_rate = _tone_drive(tones)
        return AffineField(matrix=_rotation3(k * w), drive=drive, drive_rate=drive_rate)
    if isinstance(spec, Dc):
        _require_fundamental(spec, frame)
        level = spec.level

        def constant_drive(t):
            return np.full(np.shape(t) + (1,), level)

        return AffineField(
            matrix=np.array([[spec.rate]]),
            drive=constant_drive,
            drive_rate=None,
        )
    raise TypeError(f"unknown signal spec {type(spec).__name__}")


def _require_fundamental(spec: SignalSpec, frame: Frame):
    if frame != "fundamental":
        raise ValueError(f"frame {frame!r} is only valid for harmonic specs, not {type(spec).__name__}")


def _frame_order(spec: Harmonic, frame: Frame) -> int:
    orders = [o.order for o in spec.overtones]
    if not isinstance(frame, int) or isinstance(frame, bool) or frame not in orders:
        raise ValueError(f"frame must be 'fundamental' or one of the overtone orders {orders}, got {frame!r}")
    return frame


@dataclass(frozen=True)
class FieldDecomposition:
    """Pointwise Jacobian split plus its scalar/axial invariants."""

    S: np.ndarray
    R: np.ndarray
    Q: np.ndarray
    divergence: float
    vorticity: np.ndarray  # always a 3-vector; identically zero for 1-d fields


def decompose(field: VelocityField, t: float, phi) -> FieldDecomposition:
    """Split the field Jacobian at (t, phi) into strain and rotation parts."""
    phi = np.asarray(phi, dtype=float)
    j = np.asarray(field.jacobian(t, phi), dtype=float)
    s, r, q = decompose_matrix(j)
    div = float(np.trace(j))
    n = j.shape[0]
    if n == 3:
        vort = hodge3(j.T - j)
    elif n == 1:
        vort = np.zeros(3)
    else:
        raise ValueError(f"vorticity is defined here for 1- or 3-dimensional fields, got n={n}")
    return FieldDecomposition(S=s, R=r, Q=q, divergence=div, vorticity=vort)


def lagrange_derivative(field: VelocityField, t: float, phi) -> np.ndarray:
    """Total derivative along the stream-line: partial_t v + (S+R+Q) v."""
    phi = np.asarray(phi, dtype=float)
    dec = decompose(field, t, phi)
    v = field.velocity(t, phi)
    return field.partial_t(t, phi) + dec.S @ v + dec.R @ v + dec.Q @ v


@dataclass(frozen=True)
class FrequencyComponents:
    """Geometric-frequency components by mechanism.

    rho_t/omega_t come from the explicit time variation, rho_s from the
    divergence, rho_r/omega_r from the shear strain and half_w is half the
    vorticity (the rigid rotation).  rho_v and omega_v are the sums and equal
    the direct geometric frequency of (v, v').
    """

    rho_t: float
    rho_s: float
    rho_r: float
    rho_v: float
    omega_t: np.ndarray
    omega_r: np.ndarray
    half_w: np.ndarray
    omega_v: np.ndarray


def frequency_components(field: VelocityField, t: float, phi,
                         min_magnitude: float = 0.0) -> FrequencyComponents:
    """Decomposed geometric frequency of the field at a trajectory point."""
    phi = np.asarray(phi, dtype=float)
    v = field.velocity(t, phi)
    norm2 = float(v @ v)
    if not np.isfinite(norm2) or norm2 <= max(min_magnitude, 0.0) ** 2 or norm2 == 0.0:
        raise SingularMagnitudeError(f"|v| = {np.sqrt(max(norm2, 0.0)):.3e} is too small")
    dtv = field.partial_t(t, phi)
    dec = decompose(field, t, phi)
    n = field.dim
    rv = dec.R @ v
    rho_t = float(v @ dtv) / norm2
    rho_s = dec.divergence / n
    rho_r = float(v @ rv) / norm2
    if n == 3:
        omega_t = np.cross(v, dtv) / norm2
        omega_r = np.cross(v, rv) / norm2
        half_w = 0.5 * dec.vorticity
    elif n == 1:
        omega_t = np.zeros(3)
        omega_r = np.zeros(3)
        half_w = np.zeros(3)
    else:
        raise ValueError(f"rotation components are defined here for n in {{1, 3}}, got n={n}")
    return FrequencyComponents(
        rho_t=rho_t, rho_s=rho_s, rho_r=rho_r, rho_v=rho_t + rho_s + rho_r,
        omega_t=omega_t, omega_r=omega_r, half_w=half_w,
        omega_v=omega_t + omega_r + half_w,
    )


@dataclass(frozen=True)
class ComponentsSeries:
    """Per-sample frequency components along a flux trajectory."""

    times: np.ndarray
    rho_t: np.ndarray
    rho_s: np.ndarray
    rho_r: np.ndarray
    rho_v: np.ndarray
    omega_t: np.ndarray  # (N, 3)
    omega_r: np.ndarray
    half_w: np.ndarray
    omega_v: np.ndarray
    dim: int


def components_series(field: VelocityField, times, flux) -> ComponentsSeries:
    """Evaluate ``frequency_components`` along a sampled trajectory.

    Affine fields take a vectorized path (constant Jacobian, batched drive);
    anything else falls back to a per-sample loop.
    """
    times = np.asarray(times, dtype=float)
    flux = np.asarray(flux, dtype=float)
    if flux.ndim != 2 or flux.shape[0] != times.shape[0]:
        raise ValueError("times and flux must have matching sample counts")
    if isinstance(field, AffineField):
        return _affine_components_series(field, times, flux)
    count = times.shape[0]
    rho = np.empty((count, 4))
    omegas = np.empty((count, 4, 3))
    for i in range(count):
        c = frequency_components(field, times[i], flux[i])
        rho[i] = (c.rho_t, c.rho_s, c.rho_r, c.rho_v)
        omegas[i, 0] = c.omega_t
        omegas[i, 1] = c.omega_r
        omegas[i, 2] = c.half_w
        omegas[i, 3] = c.omega_v
    return ComponentsSeries(
        times=times,
        rho_t=rho[:, 0], rho_s=rho[:, 1], rho_r=rho[:, 2], rho_v=rho[:, 3],
        omega_t=omegas[:, 0], omega_r=omegas[:, 1],
        half_w=omegas[:, 2], omega_v=omegas[:, 3],
        dim=field.dim,
    )


def _affine_components_series(field: AffineField, times, flux) -> ComponentsSeries:
    n = field.dim
    count = times.shape[0]
    dec = decompose(field, times[0], flux[0])
    v = flux @ field.matrix.T
    if field.drive is not None:
        v = v + field.drive(times)
    dtv = field.drive_rate(times) if field.drive_rate is not None else np.zeros_like(v)
    norm2 = np.einsum("ij,ij->i", v, v)
    if not np.all(np.isfinite(norm2)) or np.any(norm2 == 0.0):
        bad = int(np.argmin(np.nan_to_num(norm2, nan=-1.0)))
        raise SingularMagnitudeError(f"|v| vanishes at sample {bad}")
    rv = v @ dec.R.T
    rho_t = np.einsum("ij,ij->i", v, dtv) / norm2
    rho_s = np.full(count, dec.divergence / n)
    rho_r = np.einsum("ij,ij->i", v, rv) / norm2
    if n == 3:
        omega_t = np.cross(v, dtv) / norm2[:, None]
        omega_r = np.cross(v, rv) / norm2[:, None]
    else:
        omega_t = np.zeros((count, 3))
        omega_r = np.zeros((count, 3))
    half_w = np.tile(0.5 * dec.vorticity, (count, 1))
    return ComponentsSeries(
        times=times,
        rho_t=rho_t, rho_s=rho_s, rho_r=rho_r, rho_v=rho_t + rho_s + rho_r,
        omega_t=omega_t, omega_r=omega_r, half_w=half_w,
        omega_v=omega_t + omega_r + half_w,
        dim=n,
    )


def helmholtz_residual(field: VelocityField, t: float, phi) -> float:
    """Norm of wedge(v, partial_t v)/|v|^2.

    Zero everywhere exactly when the field lines are material curves; for the
    stationary families the explicit term vanishes and so does the residual.
    """
    phi = np.asarray(phi, dtype=float)
    v = field.velocity(t, phi)
    norm2 = float(v @ v)
    if norm2 == 0.0 or not np.isfinite(norm2):
        raise SingularMagnitudeError("|v| = 0: residual undefined")
    return float(np.linalg.norm(wedge(v, field.partial_t(t, phi)))) / norm2


def fd_jacobian(field: VelocityField, t: float, phi, step: float = 1e-6) -> np.ndarray:
    """Central-difference flux Jacobian, the oracle for closed-form Jacobians."""
    if step <= 0.0:
        raise ValueError(f"step must be > 0, got {step}")
    phi = np.asarray(phi, dtype=float)
    n = field.dim
    jac = np.empty((n, n))
    for j in range(n):
        offset = np.zeros(n)
        offset[j] = step
        jac[:, j] = (field.velocity(t, phi + offset) - field.velocity(t, phi - offset)) / (2.0 * step)
    return jac


def integrate_streamline(field: VelocityField, phi0, grid: SampleGrid) -> np.ndarray:
    """Integrate phi' = v(t, phi) with the classic fourth-order one-step method.

    Returns the flux at every grid time, starting from phi0 at grid.t0.
    """
    phi = np.asarray(phi0, dtype=float).copy()
    if phi.shape != (field.dim,):
        raise ValueError(f"phi0 must have shape ({field.dim},), got {phi.shape}")
    dt = grid.dt
    times = grid.times()
    out = np.empty((grid.count, field.dim))
    out[0] = phi
    with np.errstate(over="ignore", invalid="ignore"):
        for i in range(grid.count - 1):
            t = times[i]
            k1 = field.velocity(t, phi)
            k2 = field.velocity(t + 0.5 * dt, phi + 0.5 * dt * k1)
            k3 = field.velocity(t + 0.5 * dt, phi + 0.5 * dt * k2)
            k4 = field.velocity(t + dt, phi + dt * k3)
            phi = phi + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            if not np.all(np.isfinite(phi)):
                raise FloatingPointError(f"stream-line integration overflowed at step {i + 1}")
            out[i + 1] = phi
    return out
