"""Canonical test fixtures shared by the service, the CLI and the test suite."""

from __future__ import annotations

import math

from .signals import Balanced, Dc, Harmonic, Overtone, SignalSpec, Unbalanced

CASES = ("balanced", "unbalanced", "harmonic", "dc")

# Figure parameters: beta/alpha ratio 1.2 and phase pi/6 for the unbalanced
# case; overtones {7, 11} with amplitude V/(3h) and phase h*phi for the
# harmonic case.
DEFAULT_BETA_RATIO = 1.2
DEFAULT_AC_PHASE = math.pi / 6.0
DEFAULT_ORDERS = (7, 11)
DEFAULT_DC_LEVEL = 1.0
DEFAULT_DC_RATE = -0.5


def build_spec(case: str, f0: float = 50.0, amplitude: float = 1.0,
               phase: float | None = None, beta_ratio: float = DEFAULT_BETA_RATIO,
               harmonics: list[tuple[int, float, float]] | None = None,
               dc_level: float = DEFAULT_DC_LEVEL,
               dc_rate: float = DEFAULT_DC_RATE) -> SignalSpec:
    """Build the named fixture, optionally overriding its parameters."""
    omega = 2.0 * math.pi * f0
    if case == "balanced":
        return Balanced(amplitude=amplitude, omega=omega,
                        phase=0.0 if phase is None else phase)
    if case == "unbalanced":
        ph = DEFAULT_AC_PHASE if phase is None else phase
        return Unbalanced(amplitude_alpha=amplitude,
                          amplitude_beta=beta_ratio * amplitude,
                          omega=omega, phase=ph)
    if case == "harmonic":
        ph = DEFAULT_AC_PHASE if phase is None else phase
        if harmonics is None:
            overtones = tuple(Overtone(order=h, amplitude=amplitude / (3.0 * h), phase=h * ph)
                              for h in DEFAULT_ORDERS)
        else:
            overtones = tuple(Overtone(order=h, amplitude=a, phase=p) for h, a, p in harmonics)
        return Harmonic(amplitude=amplitude, omega=omega, phase=ph, overtones=overtones)
    if case == "dc":
        return Dc(level=dc_level, rate=dc_rate)
    raise ValueError(f"unknown case {case!r}; expected one of {CASES}")
