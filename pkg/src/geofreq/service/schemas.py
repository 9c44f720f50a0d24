"""Request/response models for the analysis service.

Masked samples travel as JSON nulls alongside a boolean validity mask; the
numeric payloads are plain float lists so that values round-trip exactly.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field, model_validator


class GridModel(BaseModel):
    t0: float = 0.0
    dt: float = Field(gt=0.0)
    count: int = Field(ge=2)


class HarmonicModel(BaseModel):
    order: int = Field(ge=2)
    amplitude: float = Field(ge=0.0)
    phase: float = 0.0


class CaseModel(BaseModel):
    """Named waveform fixture with optional parameter overrides."""

    case: Literal["balanced", "unbalanced", "harmonic", "dc"]
    f0: float = Field(default=50.0, gt=0.0)
    amplitude: float = Field(default=1.0, ge=0.0)
    phase: float | None = None
    beta_ratio: float = Field(default=1.2, gt=0.0)
    harmonics: list[HarmonicModel] | None = None
    dc_level: float = 1.0
    dc_rate: float = -0.5


class SamplesModel(BaseModel):
    """Sampled waveform: times plus (N, 1) or (N, 3) Clarke-frame rows."""

    times: list[float]
    values: list[list[float]]

    @model_validator(mode="after")
    def _check_shape(self):
        if len(self.times) != len(self.values):
            raise ValueError("times and values must have the same length")
        if len(self.times) < 2:
            raise ValueError("need at least 2 samples")
        widths = {len(row) for row in self.values}
        if len(widths) != 1 or widths.pop() not in (1, 3):
            raise ValueError("values must be uniform rows of width 1 or 3")
        return self


class SignalRequest(BaseModel):
    signal: CaseModel
    grid: GridModel


class SignalResponse(BaseModel):
    case: str
    dim: int
    times: list[float]
    v: list[list[float]]
    v_prime: list[list[float]]
    flux: list[list[float]]


class FrequencyRequest(BaseModel):
    samples: SamplesModel | None = None
    signal: CaseModel | None = None
    grid: GridModel | None = None
    derivative: Literal["analytic", "numeric"] | None = None

    @model_validator(mode="after")
    def _check_source(self):
        if (self.samples is None) == (self.signal is None):
            raise ValueError("provide exactly one of samples or signal")
        if self.signal is not None and self.grid is None:
            raise ValueError("signal input needs a grid")
        if self.samples is not None and self.derivative == "analytic":
            raise ValueError("analytic derivative needs a signal, not samples")
        return self

    @property
    def derivative_source(self) -> str:
        if self.derivative is not None:
            return self.derivative
        return "numeric" if self.samples is not None else "analytic"


class FrequencyResponse(BaseModel):
    dim: int
    times: list[float]
    rho: list[float | None]
    omega: list[list[float] | None] | None
    valid: list[bool]


class ComponentsRequest(BaseModel):
    signal: CaseModel
    grid: GridModel
    frame: Literal["fundamental"] | int = "fundamental"


class ComponentsResponse(BaseModel):
    dim: int
    times: list[float]
    rho_t: list[float]
    rho_s: list[float]
    rho_r: list[float]
    rho_v: list[float]
    omega_t_z: list[float]
    omega_r_z: list[float]
    half_w_z: list[float]
    omega_v_z: list[float]


class ClassifyRequest(BaseModel):
    samples: SamplesModel | None = None
    signal: CaseModel | None = None
    grid: GridModel | None = None
    f0: float = Field(default=50.0, gt=0.0)
    tol_scale: float = Field(default=1e-3, gt=0.0)

    @model_validator(mode="after")
    def _check_source(self):
        if (self.samples is None) == (self.signal is None):
            raise ValueError("provide exactly one of samples or signal")
        if self.signal is not None and self.grid is None:
            raise ValueError("signal input needs a grid")
        return self


class FeatureModel(BaseModel):
    rms_rho_t: float
    rms_rho_r: float
    rms_omega_t: float
    rms_omega_r: float
    mean_omega_v: float
    dominant_ripple_ratio: float


class ClassifyResponse(BaseModel):
    label: str
    method: Literal["components", "samples"]
    features: FeatureModel


class HealthResponse(BaseModel):
    status: str
    version: str
