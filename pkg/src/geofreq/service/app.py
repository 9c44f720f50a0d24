"""HTTP service exposing synthesis, analysis, decomposition and classification.

All numerics live in the core package; this module only converts between the
wire models and numpy arrays.  Domain errors map to 400 (bad request) or 422
with an error code the CLI translates into exit codes.
"""

from __future__ import annotations

import math

import numpy as np
from fastapi import FastAPI, HTTPException

from .. import __version__
from ..classify import (
    classify_components,
    classify_samples,
    features_from_components,
    features_from_samples,
)
from ..errors import SingularMagnitudeError
from ..fields import components_series, make_field
from ..fixtures import build_spec
from ..frequency import (
    FrequencySeries,
    frequency_series_from_samples,
    geometric_frequency_series,
)
from ..signals import SampleGrid, SignalBundle, numeric_derivative, synthesize
from . import schemas


def _grid(model: schemas.GridModel) -> SampleGrid:
    return SampleGrid(t0=model.t0, dt=model.dt, count=model.count)


def _spec(model: schemas.CaseModel):
    harmonics = None
    if model.harmonics is not None:
        harmonics = [(h.order, h.amplitude, h.phase) for h in model.harmonics]
    try:
        return build_spec(
            model.case, f0=model.f0, amplitude=model.amplitude, phase=model.phase,
            beta_ratio=model.beta_ratio, harmonics=harmonics,
            dc_level=model.dc_level, dc_rate=model.dc_rate,
        )
    except ValueError as exc:
        raise HTTPException(status_code=400, detail={"code": "invalid-request", "message": str(exc)})


def _bundle(signal: schemas.CaseModel, grid: schemas.GridModel) -> SignalBundle:
    try:
        return synthesize(_spec(signal), _grid(grid))
    except ValueError as exc:
        raise HTTPException(status_code=400, detail={"code": "invalid-request", "message": str(exc)})


def _frequency_payload(series: FrequencySeries) -> schemas.FrequencyResponse:
    rho = [float(x) if ok else None for x, ok in zip(series.rho, series.valid)]
    omega = None
    if series.omega is not None:
        omega = [[float(c) for c in row] if ok else None
                 for row, ok in zip(series.omega, series.valid)]
    return schemas.FrequencyResponse(
        dim=series.dim,
        times=[float(t) for t in series.times],
        rho=rho,
        omega=omega,
        valid=[bool(b) for b in series.valid],
    )


def create_app() -> FastAPI:
    app = FastAPI(title="geofreq service", version=__version__)

    @app.get("/health", response_model=schemas.HealthResponse)
    def health():
        return schemas.HealthResponse(status="ok", version=__version__)

    @app.post("/signal", response_model=schemas.SignalResponse)
    def signal(req: schemas.SignalRequest):
        bundle = _bundle(req.signal, req.grid)
        return schemas.SignalResponse(
            case=req.signal.case,
            dim=bundle.dim,
            times=[float(t) for t in bundle.grid.times()],
            v=bundle.v.tolist(),
            v_prime=bundle.v_prime.tolist(),
            flux=bundle.flux.tolist(),
        )

    @app.post("/frequency", response_model=schemas.FrequencyResponse)
    def frequency(req: schemas.FrequencyRequest):
        if req.samples is not None:
            times = np.asarray(req.samples.times)
            values = np.asarray(req.samples.values)
            try:
                vp = numeric_derivative(values, float(times[1] - times[0]))
                series = frequency_series_from_samples(times, values, vp)
            except ValueError as exc:
                raise HTTPException(status_code=400,
                                    detail={"code": "invalid-request", "message": str(exc)})
        else:
            bundle = _bundle(req.signal, req.grid)
            series = geometric_frequency_series(bundle, derivative=req.derivative_source)
        if not np.any(series.valid):
            raise HTTPException(status_code=422, detail={
                "code": "singular-magnitude",
                "message": "no sample has usable magnitude",
            })
        return _frequency_payload(series)

    @app.post("/components", response_model=schemas.ComponentsResponse)
    def components(req: schemas.ComponentsRequest):
        bundle = _bundle(req.signal, req.grid)
        try:
            field = make_field(bundle.spec, frame=req.frame)
            series = components_series(field, bundle.grid.times(), bundle.flux)
        except ValueError as exc:
            raise HTTPException(status_code=400,
                                detail={"code": "invalid-request", "message": str(exc)})
        except SingularMagnitudeError as exc:
            raise HTTPException(status_code=422,
                                detail={"code": "singular-magnitude", "message": str(exc)})
        return schemas.ComponentsResponse(
            dim=series.dim,
            times=series.times.tolist(),
            rho_t=series.rho_t.tolist(),
            rho_s=series.rho_s.tolist(),
            rho_r=series.rho_r.tolist(),
            rho_v=series.rho_v.tolist(),
            omega_t_z=series.omega_t[:, 2].tolist(),
            omega_r_z=series.omega_r[:, 2].tolist(),
            half_w_z=series.half_w[:, 2].tolist(),
            omega_v_z=series.omega_v[:, 2].tolist(),
        )

    @app.post("/classification", response_model=schemas.ClassifyResponse)
    def classification(req: schemas.ClassifyRequest):
        omega0 = 2.0 * math.pi * req.f0
        try:
            if req.signal is not None:
                omega0 = 2.0 * math.pi * req.signal.f0
                bundle = _bundle(req.signal, req.grid)
                field = make_field(bundle.spec)
                series = components_series(field, bundle.grid.times(), bundle.flux)
                label = classify_components(series, omega0, tol=req.tol_scale * omega0)
                features = features_from_components(series, omega0)
                method = "components"
            else:
                times = np.asarray(req.samples.times)
                values = np.asarray(req.samples.values)
                vp = numeric_derivative(values, float(times[1] - times[0]))
                series = frequency_series_from_samples(times, values, vp)
                label = classify_samples(series, omega0, tol=req.tol_scale * omega0)
                features = features_from_samples(series, omega0)
                method = "samples"
        except SingularMagnitudeError as exc:
            raise HTTPException(status_code=422,
                                detail={"code": "singular-magnitude", "message": str(exc)})
        except ValueError as exc:
            code = "insufficient-data" if "insufficient" in str(exc) else "invalid-request"
            status = 422 if code == "insufficient-data" else 400
            raise HTTPException(status_code=status, detail={"code": code, "message": str(exc)})
        return schemas.ClassifyResponse(
            label=label.value,
            method=method,
            features=schemas.FeatureModel(**features.__dict__),
        )

    return app


app = create_app()
