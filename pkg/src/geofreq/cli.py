"""Command-line front end, a thin client of the analysis service.

Every command marshals its arguments into the service's request models and
posts them over HTTP.  By default the bundled service runs in-process behind
an ASGI transport; pass ``--server URL`` to target a running instance instead.

Exit codes: 0 ok, 2 usage, 3 CSV parse error, 4 numeric singularity.
"""

from __future__ import annotations

import argparse
import asyncio
import sys
from pathlib import Path

import httpx
import numpy as np

from . import csvio
from .errors import CsvFormatError
from .fixtures import CASES, DEFAULT_ORDERS

DEFAULT_DURATION = 0.04
DEFAULT_DT = 1e-5
MIN_SAMPLES_PER_CYCLE = 40


class UsageError(Exception):
    pass


class ServiceError(Exception):
    def __init__(self, exit_code: int, message: str):
        super().__init__(message)
        self.exit_code = exit_code


def _post(server: str | None, path: str, payload: dict) -> dict:
    if server:
        with httpx.Client(base_url=server, timeout=120.0) as client:
            resp = client.post(path, json=payload)
    else:
        resp = asyncio.run(_post_in_process(path, payload))
    if resp.status_code == 200:
        return resp.json()
    detail = None
    try:
        detail = resp.json().get("detail")
    except Exception:
        pass
    if isinstance(detail, dict):
        code = detail.get("code")
        message = detail.get("message", str(detail))
        if code in ("singular-magnitude", "insufficient-data"):
            raise ServiceError(4, message)
        raise ServiceError(2, message)
    raise ServiceError(2, f"service rejected request (HTTP {resp.status_code}): {detail}")


async def _post_in_process(path: str, payload: dict) -> httpx.Response:
    from .service import app

    transport = httpx.ASGITransport(app=app)
    async with httpx.AsyncClient(transport=transport, base_url="http://geofreq.local") as client:
        return await client.post(path, json=payload)


def _count(args) -> int:
    count = int(round(args.duration / args.dt))
    if count < 2:
        raise UsageError(f"duration {args.duration} s at dt {args.dt} s gives fewer than 2 samples")
    return count


def _check_harmonic_dt(args) -> None:
    # Keep at least MIN_SAMPLES_PER_CYCLE samples per highest-order cycle.
    h_max = max(DEFAULT_ORDERS)
    limit = 1.0 / (MIN_SAMPLES_PER_CYCLE * args.f0 * h_max)
    if args.dt >= limit:
        raise UsageError(
            f"dt {args.dt} s too coarse for the harmonic fixture: need dt < {limit:.3e} s")


def _case_payload(args) -> dict:
    payload = {"case": args.case, "f0": args.f0}
    if getattr(args, "amplitude", None) is not None:
        payload["amplitude"] = args.amplitude
    if getattr(args, "phase", None) is not None:
        payload["phase"] = args.phase
    if getattr(args, "beta_ratio", None) is not None:
        payload["beta_ratio"] = args.beta_ratio
    if getattr(args, "dc_level", None) is not None:
        payload["dc_level"] = args.dc_level
    if getattr(args, "dc_rate", None) is not None:
        payload["dc_rate"] = args.dc_rate
    return payload


def _grid_payload(args) -> dict:
    return {"t0": args.t0, "dt": args.dt, "count": _count(args)}


def _read_samples(path) -> dict:
    times, values = csvio.read_signal_csv(path)
    return {"times": times.tolist(), "values": values.tolist()}


def cmd_synth(args) -> int:
    if args.case == "harmonic":
        _check_harmonic_dt(args)
    data = _post(args.server, "/signal",
                 {"signal": _case_payload(args), "grid": _grid_payload(args)})
    csvio.write_signal_csv(args.out, np.array(data["times"]), np.array(data["v"]))
    return 0


def cmd_analyze(args) -> int:
    if args.input is not None:
        if args.derivative == "analytic":
            raise UsageError("--derivative analytic needs --case, not --input")
        payload = {"samples": _read_samples(args.input), "derivative": "numeric"}
    else:
        if args.case == "harmonic":
            _check_harmonic_dt(args)
        payload = {
            "signal": _case_payload(args),
            "grid": _grid_payload(args),
            "derivative": args.derivative or "analytic",
        }
    data = _post(args.server, "/frequency", payload)
    times = np.array(data["times"])
    rho = np.array([np.nan if x is None else x for x in data["rho"]])
    omega = None
    if data["omega"] is not None:
        omega = np.array([[np.nan] * 3 if row is None else row for row in data["omega"]])
    csvio.write_frequency_csv(args.out, times, rho, omega)
    masked = sum(1 for ok in data["valid"] if not ok)
    if masked:
        print(f"note: {masked} singular sample(s) written as nan", file=sys.stderr)
    return 0


def cmd_decompose(args) -> int:
    if args.case == "harmonic":
        _check_harmonic_dt(args)
    frame: str | int = args.frame
    if frame != "fundamental":
        try:
            frame = int(frame)
        except ValueError:
            raise UsageError(f"--frame must be 'fundamental' or a harmonic order, got {args.frame!r}")
    data = _post(args.server, "/components", {
        "signal": _case_payload(args),
        "grid": _grid_payload(args),
        "frame": frame,
    })
    table = {"t": data["times"], **{k: data[k] for k in csvio.COMPONENTS_HEADER[1:]}}
    csvio.write_components_csv(args.out, table)
    return 0


def cmd_classify(args) -> int:
    if args.input is not None:
        payload = {"samples": _read_samples(args.input), "f0": args.f0,
                   "tol_scale": args.tol_scale}
    else:
        payload = {"signal": _case_payload(args), "grid": _grid_payload(args),
                   "tol_scale": args.tol_scale}
    data = _post(args.server, "/classification", payload)
    print(data["label"])
    print(f"method={data['method']}")
    for key, value in data["features"].items():
        print(f"{key}={value:.6e}")
    return 0


def cmd_figures(args) -> int:
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    grid = {"t0": 0.0, "dt": args.dt, "count": int(round(args.duration / args.dt))}
    for name, case in (("figure1_unbalanced", "unbalanced"), ("figure2_harmonic", "harmonic")):
        signal = {"case": case, "f0": args.f0}
        sig = _post(args.server, "/signal", {"signal": signal, "grid": grid})
        comp = _post(args.server, "/components",
                     {"signal": signal, "grid": grid, "frame": "fundamental"})
        table = {"t": comp["times"], **{k: comp[k] for k in csvio.COMPONENTS_HEADER[1:]}}
        csvio.write_figure_csv(outdir / f"{name}.csv", np.array(sig["v"]), table)
        print(f"wrote {outdir / f'{name}.csv'}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("geofreq.service:app", host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geofreq",
        description="Synthesize, analyze, decompose and classify multi-phase waveforms.",
    )
    parser.add_argument("--server", default=None,
                        help="base URL of a running geofreq service (default: in-process)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_grid(sp):
        sp.add_argument("--f0", type=float, default=50.0, help="fundamental frequency, Hz")
        sp.add_argument("--duration", type=float, default=DEFAULT_DURATION, help="capture length, s")
        sp.add_argument("--dt", type=float, default=DEFAULT_DT, help="sample step, s")
        sp.add_argument("--t0", type=float, default=0.0, help="start time, s")

    def add_overrides(sp):
        sp.add_argument("--amplitude", type=float, default=None)
        sp.add_argument("--phase", type=float, default=None)
        sp.add_argument("--beta-ratio", dest="beta_ratio", type=float, default=None)
        sp.add_argument("--dc-level", dest="dc_level", type=float, default=None)
        sp.add_argument("--dc-rate", dest="dc_rate", type=float, default=None)

    sp = sub.add_parser("synth", help="synthesize a fixture into a signal CSV")
    sp.add_argument("--case", choices=CASES, required=True)
    add_grid(sp)
    add_overrides(sp)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_synth)

    sp = sub.add_parser("analyze", help="geometric-frequency series of a CSV or fixture")
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--input", default=None, help="signal CSV to analyze (numeric derivative)")
    group.add_argument("--case", choices=CASES, default=None)
    add_grid(sp)
    add_overrides(sp)
    sp.add_argument("--derivative", choices=("analytic", "numeric"), default=None)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("decompose", help="frequency components of an analytic fixture")
    sp.add_argument("--case", choices=CASES, required=True)
    sp.add_argument("--frame", default="fundamental",
                    help="'fundamental' or a harmonic order (harmonic case only)")
    add_grid(sp)
    add_overrides(sp)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("classify", help="label the operating condition")
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--input", default=None, help="signal CSV to classify (sampled path)")
    group.add_argument("--case", choices=CASES, default=None)
    add_grid(sp)
    add_overrides(sp)
    sp.add_argument("--tol-scale", dest="tol_scale", type=float, default=1e-3,
                    help="threshold as a fraction of the fundamental frequency")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("figures", help="emit the reference figure curves as CSV")
    sp.add_argument("--outdir", required=True)
    sp.add_argument("--f0", type=float, default=50.0)
    sp.add_argument("--duration", type=float, default=DEFAULT_DURATION)
    sp.add_argument("--dt", type=float, default=DEFAULT_DT)
    sp.set_defaults(func=cmd_figures)

    sp = sub.add_parser("serve", help="run the HTTP service")
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--port", type=int, default=8000)
    sp.set_defaults(func=cmd_serve)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CsvFormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 3
    except ServiceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (OSError, httpx.HTTPError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
