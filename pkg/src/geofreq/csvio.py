"""CSV schemas: comma separated, LF line endings, 17-significant-digit floats.

Signal files carry ``t,v_alpha,v_beta,v_gamma`` (three-phase, Clarke frame),
``t,v_a,v_b,v_c`` (phase quantities, converted on read) or ``t,v_dc``.
Frequency files carry ``t,rho[,omega_x,omega_y,omega_z]`` and component files
the fixed column set written by the decompose command.  Masked values are
written as ``nan``.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import Mapping

import numpy as np

from .errors import CsvFormatError
from .signals import clarke_forward

SIGNAL_HEADER_3 = ["t", "v_alpha", "v_beta", "v_gamma"]
SIGNAL_HEADER_ABC = ["t", "v_a", "v_b", "v_c"]
SIGNAL_HEADER_1 = ["t", "v_dc"]
FREQUENCY_HEADER_3 = ["t", "rho", "omega_x", "omega_y", "omega_z"]
FREQUENCY_HEADER_1 = ["t", "rho"]
COMPONENTS_HEADER = ["t", "rho_t", "rho_s", "rho_r", "rho_v",
                     "omega_t_z", "omega_r_z", "half_w_z", "omega_v_z"]


def _fmt(x) -> str:
    return "nan" if x is None or not np.isfinite(x) else f"{float(x):.16e}"


def write_table(path, header: list[str], columns: list) -> None:
    """Write columns under a header; deterministic bytes for identical input."""
    columns = [np.asarray(col, dtype=float) for col in columns]
    rows = len(columns[0])
    for col in columns:
        if len(col) != rows:
            raise ValueError("all columns must have the same length")
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(",".join(header) + "\n")
        for i in range(rows):
            f.write(",".join(_fmt(col[i]) for col in columns) + "\n")


def write_signal_csv(path, times, values) -> None:
    values = np.asarray(values, dtype=float)
    if values.ndim != 2 or values.shape[1] not in (1, 3):
        raise ValueError(f"expected (N, 1) or (N, 3) sample values, got shape {values.shape}")
    header = SIGNAL_HEADER_3 if values.shape[1] == 3 else SIGNAL_HEADER_1
    write_table(path, header, [times, *values.T])


def read_signal_csv(path) -> tuple[np.ndarray, np.ndarray]:
    """Read a signal CSV; abc files are converted to the Clarke frame.

    Returns (times, values) with values of shape (N, 1) or (N, 3).  Raises
    CsvFormatError with the offending 1-based row number on malformed input.
    """
    text = Path(path).read_text(encoding="utf-8")
    reader = csv.reader(io.StringIO(text))
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise CsvFormatError("empty file", row=1) from None
    if header in (SIGNAL_HEADER_3, SIGNAL_HEADER_ABC):
        width = 4
    elif header == SIGNAL_HEADER_1:
        width = 2
    else:
        raise CsvFormatError(f"unrecognized header {','.join(header)!r}", row=1)
    times: list[float] = []
    rows: list[list[float]] = []
    for i, record in enumerate(reader, start=2):
        if not record:
            continue
        if len(record) != width:
            raise CsvFormatError(f"expected {width} fields, got {len(record)}", row=i)
        try:
            parsed = [float(x) for x in record]
        except ValueError as exc:
            raise CsvFormatError(str(exc), row=i) from None
        times.append(parsed[0])
        rows.append(parsed[1:])
    if len(rows) < 2:
        raise CsvFormatError("need at least 2 samples", row=len(rows) + 2)
    t = np.array(times)
    steps = np.diff(t)
    if np.any(steps <= 0.0) or (steps.max() - steps.min()) > 1e-6 * steps.max():
        raise CsvFormatError("time column must be uniformly increasing", row=2)
    values = np.array(rows)
    if header == SIGNAL_HEADER_ABC:
        values = clarke_forward(values)
    return t, values


def write_frequency_csv(path, times, rho, omega=None) -> None:
    """Frequency series; pass omega as an (N, 3) array or None for 1-d signals."""
    if omega is not None:
        omega = np.asarray(omega, dtype=float)
        write_table(path, FREQUENCY_HEADER_3,
                    [times, rho, omega[:, 0], omega[:, 1], omega[:, 2]])
    else:
        write_table(path, FREQUENCY_HEADER_1, [times, rho])


def write_components_csv(path, columns: Mapping) -> None:
    """Component series from a mapping keyed by the COMPONENTS_HEADER names."""
    write_table(path, COMPONENTS_HEADER, [columns[k] for k in COMPONENTS_HEADER])


def write_figure_csv(path, v, columns: Mapping) -> None:
    """Signal waveform plus its components, one file per reproduced figure."""
    v = np.asarray(v, dtype=float)
    header = SIGNAL_HEADER_3 + COMPONENTS_HEADER[1:]
    write_table(path, header,
                [columns["t"], *v.T] + [columns[k] for k in COMPONENTS_HEADER[1:]])


def components_table(series) -> dict:
    """Column mapping of a ComponentsSeries, keyed by the CSV header names."""
    return {
        "t": series.times,
        "rho_t": series.rho_t, "rho_s": series.rho_s,
        "rho_r": series.rho_r, "rho_v": series.rho_v,
        "omega_t_z": series.omega_t[:, 2], "omega_r_z": series.omega_r[:, 2],
        "half_w_z": series.half_w[:, 2], "omega_v_z": series.omega_v[:, 2],
    }
