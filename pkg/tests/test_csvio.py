import math
import re

import numpy as np
import pytest
from numpy.testing import assert_allclose

from geofreq import CsvFormatError, SampleGrid, clarke_inverse, synthesize
from geofreq.csvio import (
    COMPONENTS_HEADER,
    read_signal_csv,
    write_components_csv,
    write_frequency_csv,
    write_signal_csv,
)
from geofreq.fixtures import build_spec

W0 = 2.0 * math.pi * 50.0

FLOAT_FIELD = re.compile(r"^-?\d\.\d{16}e[+-]\d{2,3}$|^nan$")


@pytest.fixture()
def balanced_bundle():
    return synthesize(build_spec("balanced"), SampleGrid(0.0, 1e-5, 200))


class TestSignalRoundTrip:
    def test_three_phase(self, tmp_path, balanced_bundle):
        path = tmp_path / "sig.csv"
        write_signal_csv(path, balanced_bundle.grid.times(), balanced_bundle.v)
        t, v = read_signal_csv(path)
        assert_allclose(t, balanced_bundle.grid.times(), rtol=0, atol=0)
        assert_allclose(v, balanced_bundle.v, rtol=0, atol=0)

    def test_one_dimensional(self, tmp_path):
        b = synthesize(build_spec("dc"), SampleGrid(0.0, 1e-3, 50))
        path = tmp_path / "dc.csv"
        write_signal_csv(path, b.grid.times(), b.v)
        assert path.read_text().splitlines()[0] == "t,v_dc"
        t, v = read_signal_csv(path)
        assert v.shape == (50, 1)
        assert_allclose(v, b.v, rtol=0, atol=0)

    def test_abc_header_is_converted(self, tmp_path, balanced_bundle):
        path = tmp_path / "abc.csv"
        abc = clarke_inverse(balanced_bundle.v)
        lines = ["t,v_a,v_b,v_c"]
        for t, row in zip(balanced_bundle.grid.times(), abc):
            lines.append(",".join(f"{x:.16e}" for x in (t, *row)))
        path.write_text("\n".join(lines) + "\n")
        _, v = read_signal_csv(path)
        assert_allclose(v, balanced_bundle.v, atol=1e-12)

    def test_deterministic_bytes(self, tmp_path, balanced_bundle):
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        write_signal_csv(p1, balanced_bundle.grid.times(), balanced_bundle.v)
        write_signal_csv(p2, balanced_bundle.grid.times(), balanced_bundle.v)
        assert p1.read_bytes() == p2.read_bytes()


class TestFormat:
    def test_lf_endings_and_digit_budget(self, tmp_path, balanced_bundle):
        path = tmp_path / "sig.csv"
        write_signal_csv(path, balanced_bundle.grid.times(), balanced_bundle.v)
        raw = path.read_bytes()
        assert b"\r" not in raw
        for line in raw.decode().splitlines()[1:3]:
            for field in line.split(","):
                assert FLOAT_FIELD.match(field), field

    def test_nan_written_for_masked_values(self, tmp_path):
        path = tmp_path / "freq.csv"
        write_frequency_csv(path, [0.0, 1.0], [0.5, np.nan],
                            np.array([[0.0, 0.0, 1.0], [np.nan] * 3]))
        lines = path.read_text().splitlines()
        assert lines[0] == "t,rho,omega_x,omega_y,omega_z"
        assert lines[2].split(",")[1] == "nan"

    def test_components_header_pinned(self, tmp_path):
        cols = {k: [0.0, 1.0] for k in COMPONENTS_HEADER}
        path = tmp_path / "comp.csv"
        write_components_csv(path, cols)
        assert path.read_text().splitlines()[0] == ",".join(COMPONENTS_HEADER)


class TestParseErrors:
    def test_bad_float_reports_row(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("t,v_alpha,v_beta,v_gamma\n0.0,1.0,0.0,0.0\n1e-5,oops,0.0,0.0\n")
        with pytest.raises(CsvFormatError) as err:
            read_signal_csv(path)
        assert err.value.row == 3

    def test_truncated_row_reports_row(self, tmp_path):
        path = tmp_path / "trunc.csv"
        path.write_text("t,v_alpha,v_beta,v_gamma\n0.0,1.0,0.0,0.0\n1e-5,1.0\n")
        with pytest.raises(CsvFormatError) as err:
            read_signal_csv(path)
        assert err.value.row == 3

    def test_unknown_header(self, tmp_path):
        path = tmp_path / "hdr.csv"
        path.write_text("time,volts\n0.0,1.0\n")
        with pytest.raises(CsvFormatError) as err:
            read_signal_csv(path)
        assert err.value.row == 1

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("")
        with pytest.raises(CsvFormatError):
            read_signal_csv(path)

    def test_non_uniform_times(self, tmp_path):
        path = tmp_path / "jitter.csv"
        path.write_text("t,v_alpha,v_beta,v_gamma\n"
                        "0.0,1.0,0.0,0.0\n1e-5,1.0,0.0,0.0\n5e-5,1.0,0.0,0.0\n")
        with pytest.raises(CsvFormatError):
            read_signal_csv(path)

    def test_single_sample_rejected(self, tmp_path):
        path = tmp_path / "one.csv"
        path.write_text("t,v_alpha,v_beta,v_gamma\n0.0,1.0,0.0,0.0\n")
        with pytest.raises(CsvFormatError):
            read_signal_csv(path)
