import math

import pytest

from geofreq import SampleGrid, synthesize
from geofreq.fixtures import build_spec

W0 = 2.0 * math.pi * 50.0


@pytest.fixture(scope="session")
def two_period_grid():
    """4000 samples at 10 us covering exactly two 50 Hz periods (half-open)."""
    return SampleGrid(t0=0.0, dt=1e-5, count=4000)


@pytest.fixture(scope="session")
def bundles(two_period_grid):
    dc_grid = SampleGrid(t0=0.0, dt=1e-3, count=1000)
    out = {}
    for case in ("balanced", "unbalanced", "harmonic"):
        out[case] = synthesize(build_spec(case), two_period_grid)
    out["dc"] = synthesize(build_spec("dc"), dc_grid)
    return out
