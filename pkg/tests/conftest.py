import numpy as np
import pytest

from gammafts.dataio import MultivariateSeries


def make_series(values, names=None, target=None, start="2020-01-01",
                step_minutes=10):
    """Build a series with regular timestamps from a (T, M) array."""
    values = np.asarray(values, dtype=np.float64)
    if values.ndim == 1:
        values = values[:, None]
    t, m = values.shape
    if names is None:
        names = tuple(f"v{i}" for i in range(m))
    names = tuple(names)
    if target is None:
        target = names[-1]
    start_ns = np.datetime64(start, "ns")
    step = np.timedelta64(step_minutes * 60_000_000_000, "ns")
    timestamps = start_ns + step * np.arange(t)
    return MultivariateSeries(timestamps, names, values, target)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
