"""Forecast accuracy metrics and skill scores.

MAPE and SMAPE are reported in percent. Pairs whose actual value is zero are
skipped by MAPE (the skip count is surfaced via :func:`compute_report`);
SMAPE treats an all-zero pair as contributing zero error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, UndefinedMetricError

__all__ = [
    "MetricReport",
    "rmse",
    "mae",
    "mape",
    "smape",
    "skill_score",
    "compute_report",
]


def _pair(actual, predicted) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(actual, dtype=np.float64)
    p = np.asarray(predicted, dtype=np.float64)
    if a.shape != p.shape or a.ndim != 1:
        raise ArgumentError(f"mismatched shapes {a.shape} vs {p.shape}")
    if a.size == 0:
        raise ArgumentError("empty input")
    if not (np.isfinite(a).all() and np.isfinite(p).all()):
        raise ArgumentError("non-finite values in metric input")
    return a, p


def rmse(actual, predicted) -> float:
    a, p = _pair(actual, predicted)
    return float(np.sqrt(np.mean((a - p) ** 2)))


def mae(actual, predicted) -> float:
    a, p = _pair(actual, predicted)
    return float(np.mean(np.abs(a - p)))


def mape(actual, predicted) -> float:
    """Mean absolute percentage error over the pairs with nonzero actuals."""
    a, p = _pair(actual, predicted)
    scored = a != 0.0
    if not scored.any():
        raise UndefinedMetricError("all actual values are zero; MAPE undefined")
    return float(np.mean(np.abs((a[scored] - p[scored]) / a[scored])) * 100.0)


def mape_skip_count(actual) -> int:
    a = np.asarray(actual, dtype=np.float64)
    return int((a == 0.0).sum())


def smape(actual, predicted) -> float:
    a, p = _pair(actual, predicted)
    denom = np.abs(p) + np.abs(a)
    ratio = np.where(denom == 0.0, 0.0,
                     np.abs(a - p) / np.where(denom == 0.0, 1.0, denom))
    return float(np.mean(ratio) * 100.0)


def skill_score(m_f: float, m_r: float) -> float:
    """1 - metric(forecast)/metric(reference); positive means improvement."""
    if m_r <= 0.0:
        raise ArgumentError(f"reference metric must be positive, got {m_r}")
    return 1.0 - m_f / m_r


@dataclass(frozen=True)
class MetricReport:
    """Accuracy metrics over one set of (actual, predicted) pairs.

    ``mape`` is NaN when every actual is zero; ``mape_skipped`` counts the
    zero-actual pairs excluded from it.
    """

    rmse: float
    mae: float
    mape: float
    smape: float
    n: int
    mape_skipped: int = 0

    def to_dict(self) -> dict:
        return {
            "rmse": self.rmse, "mae": self.mae, "mape": self.mape,
            "smape": self.smape, "n": self.n,
            "mape_skipped": self.mape_skipped,
        }


def compute_report(actual, predicted) -> MetricReport:
    a, p = _pair(actual, predicted)
    skipped = mape_skip_count(a)
    try:
        mape_value = mape(a, p)
    except UndefinedMetricError:
        mape_value = math.nan
    return MetricReport(rmse(a, p), mae(a, p), mape_value, smape(a, p),
                        int(a.size), skipped)
