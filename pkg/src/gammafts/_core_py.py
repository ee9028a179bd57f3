"""Pure numpy implementations of the hot kernels.

This is the fallback backend used when the compiled extension is not built.
Arithmetic here must stay branch-for-branch identical to ``_core_cy.pyx``
(and to ``FuzzySet.membership``): same operands, same order, so that both
backends produce bit-identical grades and the two SOM backends match up to
vectorized-libm rounding.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND = "python"


def _candidate_grades(x: np.ndarray, j: np.ndarray, lowers: np.ndarray,
                      centers: np.ndarray, uppers: np.ndarray) -> np.ndarray:
    """Triangular/shoulder membership of each x in its candidate set j."""
    lo = lowers[j]
    c = centers[j]
    up = uppers[j]
    with np.errstate(divide="ignore", invalid="ignore"):
        g_left = (x - lo) / (c - lo)
        g_right = (up - x) / (up - c)
    grades = np.ones_like(x)
    left = x < c
    right = x > c
    grades = np.where(
        left, np.where(lo == c, 1.0, np.where(x <= lo, 0.0, g_left)), grades)
    grades = np.where(
        right, np.where(up == c, 1.0, np.where(x >= up, 0.0, g_right)), grades)
    return grades


def max_membership_column(x: np.ndarray, lowers: np.ndarray,
                          centers: np.ndarray, uppers: np.ndarray) -> np.ndarray:
    """Index of the maximum-membership set for every value of a column.

    Ties resolve to the lower set index, matching
    ``LinguisticVariable.best_set``.
    """
    x = np.ascontiguousarray(x, dtype=np.float64)
    n_sets = len(centers)
    i = np.searchsorted(centers, x)
    j1 = np.clip(i - 1, 0, n_sets - 1)
    j2 = np.clip(i, 0, n_sets - 1)
    g1 = _candidate_grades(x, j1, lowers, centers, uppers)
    g2 = _candidate_grades(x, j2, lowers, centers, uppers)
    return np.where(g1 >= g2, j1, j2).astype(np.int64)


def som_bmu_batch(grid: np.ndarray, data: np.ndarray,
                  chunk: int = 4096) -> np.ndarray:
    """Linear index of the best-matching cell for every data row.

    First index wins on equidistant cells.
    """
    out = np.empty(len(data), dtype=np.int64)
    for start in range(0, len(data), chunk):
        block = data[start:start + chunk]
        diff = block[:, None, :] - grid[None, :, :]
        d2 = np.einsum("tcm,tcm->tc", diff, diff)
        out[start:start + chunk] = np.argmin(d2, axis=1)
    return out


def som_train(grid: np.ndarray, data: np.ndarray, alpha0: float,
              sigma0: float, alpha_final: float, sigma_final: float,
              epochs: int) -> None:
    """Run the SOM training loop in place over ``epochs`` passes.

    Per sample: locate the best-matching cell, then pull every cell toward
    the sample with a Gaussian factor of its weight-space distance to the
    best-matching cell's pre-update weights. Learning rate and radius decay
    geometrically over the global step count.
    """
    n = len(data)
    total = epochs * n
    log_ar = math.log(alpha_final / alpha0)
    log_sr = math.log(sigma_final / sigma0)
    for step in range(total):
        y = data[step % n]
        diff = grid - y
        d2 = np.einsum("cm,cm->c", diff, diff)
        u = int(np.argmin(d2))
        frac = step / total
        alpha = alpha0 * math.exp(log_ar * frac)
        sigma = sigma0 * math.exp(log_sr * frac)
        wu = grid[u].copy()
        gdiff = grid - wu
        gd2 = np.einsum("cm,cm->c", gdiff, gdiff)
        f = alpha * np.exp(-gd2 / (2.0 * sigma * sigma))
        grid += f[:, None] * (y - grid)
