"""Self-organizing map embedding onto a discrete K-dimensional grid.

Training follows the classic per-sample loop: find the best-matching cell,
pull every cell toward the sample with a Gaussian factor of its weight-space
distance to that cell, and decay the learning rate and neighborhood radius
geometrically over the global step count (final values are 1% of the
initial ones). The inner loop runs through the kernel backend.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import kernels
from ..errors import ArgumentError

__all__ = ["SomModel", "som_fit", "som_embed"]

DECAY_FINAL_FRACTION = 0.01
MAX_CELLS = 1 << 22


@dataclass(frozen=True)
class SomModel:
    """Fitted map: ``grid`` holds L**k cells (one M-vector each), flattened
    row-major over the k grid axes."""

    grid: np.ndarray
    k: int
    side: int
    alpha0: float
    sigma0: float

    @property
    def n_cells(self) -> int:
        return self.grid.shape[0]

    def coordinates(self, cell_index) -> np.ndarray:
        coords = np.unravel_index(cell_index, (self.side,) * self.k)
        return np.stack(coords, axis=-1).astype(np.float64)

    def embed_matrix(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        idx = kernels.som_bmu_batch(self.grid, x)
        return self.coordinates(idx).reshape(len(x), self.k)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "side": self.side,
            "alpha0": self.alpha0,
            "sigma0": self.sigma0,
            "shape": list(self.grid.shape),
            "grid": self.grid.ravel(order="C").tolist(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SomModel":
        grid = np.asarray(d["grid"], dtype=np.float64).reshape(d["shape"])
        return cls(np.ascontiguousarray(grid), d["k"], d["side"],
                   d["alpha0"], d["sigma0"])


def som_fit(train: np.ndarray, k: int, side: int = 20, alpha0: float = 1e-5,
            sigma0: float = 12.5, epochs: int = 70,
            seed: int = 0) -> SomModel:
    """Train a k-dimensional map with ``side`` cells per axis.

    Cells initialize uniformly at random inside each variable's training
    range (seeded); samples are presented in series order, repeated for
    ``epochs`` passes.
    """
    x = np.ascontiguousarray(train, dtype=np.float64)
    if x.ndim != 2 or x.shape[0] == 0:
        raise ArgumentError("training data must be a non-empty T x M matrix")
    if k < 1:
        raise ArgumentError(f"k must be >= 1, got {k}")
    if side < 2:
        raise ArgumentError(f"side length must be >= 2, got {side}")
    if alpha0 <= 0 or sigma0 <= 0:
        raise ArgumentError("alpha0 and sigma0 must be positive")
    if epochs < 1:
        raise ArgumentError(f"epochs must be >= 1, got {epochs}")
    if not np.isfinite(x).all():
        raise ArgumentError("training data contains non-finite values")
    n_cells = side ** k
    if n_cells > MAX_CELLS:
        raise ArgumentError(
            f"grid of {side}**{k} = {n_cells} cells exceeds the "
            f"{MAX_CELLS}-cell limit"
        )

    rng = np.random.default_rng(seed)
    grid = rng.uniform(x.min(axis=0), x.max(axis=0),
                       size=(n_cells, x.shape[1]))
    grid = np.ascontiguousarray(grid)
    kernels.som_train(grid, x, alpha0, sigma0,
                      DECAY_FINAL_FRACTION * alpha0,
                      DECAY_FINAL_FRACTION * sigma0, epochs)
    return SomModel(grid, k, side, alpha0, sigma0)


def som_embed(model: SomModel, y: np.ndarray) -> np.ndarray:
    """Grid coordinates (as reals) of the cell nearest ``y``.

    Equidistant cells resolve to the lowest linear index.
    """
    y = np.asarray(y, dtype=np.float64)
    if y.shape != (model.grid.shape[1],):
        raise ArgumentError(
            f"expected vector of {model.grid.shape[1]} entries, got {y.shape}"
        )
    idx = int(kernels.som_bmu_batch(model.grid, y[None, :])[0])
    return model.coordinates(idx)
