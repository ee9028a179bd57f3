"""Principal component embedding on centered training data.

The eigendecomposition is a cyclic Jacobi rotation solver: the covariance
matrix is symmetric PSD and small (M up to a few dozen), where Jacobi is
simple, robust, and accurate to machine precision.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import ArgumentError, NumericError

__all__ = ["PcaModel", "pca_fit", "pca_embed", "jacobi_eigh"]


def jacobi_eigh(matrix: np.ndarray, tol: float = 1e-13,
                max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and eigenvectors of a symmetric matrix by cyclic Jacobi.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvalues descending and
    eigenvectors in the matching columns. Convergence is declared when the
    off-diagonal Frobenius norm falls below ``tol`` relative to the matrix
    norm; exceeding ``max_sweeps`` raises :class:`NumericError`.
    """
    a = np.array(matrix, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ArgumentError("matrix must be square")
    if not np.allclose(a, a.T, rtol=0, atol=1e-10 * max(1.0, np.abs(a).max())):
        raise ArgumentError("matrix must be symmetric")
    m = a.shape[0]
    v = np.eye(m)
    if m == 1:
        return a.diagonal().copy(), v
    scale = np.linalg.norm(a)
    if scale == 0.0:
        return np.zeros(m), v

    def off_norm() -> float:
        return np.sqrt((a ** 2).sum() - (a.diagonal() ** 2).sum())

    converged = False
    for _ in range(max_sweeps):
        if off_norm() <= tol * scale:
            converged = True
            break
        for p in range(m - 1):
            for q in range(p + 1, m):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp, cq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        converged = off_norm() <= tol * scale
    if not converged:
        raise NumericError("Jacobi eigensolver failed to converge")

    eigenvalues = a.diagonal().copy()
    order = np.argsort(-eigenvalues, kind="stable")
    return eigenvalues[order], v[:, order]


@dataclass(frozen=True)
class PcaModel:
    """Fitted principal-component projection.

    ``components`` is M x K with orthonormal columns sorted by descending
    eigenvalue; each column's largest-magnitude entry is positive.
    """

    mean: np.ndarray
    components: np.ndarray
    eigenvalues: np.ndarray

    @property
    def k(self) -> int:
        return self.components.shape[1]

    def embed_matrix(self, x: np.ndarray) -> np.ndarray:
        return (np.asarray(x, dtype=np.float64) - self.mean) @ self.components

    def to_dict(self) -> dict:
        return {
            "mean": self.mean.tolist(),
            "shape": list(self.components.shape),
            "components": self.components.ravel(order="C").tolist(),
            "eigenvalues": self.eigenvalues.tolist(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PcaModel":
        shape = tuple(d["shape"])
        comp = np.asarray(d["components"], dtype=np.float64).reshape(shape)
        return cls(np.asarray(d["mean"], dtype=np.float64), comp,
                   np.asarray(d["eigenvalues"], dtype=np.float64))


def pca_fit(train: np.ndarray, k: int) -> PcaModel:
    """Fit a K-component PCA on a T x M training matrix.

    Data is centered before the sample covariance is formed (the projection
    subtracts the training mean as well), and the retained eigenvalues are
    clamped at zero against covariance round-off.
    """
    x = np.asarray(train, dtype=np.float64)
    if x.ndim != 2:
        raise ArgumentError("training data must be a T x M matrix")
    t, m = x.shape
    if t < 2:
        raise ArgumentError(f"need at least 2 rows to fit PCA, got {t}")
    if not 1 <= k <= m:
        raise ArgumentError(f"k must be in [1, {m}], got {k}")
    if not np.isfinite(x).all():
        raise ArgumentError("training data contains non-finite values")

    mean = x.mean(axis=0)
    centered = x - mean
    cov = centered.T @ centered / (t - 1)
    eigenvalues, vectors = jacobi_eigh(cov)
    eigenvalues = np.maximum(eigenvalues[:k], 0.0)
    components = vectors[:, :k].copy()
    for col in range(k):
        i = int(np.argmax(np.abs(components[:, col])))
        if components[i, col] < 0.0:
            components[:, col] = -components[:, col]
    return PcaModel(mean, components, eigenvalues)


def pca_embed(model: PcaModel, y: np.ndarray) -> np.ndarray:
    """Project one M-vector onto the fitted components."""
    y = np.asarray(y, dtype=np.float64)
    if y.shape != model.mean.shape:
        raise ArgumentError(
            f"expected vector of {model.mean.shape[0]} entries, got {y.shape}"
        )
    return model.components.T @ (y - model.mean)
