"""Autoencoder embedding trained by seeded mini-batch gradient descent.

A small two-layer encoder (M -> H -> K) with mirrored decoder, softsign
hidden activations, linear bottleneck/output, mean squared reconstruction
loss plus an L1 activity penalty on the first encoder and decoder layers,
optimized with per-parameter accumulated-squared-gradient scaling. Written
directly in numpy: the networks are tiny and this keeps training bit-for-bit
reproducible from the seed alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import ArgumentError, NumericError

__all__ = ["AeHyperparams", "AeModel", "ae_fit", "ae_embed"]


@dataclass(frozen=True)
class AeHyperparams:
    epochs: int = 50
    batch_size: int = 40
    learning_rate: float = 0.1
    hidden: int = 50
    l1: float = 1e-5
    init_std: float = 0.05
    eps: float = 1e-8
    seed: int = 0


def _softsign(z: np.ndarray) -> np.ndarray:
    return z / (1.0 + np.abs(z))


def _softsign_grad(z: np.ndarray) -> np.ndarray:
    d = 1.0 + np.abs(z)
    return 1.0 / (d * d)


_PARAM_NAMES = ("w1", "b1", "w2", "b2", "w3", "b3", "w4", "b4")


@dataclass(frozen=True)
class AeModel:
    """Fitted autoencoder; ``params`` maps layer names to weight arrays.

    Encoder: w1/b1 (M->H, softsign), w2/b2 (H->K, linear).
    Decoder: w3/b3 (K->H, softsign), w4/b4 (H->M, linear).
    """

    params: dict
    activations: tuple[str, ...]
    training_loss_history: tuple[float, ...]
    hyperparams: AeHyperparams

    @property
    def k(self) -> int:
        return self.params["w2"].shape[1]

    @property
    def n_inputs(self) -> int:
        return self.params["w1"].shape[0]

    def encode(self, x: np.ndarray) -> np.ndarray:
        p = self.params
        a1 = _softsign(x @ p["w1"] + p["b1"])
        return a1 @ p["w2"] + p["b2"]

    def decode(self, z: np.ndarray) -> np.ndarray:
        p = self.params
        a3 = _softsign(z @ p["w3"] + p["b3"])
        return a3 @ p["w4"] + p["b4"]

    def embed_matrix(self, x: np.ndarray) -> np.ndarray:
        return self.encode(np.asarray(x, dtype=np.float64))

    def to_dict(self) -> dict:
        return {
            "activations": list(self.activations),
            "loss_history": list(self.training_loss_history),
            "params": {
                name: {"shape": list(np.shape(arr)),
                       "data": np.asarray(arr).ravel(order="C").tolist()}
                for name, arr in self.params.items()
            },
        }

    @classmethod
    def from_dict(cls, d: dict, hyperparams: AeHyperparams) -> "AeModel":
        params = {
            name: np.asarray(spec["data"], dtype=np.float64).reshape(spec["shape"])
            for name, spec in d["params"].items()
        }
        return cls(params, tuple(d["activations"]),
                   tuple(d["loss_history"]), hyperparams)


def _forward_backward(x: np.ndarray, p: dict, l1: float):
    b = x.shape[0]
    z1 = x @ p["w1"] + p["b1"]
    a1 = _softsign(z1)
    emb = a1 @ p["w2"] + p["b2"]
    z3 = emb @ p["w3"] + p["b3"]
    a3 = _softsign(z3)
    out = a3 @ p["w4"] + p["b4"]

    err = out - x
    loss = float(np.mean(err * err))
    loss += l1 * (np.abs(a1).sum() + np.abs(a3).sum()) / b

    d_out = 2.0 * err / err.size
    grads = {}
    grads["w4"] = a3.T @ d_out
    grads["b4"] = d_out.sum(axis=0)
    d_a3 = d_out @ p["w4"].T + (l1 / b) * np.sign(a3)
    d_z3 = d_a3 * _softsign_grad(z3)
    grads["w3"] = emb.T @ d_z3
    grads["b3"] = d_z3.sum(axis=0)
    d_emb = d_z3 @ p["w3"].T
    grads["w2"] = a1.T @ d_emb
    grads["b2"] = d_emb.sum(axis=0)
    d_a1 = d_emb @ p["w2"].T + (l1 / b) * np.sign(a1)
    d_z1 = d_a1 * _softsign_grad(z1)
    grads["w1"] = x.T @ d_z1
    grads["b1"] = d_z1.sum(axis=0)
    return loss, grads


def ae_fit(train: np.ndarray, k: int,
           hp: AeHyperparams = AeHyperparams()) -> AeModel:
    """Train the autoencoder on an already-scaled T x M matrix.

    The caller scales inputs to [0, 1] (see ``fit_embedding``). Weight
    initialization and per-epoch shuffling both derive from ``hp.seed``, so
    repeated fits are bit-identical. Divergence (non-finite loss) raises
    :class:`NumericError` carrying the epoch.
    """
    x = np.asarray(train, dtype=np.float64)
    if x.ndim != 2:
        raise ArgumentError("training data must be a T x M matrix")
    t, m = x.shape
    if t < hp.batch_size:
        raise ArgumentError(
            f"need at least batch_size={hp.batch_size} rows, got {t}"
        )
    if k < 1 or hp.hidden < 1:
        raise ArgumentError("k and hidden layer width must be >= 1")
    if not np.isfinite(x).all():
        raise ArgumentError("training data contains non-finite values")

    rng = np.random.default_rng(hp.seed)
    h = hp.hidden
    p = {
        "w1": rng.normal(0.0, hp.init_std, (m, h)),
        "b1": np.zeros(h),
        "w2": rng.normal(0.0, hp.init_std, (h, k)),
        "b2": np.zeros(k),
        "w3": rng.normal(0.0, hp.init_std, (k, h)),
        "b3": np.zeros(h),
        "w4": rng.normal(0.0, hp.init_std, (h, m)),
        "b4": np.zeros(m),
    }
    acc = {name: np.zeros_like(arr) for name, arr in p.items()}

    history = []
    for epoch in range(hp.epochs):
        order = rng.permutation(t)
        epoch_loss = 0.0
        for start in range(0, t, hp.batch_size):
            batch = x[order[start:start + hp.batch_size]]
            loss, grads = _forward_backward(batch, p, hp.l1)
            if not np.isfinite(loss):
                raise NumericError("training loss diverged", epoch=epoch)
            epoch_loss += loss * batch.shape[0]
            for name in _PARAM_NAMES:
                g = grads[name]
                acc[name] += g * g
                p[name] -= hp.learning_rate * g / (np.sqrt(acc[name]) + hp.eps)
        history.append(epoch_loss / t)

    return AeModel(p, ("softsign", "linear", "softsign", "linear"),
                   tuple(history), hp)


def ae_embed(model: AeModel, y: np.ndarray) -> np.ndarray:
    """Forward one M-vector through the encoder layers."""
    y = np.asarray(y, dtype=np.float64)
    if y.shape != (model.n_inputs,):
        raise ArgumentError(
            f"expected vector of {model.n_inputs} entries, got {y.shape}"
        )
    return model.encode(y)
