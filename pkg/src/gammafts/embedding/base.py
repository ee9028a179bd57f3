"""Uniform wrapper over the three embedding variants.

``fit_embedding`` fits the configured variant on a training series (on its
exogenous variables by default; set ``embed_target`` to include the target
among the embedded inputs) and ``embed_series`` maps a series into the
K-dimensional space, carrying the raw target through as an extra column for
the forecasting stage.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..dataio import MinMaxScaler, MultivariateSeries
from ..errors import ArgumentError, SchemaError
from .autoencoder import AeHyperparams, AeModel, ae_fit
from .pca import PcaModel, pca_fit
from .som import SomModel, som_fit

__all__ = ["EmbeddingModel", "SomHyperparams", "fit_embedding", "embed_series"]

VARIANTS = ("pca", "ae", "som")


@dataclass(frozen=True)
class SomHyperparams:
    side: int = 20
    alpha0: float = 1e-5
    sigma0: float = 12.5
    epochs: int = 70
    seed: int = 0


@dataclass(frozen=True)
class EmbeddingModel:
    """A fitted projection from the raw variable space to K dimensions."""

    variant: str
    model: PcaModel | AeModel | SomModel
    input_names: tuple[str, ...]
    k: int
    scaler: MinMaxScaler | None = None
    embed_target: bool = False

    def embed_matrix(self, x: np.ndarray) -> np.ndarray:
        """Embed a batch of raw rows (columns ordered as ``input_names``)."""
        x = np.asarray(x, dtype=np.float64)
        if x.ndim != 2 or x.shape[1] != len(self.input_names):
            raise ArgumentError(
                f"expected N x {len(self.input_names)} matrix, got {x.shape}"
            )
        if self.scaler is not None:
            x = self.scaler.transform(x, self.input_names)
        return self.model.embed_matrix(x)

    def embed(self, y: np.ndarray) -> np.ndarray:
        """Embed a single raw vector."""
        y = np.asarray(y, dtype=np.float64)
        if y.shape != (len(self.input_names),):
            raise ArgumentError(
                f"expected vector of {len(self.input_names)} entries, "
                f"got {y.shape}"
            )
        return self.embed_matrix(y[None, :])[0]

    def to_dict(self) -> dict:
        d = {
            "variant": self.variant,
            "k": self.k,
            "input_names": list(self.input_names),
            "embed_target": self.embed_target,
            "scaler": self.scaler.to_dict() if self.scaler else None,
            "model": self.model.to_dict(),
        }
        if self.variant == "ae":
            hp = self.model.hyperparams
            d["hyperparams"] = {
                "epochs": hp.epochs, "batch_size": hp.batch_size,
                "learning_rate": hp.learning_rate, "hidden": hp.hidden,
                "l1": hp.l1, "init_std": hp.init_std, "eps": hp.eps,
                "seed": hp.seed,
            }
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "EmbeddingModel":
        variant = d["variant"]
        if variant == "pca":
            model = PcaModel.from_dict(d["model"])
        elif variant == "ae":
            model = AeModel.from_dict(d["model"], AeHyperparams(**d["hyperparams"]))
        elif variant == "som":
            model = SomModel.from_dict(d["model"])
        else:
            raise SchemaError(f"unknown embedding variant {variant!r}")
        scaler = MinMaxScaler.from_dict(d["scaler"]) if d.get("scaler") else None
        return cls(variant, model, tuple(d["input_names"]), d["k"], scaler,
                   d.get("embed_target", False))


def fit_embedding(series: MultivariateSeries, variant: str, k: int, *,
                  embed_target: bool = False,
                  ae: AeHyperparams | None = None,
                  som: SomHyperparams | None = None) -> EmbeddingModel:
    """Fit the requested embedding variant on a training series.

    Inputs are the exogenous variables (all variables when ``embed_target``).
    The autoencoder variant min-max scales its inputs and keeps the scaler on
    the model; PCA and SOM consume raw values.
    """
    if variant not in VARIANTS:
        raise ArgumentError(f"unknown embedding variant {variant!r}")
    if embed_target:
        input_names = series.names
    else:
        input_names = tuple(n for n in series.names if n != series.target_name)
    if not input_names:
        raise SchemaError("no input variables to embed")
    x = series.matrix_for(input_names)

    scaler = None
    if variant == "pca":
        model = pca_fit(x, k)
    elif variant == "ae":
        hp = ae or AeHyperparams()
        scaler = MinMaxScaler().fit(x, input_names)
        model = ae_fit(scaler.transform(x, input_names), k, hp)
    else:
        hp = som or SomHyperparams()
        model = som_fit(x, k, side=hp.side, alpha0=hp.alpha0,
                        sigma0=hp.sigma0, epochs=hp.epochs, seed=hp.seed)
    return EmbeddingModel(variant, model, input_names, k, scaler, embed_target)


def dim_names(k: int) -> tuple[str, ...]:
    return tuple(f"dim_{i}" for i in range(k))


def embed_series(model: EmbeddingModel, series: MultivariateSeries,
                 exogenous: tuple[str, ...] | list[str] | None = None,
                 ) -> MultivariateSeries:
    """Embed a series row-wise; output carries dim_0..dim_{K-1} plus the raw
    target column, which the rule base forecasts in original units."""
    if exogenous is not None and tuple(exogenous) != model.input_names:
        raise SchemaError(
            f"model fitted on {model.input_names}, asked to embed {tuple(exogenous)}"
        )
    x = series.matrix_for(model.input_names)
    dims = model.embed_matrix(x)
    target = series.target_values
    values = np.column_stack([dims, target])
    names = dim_names(model.k) + (series.target_name,)
    return MultivariateSeries(series.timestamps, names, values,
                              series.target_name)
