"""Embedding variants: PCA, autoencoder, and self-organizing map."""

from .autoencoder import AeHyperparams, AeModel, ae_embed, ae_fit
from .base import (EmbeddingModel, SomHyperparams, dim_names, embed_series,
                   fit_embedding)
from .pca import PcaModel, jacobi_eigh, pca_embed, pca_fit
from .som import SomModel, som_embed, som_fit

__all__ = [
    "AeHyperparams", "AeModel", "ae_embed", "ae_fit",
    "EmbeddingModel", "SomHyperparams", "dim_names", "embed_series",
    "fit_embedding",
    "PcaModel", "jacobi_eigh", "pca_embed", "pca_fit",
    "SomModel", "som_embed", "som_fit",
]
