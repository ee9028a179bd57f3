"""Embedding-based weighted multivariate fuzzy time series forecasting."""

__version__ = "0.1.0"
