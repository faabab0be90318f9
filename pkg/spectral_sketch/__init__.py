"""Spectral sketches of weighted graphs answering Laplacian quadratic-form queries."""

__version__ = "0.1.0"
