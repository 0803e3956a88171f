"""Polyanalytic Gaussian RBF kernels, Ito-Hermite polynomials and related operators."""

__version__ = "0.1.0"
