"""Gauss-Hermite rules on the line and their tensor products on the plane."""

import warnings
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import pi, sqrt

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .kernels import poly_rbf_kernel
from .polygauss import PolyGaussRep

MAX_ORDER = 256


@dataclass(frozen=True, eq=False)
class QuadRule:
    nodes: np.ndarray
    weights: np.ndarray
    order: int


@lru_cache(maxsize=None)
def _gh_table(order):
    k = np.arange(1, order)
    x = eigh_tridiagonal(np.zeros(order), np.sqrt(k / 2.0), eigvals_only=True)
    x = np.sort(x)
    # polish the eigenvalues with Newton steps on p_n
    for _ in range(2):
        p, dp = _orthonormal_hermite(order, x)
        x = x - p[-1] / dp
    x = 0.5 * (x - x[::-1])
    p, _ = _orthonormal_hermite(order - 1, x)
    w = 1.0 / np.sum(p * p, axis=0)
    w = 0.5 * (w + w[::-1])
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _orthonormal_hermite(n, x):
    # rows p_0..p_n of polynomials orthonormal for exp(-x^2); derivative of p_n
    p = np.empty((n + 1, x.size))
    p[0] = pi**-0.25
    if n >= 1:
        p[1] = sqrt(2.0) * x * p[0]
    for k in range(1, n):
        p[k + 1] = sqrt(2.0 / (k + 1)) * x * p[k] - sqrt(k / (k + 1)) * p[k - 1]
    dp = sqrt(2.0 * n) * p[n - 1] if n >= 1 else np.zeros_like(x)
    return p, dp


def gauss_hermite(order):
    """Gauss-Hermite rule for the weight exp(-x^2) by Golub-Welsch."""
    if int(order) != order or not 1 <= order <= MAX_ORDER:
        raise ValueError(f"order must be an integer in [1, {MAX_ORDER}], got {order!r}")
    x, w = _gh_table(int(order))
    return QuadRule(x, w, int(order))


def tree_sum(values):
    """Pairwise sum in a fixed order."""
    v = np.asarray(values).ravel()
    if v.size == 0:
        return v.dtype.type(0)
    while v.size > 1:
        if v.size % 2:
            v = np.append(v, v.dtype.type(0))
        v = v[0::2] + v[1::2]
    return v[0]


def _finite(vals):
    if not np.all(np.isfinite(vals)):
        raise ValueError("non-finite integrand value at a quadrature node")
    return vals


class MeasureKind(str, Enum):
    Lebesgue1D_GaussianWeighted = "Lebesgue1D_GaussianWeighted"
    FockPlane = "FockPlane"
    RbfPlane = "RbfPlane"


@dataclass(frozen=True)
class Measure:
    kind: MeasureKind
    alpha: float = 1.0
    gamma: float = 2.0

    def __post_init__(self):
        if self.kind is MeasureKind.FockPlane and not self.alpha > 0:
            raise ValueError("alpha must be positive")
        if self.kind is MeasureKind.RbfPlane and not self.gamma > 0:
            raise ValueError("gamma must be positive")


def fock_plane(alpha=1.0):
    return Measure(MeasureKind.FockPlane, alpha=float(alpha))


def rbf_plane(gamma=2.0):
    return Measure(MeasureKind.RbfPlane, gamma=float(gamma))


def integrate_weighted(F, rule, center=0.0, scale=1.0):
    """Approximate the integral of F(x) exp(-((x - center)/scale)^2) dx."""
    x = center + scale * rule.nodes
    vals = _finite(np.asarray(F(x), dtype=complex) * rule.weights)
    return complex(scale * tree_sum(vals))


def inner_l2(f, g, rule):
    """<f, g> on L^2(R) with the integrand rewritten against exp(-x^2)."""
    x = rule.nodes
    vals = np.asarray(f(x), dtype=complex) * np.conj(np.asarray(g(x), dtype=complex))
    vals = _finite(vals * np.exp(x * x) * rule.weights)
    return complex(tree_sum(vals))


def _plane_grid(rule, scale):
    x = scale * rule.nodes
    X, Y = np.meshgrid(x, x, indexing="ij")
    W = np.outer(rule.weights, rule.weights)
    return X, Y, W


def inner_plane(f, g, measure, rule):
    """Inner product over the plane against a Fock or RBF measure.

    For the RBF measure, ``f`` and ``g`` are PolyGaussRep values or callables
    that each carry the factor exp(-z^2/gamma^2).
    """
    if measure.kind is MeasureKind.FockPlane:
        X, Y, W = _plane_grid(rule, 1.0 / sqrt(measure.alpha))
        Z = X + 1j * Y
        vals = np.asarray(f(Z), dtype=complex) * np.conj(np.asarray(g(Z), dtype=complex))
        return complex(tree_sum(_finite(vals * W)) / pi)
    if measure.kind is MeasureKind.RbfPlane:
        gam = measure.gamma
        X, Y, W = _plane_grid(rule, gam / sqrt(2.0))
        Z = X + 1j * Y
        fv = _stripped(f, gam, Z)
        gv = _stripped(g, gam, Z)
        return complex(tree_sum(_finite(fv * np.conj(gv) * W)) / pi)
    raise ValueError(f"unsupported measure {measure.kind!r}")


def _stripped(f, gamma, Z):
    # value with the analytic Gaussian factor removed
    if isinstance(f, PolyGaussRep):
        if f.gamma != gamma:
            raise ValueError("representation width does not match the measure")
        return np.asarray(f.eval_poly(Z), dtype=complex)
    return np.asarray(f(Z), dtype=complex) * np.exp(Z * Z / gamma**2)


def rbf_inner(f, g, rule=None):
    """RBF-space inner product of two PolyGaussRep values."""
    return inner_plane(f, g, rbf_plane(f.gamma), rule or gauss_hermite(64))


def reproduce_rbf(f, gamma, N, w, rule=None):
    """Integral of f against conj(K_{RBF,N}(., w)) over the RBF measure."""
    rule = rule or gauss_hermite(64)
    if f.deg_z + f.deg_zbar > rule.order // 2:
        warnings.warn("degree exceeds the quadrature exactness budget", RuntimeWarning, stacklevel=2)
    return inner_plane(f, lambda z: poly_rbf_kernel(gamma, N, z, w), rbf_plane(gamma), rule)
