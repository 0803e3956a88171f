"""Exact coefficient algebra for p(z, zbar) * exp(-z^2 / gamma^2).

A PolyGaussRep stores the table c[j, k] of p = sum c[j, k] z^j zbar^k and
the width gamma of the analytic Gaussian factor, which is tracked
symbolically and never sampled.
"""

from dataclasses import dataclass, field
from enum import Enum
from math import factorial, sqrt

import numpy as np

from .specfun import ito_hermite_coeffs

PRUNE = 1e-300


class Op(str, Enum):
    A = "A"
    Astar = "Astar"
    Box = "Box"
    MagneticLaplacian = "MagneticLaplacian"
    MulZ = "MulZ"
    MulZbar = "MulZbar"
    Dz = "Dz"
    Dzbar = "Dzbar"


def _normalize(c):
    c = np.array(c, dtype=complex, ndmin=2)
    c[np.abs(c) < PRUNE] = 0.0
    rows = np.nonzero(np.any(c != 0, axis=1))[0]
    cols = np.nonzero(np.any(c != 0, axis=0))[0]
    if rows.size == 0:
        return np.zeros((1, 1), dtype=complex)
    return c[: rows[-1] + 1, : cols[-1] + 1].copy()


@dataclass(frozen=True, eq=False)
class PolyGaussRep:
    gamma: float
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError("gamma must be positive")
        c = _normalize(self.coeffs)
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def deg_z(self):
        return self.coeffs.shape[0] - 1

    @property
    def deg_zbar(self):
        return self.coeffs.shape[1] - 1

    @property
    def alpha(self):
        return 2.0 / self.gamma**2

    def is_zero(self):
        return not np.any(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, PolyGaussRep):
            return NotImplemented
        return self.gamma == other.gamma and self.coeffs.shape == other.coeffs.shape and bool(
            np.all(self.coeffs == other.coeffs)
        )

    def __add__(self, other):
        _same_gamma(self, other)
        return PolyGaussRep(self.gamma, _padd(self.coeffs, other.coeffs))

    def __sub__(self, other):
        return self + (-1.0) * other

    def __rmul__(self, scalar):
        return PolyGaussRep(self.gamma, scalar * self.coeffs)

    def eval_poly(self, z, zbar=None):
        """Evaluate p alone, without the Gaussian factor."""
        z = np.asarray(z, dtype=complex)
        w = np.conj(z) if zbar is None else np.asarray(zbar, dtype=complex)
        out = np.zeros(np.broadcast(z, w).shape, dtype=complex)
        for row in self.coeffs[::-1]:
            inner = np.zeros_like(out)
            for c in row[::-1]:
                inner = inner * w + c
            out = out * z + inner
        return out[()]


def _same_gamma(f, g):
    if f.gamma != g.gamma:
        raise ValueError("Gaussian widths differ")


def _padd(a, b):
    shape = (max(a.shape[0], b.shape[0]), max(a.shape[1], b.shape[1]))
    out = np.zeros(shape, dtype=complex)
    out[: a.shape[0], : a.shape[1]] += a
    out[: b.shape[0], : b.shape[1]] += b
    return out


def from_coeffs(gamma, coeffs):
    return PolyGaussRep(float(gamma), coeffs)


def zero(gamma):
    return PolyGaussRep(float(gamma), np.zeros((1, 1)))


def monomial(gamma, j, k=0, coef=1.0):
    c = np.zeros((j + 1, k + 1), dtype=complex)
    c[j, k] = coef
    return PolyGaussRep(float(gamma), c)


def _mul_z(c):
    return np.vstack([np.zeros((1, c.shape[1])), c])


def _mul_zbar(c):
    return np.hstack([np.zeros((c.shape[0], 1)), c])


def _dz(c):
    if c.shape[0] == 1:
        return np.zeros((1, 1))
    return c[1:] * np.arange(1, c.shape[0])[:, None]


def _dzbar(c):
    if c.shape[1] == 1:
        return np.zeros((1, 1))
    return c[:, 1:] * np.arange(1, c.shape[1])[None, :]


def _table_op(op, c, alpha):
    if op is Op.MulZ:
        return _mul_z(c)
    if op is Op.MulZbar:
        return _mul_zbar(c)
    if op is Op.Dz:
        # d/dz of p e^{-z^2/gamma^2}
        return _padd(_dz(c), -alpha * _mul_z(c))
    if op in (Op.Dzbar, Op.Astar):
        return _dzbar(c)
    if op is Op.A:
        # -d/dz - alpha z + alpha zbar; the z terms cancel on the table
        return _padd(-_dz(c), alpha * _mul_zbar(c))
    if op is Op.Box:
        return _table_op(Op.A, _table_op(Op.Astar, c, alpha), alpha)
    if op is Op.MagneticLaplacian:
        d = _dzbar(c)
        return _padd(-_dz(d), alpha * _mul_zbar(d))
    raise ValueError(f"unknown operator {op!r}")


def apply(op, f):
    """Apply an operator exactly to a PolyGaussRep."""
    op = Op(op)
    return PolyGaussRep(f.gamma, _table_op(op, f.coeffs, f.alpha))


def evaluate(f, z):
    """f(z) including the Gaussian factor."""
    z = np.asarray(z, dtype=complex)
    return (f.eval_poly(z) * np.exp(-z * z / f.gamma**2))[()]


def htilde(gamma, ell, m):
    """H^{2/gamma^2}_{ell-1, m}(z, zbar) exp(-z^2/gamma^2)."""
    if ell < 1 or m < 0:
        raise ValueError("need ell >= 1 and m >= 0")
    return PolyGaussRep(float(gamma), ito_hermite_coeffs(ell - 1, m, 2.0 / gamma**2))


def basis_norm_const(gamma, ell, m):
    d = ell - 1 + m
    return gamma**d / (sqrt(factorial(ell - 1) * factorial(m)) * 2.0 ** (d / 2))


def basis_element(gamma, ell, m):
    """Orthonormal basis element e_{ell,m} of the true polyanalytic RBF space."""
    return basis_norm_const(gamma, ell, m) * htilde(gamma, ell, m)


def box_eigenvalue(gamma, ell):
    return 2.0 * (ell - 1) / gamma**2


def eigen_residual(gamma, ell, m):
    """Relative coefficient residual of Box H~ - 2(ell-1)/gamma^2 H~."""
    h = htilde(gamma, ell, m)
    r = apply(Op.Box, h) - box_eigenvalue(gamma, ell) * h
    return float(np.max(np.abs(r.coeffs)) / np.max(np.abs(h.coeffs)))


def ground_state(gamma, y):
    return np.sqrt(2.0 / (np.pi * gamma**2)) * np.exp(-2.0 * np.square(y) / gamma**2)


def schrodinger_apply(gamma, u, x, y, h):
    """Central-difference value of L_gamma u at (x, y).

    L_gamma = -Laplacian/4 - (2iy/gamma^2) d/dx + 4y^2/gamma^4
    """
    g2 = gamma**2
    c = u(x, y)
    uxp, uxm = u(x + h, y), u(x - h, y)
    uyp, uym = u(x, y + h), u(x, y - h)
    lap = (uxp + uxm + uyp + uym - 4.0 * c) / (h * h)
    ux = (uxp - uxm) / (2.0 * h)
    return -0.25 * lap - 2j * y / g2 * ux + 4.0 * y * y / g2**2 * c


def schrodinger_check(gamma, ell, m, sample_points, h, eigenvalue=None):
    """Max residual |L(g H~) - lambda g H~| over sample points (x, y).

    ``eigenvalue`` defaults to 2(ell-1)/gamma^2.
    """
    if not h > 0:
        raise ValueError("step h must be positive")
    lam = box_eigenvalue(gamma, ell) if eigenvalue is None else eigenvalue
    f = htilde(gamma, ell, m)

    def u(x, y):
        return ground_state(gamma, y) * evaluate(f, x + 1j * y)

    worst = 0.0
    for x, y in sample_points:
        worst = max(worst, abs(schrodinger_apply(gamma, u, x, y, h) - lam * u(x, y)))
    return worst
