"""Closed-form Fock, RBF and polyanalytic kernels, plus series counterparts."""

from dataclasses import dataclass
from enum import Enum
from math import comb, factorial, sqrt

import numpy as np

from .specfun import ito_hermite, laguerre

SERIES_CAP = 512


class SeriesError(RuntimeError):
    """A series evaluator hit its term cap before converging."""


class Family(str, Enum):
    Fock = "Fock"
    PolyFock = "PolyFock"
    TruePolyFock = "TruePolyFock"
    RBF = "RBF"
    TruePolyRBF = "TruePolyRBF"
    PolyRBF = "PolyRBF"
    PolyRBF_Rd = "PolyRBF_Rd"
    MehlerSum = "MehlerSum"
    Krho = "Krho"

    @classmethod
    def parse(cls, name):
        if isinstance(name, cls):
            return name
        key = str(name).replace("-", "_").lower()
        for fam in cls:
            if fam.value.lower() == key:
                return fam
        raise ValueError(f"unknown kernel family {name!r}")


@dataclass(frozen=True)
class KernelSpec:
    family: Family
    alpha: float = 1.0
    gamma: float = 2.0
    order: int = 1
    rho: float = 0.0
    shift_a: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "family", Family.parse(self.family))
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")
        if not self.gamma > 0:
            raise ValueError("gamma must be positive")
        if int(self.order) != self.order or self.order < 1:
            raise ValueError("order must be a positive integer")
        object.__setattr__(self, "order", int(self.order))
        if not abs(self.rho) < 1:
            raise ValueError("|rho| must be < 1")

    def to_dict(self):
        return {
            "family": self.family.value,
            "alpha": self.alpha,
            "gamma": self.gamma,
            "order": self.order,
            "rho": self.rho,
            "shift_a": self.shift_a,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(**d)


@dataclass(frozen=True)
class KernelValue:
    value: complex
    series_terms_used: int | None = None


def _c(z):
    return np.asarray(z, dtype=complex)


def sqdist(z, w):
    """|z - w|^2 from real and imaginary differences."""
    z, w = _c(z), _c(w)
    dx = z.real - w.real
    dy = z.imag - w.imag
    return dx * dx + dy * dy


def fock_kernel(alpha, z, w):
    return np.exp(alpha * _c(z) * np.conj(_c(w)))[()]


def normalized_fock_kernel(alpha, z, w):
    w = _c(w)
    return np.exp(alpha * (_c(z) * np.conj(w) - 0.5 * np.abs(w) ** 2))[()]


def poly_fock_kernel(alpha, N, z, w):
    """e^{alpha z wbar} L^1_{N-1}(alpha |z - w|^2)."""
    return (fock_kernel(alpha, z, w) * laguerre(N - 1, 1, alpha * sqdist(z, w)))[()]


def poly_fock_kernel_sum(alpha, N, z, w):
    """Polyanalytic Fock kernel from its finite binomial sum."""
    r = alpha * sqdist(z, w)
    s = sum((-1) ** k / factorial(k) * comb(N, k + 1) * r**k for k in range(N))
    return (fock_kernel(alpha, z, w) * s)[()]


def true_poly_fock_kernel(alpha, ell, z, w):
    """e^{alpha z wbar} L^0_{ell-1}(alpha |z - w|^2)."""
    return (fock_kernel(alpha, z, w) * laguerre(ell - 1, 0, alpha * sqdist(z, w)))[()]


def rbf_kernel(gamma, z, w):
    d = _c(z) - np.conj(_c(w))
    return np.exp(-d * d / gamma**2)[()]


def true_poly_rbf_kernel(gamma, ell, z, w):
    return (laguerre(ell - 1, 0, 2.0 * sqdist(z, w) / gamma**2) * rbf_kernel(gamma, z, w))[()]


def poly_rbf_kernel(gamma, N, z, w):
    return (laguerre(N - 1, 1, 2.0 * sqdist(z, w) / gamma**2) * rbf_kernel(gamma, z, w))[()]


def poly_rbf_kernel_rd(gamma, N, x, y):
    """Real d-dimensional form e^{-r^2/gamma^2} L^1_{N-1}(2 r^2/gamma^2)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape[-1:] != y.shape[-1:]:
        raise ValueError(f"dimension mismatch: {x.shape[-1:]} vs {y.shape[-1:]}")
    d = x - y
    r2 = np.sum(d * d, axis=-1)
    return (np.exp(-r2 / gamma**2) * laguerre(N - 1, 1, 2.0 * r2 / gamma**2))[()]


def rbf_fock_factorization_check(gamma, N, z, w):
    """|K_{RBF,N} - e^{-z^2/g^2} K^{2/g^2}_N e^{-wbar^2/g^2}|."""
    z, w = _c(z), _c(w)
    wb = np.conj(w)
    rhs = np.exp(-z * z / gamma**2) * poly_fock_kernel(2.0 / gamma**2, N, z, w) * np.exp(-wb * wb / gamma**2)
    return float(np.max(np.abs(poly_rbf_kernel(gamma, N, z, w) - rhs)))


def zaremba_basis(kind, n, z, ell=1):
    """n-th Zaremba-Bergman basis function for the gamma = 2 RBF spaces."""
    z = _c(z)
    u = z / sqrt(2.0)
    if kind == "RBF_analytic":
        return (u**n / sqrt(factorial(n)) * np.exp(-z * z / 4.0))[()]
    if kind == "TruePoly":
        # window index is the zbar-degree
        h = ito_hermite(ell - 1, n, u)
        return (h / sqrt(factorial(ell - 1) * factorial(n)) * np.exp(-z * z / 4.0))[()]
    raise ValueError(f"unknown Zaremba kind {kind!r}")


def zaremba_partial(kind, terms, z, w, ell=1):
    """Partial Zaremba-Bergman sum over the first ``terms`` basis functions."""
    if int(terms) != terms or terms < 1:
        raise ValueError("terms must be a positive integer")
    if terms > SERIES_CAP:
        raise SeriesError(f"terms capped at {SERIES_CAP}")
    total = 0j
    for n in range(int(terms)):
        total = total + zaremba_basis(kind, n, z, ell) * np.conj(zaremba_basis(kind, n, w, ell))
    return KernelValue(complex(total), int(terms))


def zaremba_series(kind, z, w, ell=1, tol=1e-15):
    """Sum the Zaremba-Bergman series until the terms fall below ``tol``.

    Raises SeriesError if the cap is reached first.
    """
    total = 0j
    small = 0
    for n in range(SERIES_CAP):
        t = complex(zaremba_basis(kind, n, z, ell) * np.conj(zaremba_basis(kind, n, w, ell)))
        total += t
        small = small + 1 if abs(t) <= tol * max(1.0, abs(total)) else 0
        if small >= 3 and n > abs(complex(z) * complex(w)):
            return KernelValue(total, n + 1)
    raise SeriesError("Zaremba-Bergman series did not converge within the term cap")


def _shift(a, z):
    return np.exp(-a * a / 4.0 + _c(z) * a / sqrt(2.0))


def i_am(a, m, z, w):
    """Closed form of the integral I_{a,m}(z, w)."""
    z, w = _c(z), _c(w)
    zs = z - a / sqrt(2.0)
    return (
        factorial(m) * 2.0**m * _shift(a, z) * np.exp(zs * np.conj(w)) * laguerre(m, 0, sqdist(zs, w))
    )[()]


def s_aN(a, N, z, w):
    """sum_{m<=N} I_{a,m} / (2^m m!) in closed form."""
    z = _c(z)
    return (_shift(a, z) * poly_fock_kernel(1.0, N + 1, z - a / sqrt(2.0), w))[()]


def _check_rho(rho):
    if not abs(rho) < 1:
        raise ValueError(f"|rho| must be < 1, got {rho!r}")


def s_rho_aN(rho, a, N, z, w):
    """sum_{m<=N} rho^m I_{a,m} / (2^m m!)."""
    _check_rho(rho)
    z, w = _c(z), _c(w)
    zs = z - a / sqrt(2.0)
    r2 = sqdist(zs, w)
    # L^0_m by recurrence, accumulating the rho-weighted sum
    l_prev, l_cur = np.zeros_like(r2), np.ones_like(r2)
    acc, p = l_cur.copy(), 1.0
    for k in range(N):
        l_prev, l_cur = l_cur, ((2 * k + 1 - r2) * l_cur - k * l_prev) / (k + 1)
        p *= rho
        acc = acc + p * l_cur
    return (_shift(a, z) * np.exp(zs * np.conj(w)) * acc)[()]


def k_rho(rho, z, w):
    _check_rho(rho)
    return (np.exp(-rho / (1.0 - rho) * sqdist(z, w)) / (1.0 - rho))[()]


def mehler_limit(rho, a, z, w):
    """Limit of s_rho_aN as N -> infinity."""
    _check_rho(rho)
    z, w = _c(z), _c(w)
    zs = z - a / sqrt(2.0)
    return (_shift(a, z) * np.exp(zs * np.conj(w)) * k_rho(rho, zs, w))[()]


def evaluate_kernel(spec, z, w):
    """Evaluate the kernel described by a KernelSpec.

    For PolyRBF_Rd, ``z`` and ``w`` are real vectors.
    """
    f = spec.family
    if f is Family.Fock:
        return fock_kernel(spec.alpha, z, w)
    if f is Family.PolyFock:
        return poly_fock_kernel(spec.alpha, spec.order, z, w)
    if f is Family.TruePolyFock:
        return true_poly_fock_kernel(spec.alpha, spec.order, z, w)
    if f is Family.RBF:
        return rbf_kernel(spec.gamma, z, w)
    if f is Family.TruePolyRBF:
        return true_poly_rbf_kernel(spec.gamma, spec.order, z, w)
    if f is Family.PolyRBF:
        return poly_rbf_kernel(spec.gamma, spec.order, z, w)
    if f is Family.PolyRBF_Rd:
        return poly_rbf_kernel_rd(spec.gamma, spec.order, z, w)
    if f is Family.MehlerSum:
        return s_rho_aN(spec.rho, spec.shift_a, spec.order, z, w)
    if f is Family.Krho:
        return k_rho(spec.rho, z, w)
    raise ValueError(f"unsupported family {f!r}")
