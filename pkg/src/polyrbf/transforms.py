"""Hermite convolutions, Bargmann transforms and Weyl operators."""

from dataclasses import dataclass
from math import comb, factorial, pi, sqrt
from typing import Callable, Sequence

import numpy as np

from .kernels import normalized_fock_kernel
from .quad import gauss_hermite, integrate_weighted, tree_sum
from .specfun import christoffel_darboux, hermite_fn, hermite_poly, ito_hermite, normalized_hermite

ANALYTIC = "Analytic"
POLYANALYTIC = "Polyanalytic"


@dataclass(frozen=True)
class Signal:
    """A function on the line, held as psi-basis coefficients or a callable."""

    coeffs: tuple = ()
    func: Callable | None = None

    @classmethod
    def basis(cls, n):
        return cls(coeffs=tuple([0.0] * n + [1.0]))

    @classmethod
    def from_coeffs(cls, coeffs):
        c = tuple(complex(v) for v in coeffs)
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        return cls(coeffs=c)

    @classmethod
    def from_callable(cls, func):
        return cls(func=func)

    def __call__(self, x):
        if self.func is not None:
            return np.asarray(self.func(x), dtype=complex)
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape, dtype=complex)
        for n, c in enumerate(self.coeffs):
            if c != 0:
                out = out + c * normalized_hermite(n, x)
        return out


def translate(a, psi):
    """tau_a psi(x) = psi(x - a)."""
    return Signal.from_callable(lambda x: psi(np.asarray(x) - a))


def modulate(b, psi):
    """M_b psi(x) = e^{ibx} psi(x)."""
    return Signal.from_callable(lambda x: np.exp(1j * b * np.asarray(x)) * psi(x))


# convolutions


def conv_psi_closed(m, n, z, extension=POLYANALYTIC):
    """Closed form of (psi_m * psi_n), extended off the real line.

    The polyanalytic extension carries the window index m as the
    zbar-degree: e^{-z^2/4} H_{m,n}(z/sqrt2, zbar/sqrt2) / sqrt(m! n!).
    """
    z = np.asarray(z, dtype=complex)
    u = z / sqrt(2.0)
    if extension == POLYANALYTIC:
        h = ito_hermite(m, n, u)
    elif extension == ANALYTIC:
        h = ito_hermite(m, n, u, zbar=u)
    else:
        raise ValueError(f"unknown extension {extension!r}")
    return (np.exp(-z * z / 4.0) * h / sqrt(factorial(m) * factorial(n)))[()]


def conv_hermite_algebraic(k, ell, x):
    """h_k * h_ell from the finite algebraic sum (requires k <= ell)."""
    if k > ell:
        raise ValueError("need k <= ell")
    x = np.asarray(x, dtype=float)
    s = sum(
        (-1) ** j * comb(k, j) * 2.0**j * (factorial(ell) // factorial(ell - j)) * x ** (k + ell - 2 * j)
        for j in range(k + 1)
    )
    return (sqrt(pi) * np.exp(-x * x / 4.0) * s)[()]


def conv_hermite_numeric(k, ell, x, order=96):
    """Quadrature of the integral of h_k(x - t) h_ell(t) dt."""
    rule = gauss_hermite(order)

    def F(t):
        return hermite_fn(k, x - t) * hermite_fn(ell, t) * np.exp((t - x / 2.0) ** 2)

    return integrate_weighted(F, rule, center=x / 2.0).real


def conv_hermite_ito(k, ell, x):
    """h_k * h_ell via the Ito-Hermite closed form on the real line."""
    x = np.asarray(x, dtype=float)
    return (sqrt(pi * 2.0 ** (k + ell)) * np.exp(-x * x / 4.0) * ito_hermite(k, ell, x / sqrt(2.0)).real)[()]


def modulated_conv(k, m, x, u, lam):
    """Closed form of (M_x h_k * M_u h_m)(lambda).

    The zbar-slot argument (u - x - i lambda)/sqrt2 carries degree m.
    """
    a = (u - x + 1j * lam) / sqrt(2.0)
    b = (u - x - 1j * lam) / sqrt(2.0)
    pref = sqrt(pi) * 1j ** ((m - k) % 4) * 2.0 ** ((k + m) / 2.0)
    gauss = np.exp(-lam * lam / 4.0 + 1j * lam * (x + u) / 2.0 - (x - u) ** 2 / 4.0)
    return complex(pref * gauss * ito_hermite(m, k, a, zbar=b))


def modulated_conv_numeric(k, m, x, u, lam, order=96):
    rule = gauss_hermite(order)

    def F(t):
        f = np.exp(1j * x * (lam - t)) * hermite_fn(k, lam - t)
        g = np.exp(1j * u * t) * hermite_fn(m, t)
        return f * g * np.exp((t - lam / 2.0) ** 2)

    return integrate_weighted(F, rule, center=lam / 2.0)


# Bargmann transforms


def sb_kernel(z, x):
    """Segal-Bargmann kernel A_z(x)."""
    z = np.asarray(z, dtype=complex)
    x = np.asarray(x, dtype=float)
    return pi**-0.25 * np.exp(-(x * x + z * z) / 2.0 + sqrt(2.0) * z * x)


def _window(ell, z, x):
    return hermite_poly(ell - 1, sqrt(2.0) * np.real(z) - x)


def _line_rule(rule):
    return rule or gauss_hermite(96)


DECAY_GUARD = 1e-8


def _guarded_integral(F, rule, center):
    # reject integrands whose contribution at the outermost nodes is not negligible
    x = center + rule.nodes
    vals = np.asarray(F(x), dtype=complex) * rule.weights
    if not np.all(np.isfinite(vals)):
        raise ValueError("non-finite integrand value at a quadrature node")
    peak = np.max(np.abs(vals))
    if peak > 0 and max(abs(vals[0]), abs(vals[-1])) > DECAY_GUARD * peak:
        raise ValueError("integrand does not decay at the outermost nodes")
    return complex(tree_sum(vals))


def true_bargmann(ell, psi, z, normalized=True, rule=None):
    """True polyanalytic Bargmann transform (B_ell psi)(z) by quadrature.

    With ``normalized`` the window is scaled by 1/sqrt(2^{ell-1} (ell-1)!),
    which makes the transform unitary onto the true Fock space.
    """
    rule = _line_rule(rule)
    z = np.asarray(z, dtype=complex)
    zs = z.reshape(-1)
    out = np.empty(zs.shape, dtype=complex)
    for i, zi in enumerate(zs):
        c = np.real(zi) / sqrt(2.0)
        # A_z(x) psi(x) decays like exp(-(x - c)^2)

        def F(x, zi=zi, c=c):
            return _window(ell, zi, x) * sb_kernel(zi, x) * psi(x) * np.exp((x - c) ** 2)

        out[i] = _guarded_integral(F, rule, c)
    if normalized:
        out /= sqrt(2.0 ** (ell - 1) * factorial(ell - 1))
    return out.reshape(z.shape)[()]


def bargmann(psi, z, rule=None):
    """Segal-Bargmann transform by quadrature."""
    return true_bargmann(1, psi, z, normalized=False, rule=rule)


def full_bargmann(signals: Sequence, z, normalized=True, rule=None):
    """Sum over ell of B_ell applied to the ell-th component."""
    return sum(true_bargmann(ell, s, z, normalized, rule) for ell, s in enumerate(signals, start=1))


def true_bargmann_inverse(ell, F, x, normalized=True, rule=None):
    """Inverse true Bargmann transform by a tensor rule on the Fock plane."""
    rule = rule or gauss_hermite(96)
    t = rule.nodes
    X, Y = np.meshgrid(t, t, indexing="ij")
    Z = X + 1j * Y
    W = np.outer(rule.weights, rule.weights)
    FZ = np.asarray(F(Z), dtype=complex) * W
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty(xs.shape, dtype=complex)
    for i, xi in enumerate(xs):
        vals = _window(ell, Z, xi) * np.conj(sb_kernel(Z, xi)) * FZ
        out[i] = tree_sum(vals) / pi
    if normalized:
        out /= sqrt(2.0 ** (ell - 1) * factorial(ell - 1))
    return out.reshape(np.shape(x))[()]


# Weyl operators


def weyl_fock(a, f, z):
    """Fock Weyl operator: k_a(z) f(z - a)."""
    z = np.asarray(z, dtype=complex)
    return (normalized_fock_kernel(1.0, z, a) * f(z - a))[()]


def fock_weyl_phase(a, b):
    """Phase in W_a W_b = phase * W_{a+b}."""
    return np.exp(-1j * np.imag(a * np.conj(b)))


def phi_m(m, z, u):
    """((-1)^m / sqrt(m!)) (z - u/sqrt2)^m e^{z u/sqrt2 - u^2/4}."""
    z = np.asarray(z, dtype=complex)
    s = u / sqrt(2.0)
    return ((-1) ** m / sqrt(factorial(m)) * (z - s) ** m * np.exp(z * s - u * u / 4.0))[()]


def phi_m_series(m, z, u, terms=60):
    """Truncated defining series sum_n z^n (psi_m * psi_n)(u) / sqrt(n!)."""
    z = np.asarray(z, dtype=complex)
    total = np.zeros(z.shape, dtype=complex)
    for n in range(terms):
        total = total + z**n * conv_psi_closed(m, n, u).real / sqrt(factorial(n))
    return total[()]


def weyl_norm_const(ell):
    """(ell-1)! 2^{ell-1}, the scale of raw composition B tau B^{-1}."""
    return factorial(ell - 1) * 2.0 ** (ell - 1)


def weyl_true_poly(ell, a, b, f, z):
    """Closed form of B_ell M_b tau_a B_ell^{-1} with raw transforms.

    c e^{iab/2} e^{z(a+ib)/sqrt2 - (a^2+b^2)/4} f(z - (a-ib)/sqrt2)
    """
    z = np.asarray(z, dtype=complex)
    beta = complex(a, b)
    phase = np.exp(0.5j * a * b)
    k = np.exp(z * beta / sqrt(2.0) - abs(beta) ** 2 / 4.0)
    return (weyl_norm_const(ell) * phase * k * f(z - np.conj(beta) / sqrt(2.0)))[()]


def weyl_true_poly_composition(ell, a, b, f, z, rule=None, plane_rule=None):
    """B_ell M_b tau_a B_ell^{-1} f evaluated by nested quadrature."""
    rule = _line_rule(rule)
    plane_rule = plane_rule or gauss_hermite(96)

    def psi(x):
        # (M_b tau_a B^{-1} f)(x)
        x = np.asarray(x, dtype=float)
        inv = true_bargmann_inverse(ell, f, x - a, normalized=False, rule=plane_rule)
        return np.exp(1j * b * x) * inv

    z = np.asarray(z, dtype=complex)
    out = np.empty(z.reshape(-1).shape, dtype=complex)
    for i, zi in enumerate(z.reshape(-1)):
        c = (a + sqrt(2.0) * zi.real) / 2.0

        def F(x, zi=zi, c=c):
            return _window(ell, zi, x) * sb_kernel(zi, x) * psi(x) * np.exp((x - c) ** 2)

        out[i] = integrate_weighted(F, rule, center=c)
    return out.reshape(z.shape)[()]


def weyl_rbf(ell, beta, f, z):
    """Closed-form polyanalytic RBF-Weyl operator on the gamma = sqrt2 space.

    c e^{(z/sqrt2)(beta - conj beta)} e^{(conj(beta)^2 - |beta|^2)/4} f(z - conj(beta)/sqrt2)
    """
    z = np.asarray(z, dtype=complex)
    beta = complex(beta)
    bb = np.conj(beta)
    pref = np.exp(z / sqrt(2.0) * (beta - bb)) * np.exp((bb * bb - abs(beta) ** 2) / 4.0)
    return (weyl_norm_const(ell) * pref * f(z - bb / sqrt(2.0)))[()]


def rbf_weyl_phase_stated(beta, beta1, gamma=sqrt(2.0)):
    """Stated phase e^{-(2i/gamma^2) Im(beta conj(beta1))}."""
    return np.exp(-2j / gamma**2 * np.imag(beta * np.conj(beta1)))


def rbf_weyl_phase(beta, beta1):
    """Phase obeyed by the closed form: e^{(i/2) Im(beta conj(beta1))}."""
    return np.exp(0.5j * np.imag(beta * np.conj(beta1)))


def rbf_weyl_semigroup_defect(ell, beta, beta1, f, z, phase):
    """|W^b W^b1 f / c - phase W^{b+b1} f| at z; c is the order constant."""
    c = weyl_norm_const(ell)
    lhs = weyl_rbf(ell, beta, lambda s: weyl_rbf(ell, beta1, f, s), z) / c
    rhs = phase * weyl_rbf(ell, beta + beta1, f, z)
    return float(np.max(np.abs(lhs - rhs)))


def i_am_integral(a, m, z, w, order=96):
    """Quadrature of the defining integral of I_{a,m}(z, w)."""
    rule = gauss_hermite(order)
    z = complex(z)
    w = complex(w)
    b = sqrt(2.0) * z.real
    c = sqrt(2.0) * w.real + a
    # A_z(x) conj(A_w(x - a)) decays like exp(-(x - x0)^2)
    x0 = (sqrt(2.0) * (z.real + w.real) + a) / 2.0

    def F(x):
        val = hermite_poly(m, b - x) * hermite_poly(m, c - x) * sb_kernel(z, x) * np.conj(sb_kernel(w, x - a))
        return val * np.exp((x - x0) ** 2)

    return integrate_weighted(F, rule, center=x0)


def s_aN_integral(a, N, z, w, order=96):
    """Integral representation of s_aN through the Christoffel-Darboux sum."""
    rule = gauss_hermite(order)
    z = complex(z)
    w = complex(w)
    b = sqrt(2.0) * z.real
    c = sqrt(2.0) * w.real + a
    x0 = (sqrt(2.0) * (z.real + w.real) + a) / 2.0

    def F(x):
        m = christoffel_darboux(N, b - x, c - x, form="sum")
        return m * sb_kernel(z, x) * np.conj(sb_kernel(w, x - a)) * np.exp((x - x0) ** 2)

    return integrate_weighted(F, rule, center=x0)
