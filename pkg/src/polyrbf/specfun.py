"""Hermite, Laguerre and complex Ito-Hermite polynomials.

All evaluators accept scalars or numpy arrays and broadcast.
"""

from math import comb, exp, factorial, floor, lgamma, pi, sqrt

import numpy as np

# Cramer-type constant: |H_m(x)| e^{-x^2/2} <= CRAMER_K * sqrt(2^m m!)
CRAMER_K = 1.09


def _check_order(n, name="n"):
    if int(n) != n or n < 0:
        raise ValueError(f"{name} must be a nonnegative integer, got {n!r}")
    return int(n)


def hermite_poly(n, x):
    """Physicists' Hermite polynomial H_n(x) by three-term recurrence."""
    n = _check_order(n)
    x = np.asarray(x, dtype=float)
    h_prev = np.ones_like(x)
    if n == 0:
        return h_prev[()]
    h = 2.0 * x
    for k in range(1, n):
        h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
    return h[()]


def hermite_fn(n, x):
    """Hermite function h_n(x) = exp(-x^2/2) H_n(x)."""
    x = np.asarray(x, dtype=float)
    return (np.exp(-0.5 * x * x) * hermite_poly(n, x))[()]


def normalized_hermite(n, x):
    """Orthonormal Hermite function psi_n = h_n / sqrt(n! 2^n sqrt(pi)).

    Uses the normalized recurrence so large n does not overflow.
    """
    n = _check_order(n)
    x = np.asarray(x, dtype=float)
    p_prev = np.zeros_like(x)
    p = np.full_like(x, pi**-0.25) * np.exp(-0.5 * x * x)
    for k in range(n):
        p_prev, p = p, sqrt(2.0 / (k + 1)) * x * p - sqrt(k / (k + 1)) * p_prev
    return p[()]


def laguerre(k, beta, x):
    """Generalized Laguerre polynomial L^beta_k(x) by forward recurrence."""
    k = _check_order(k, "k")
    x = np.asarray(x)
    l_prev = np.ones_like(x, dtype=np.result_type(x, float))
    if k == 0:
        return l_prev[()]
    l_cur = 1.0 + beta - x
    for j in range(1, k):
        l_prev, l_cur = l_cur, ((2 * j + 1 + beta - x) * l_cur - (j + beta) * l_prev) / (j + 1)
    return l_cur[()]


def _lgamma_sign(x):
    if x > 0:
        return lgamma(x), 1.0
    return lgamma(x), (-1.0) ** (-floor(x))


def gen_binomial(a, b):
    """Binomial C(a, b) for real a and integer b >= 0, via log-gamma."""
    if b < 0:
        return 0.0
    if float(a).is_integer():
        if a >= 0:
            return float(comb(int(a), b))
        # negative integer top: C(a, b) = (-1)^b C(b - a - 1, b)
        return (-1.0) ** b * comb(int(b - a - 1), b)
    la, sa = _lgamma_sign(a + 1.0)
    lc, sc = _lgamma_sign(a - b + 1.0)
    return sa * sc * exp(la - lc - lgamma(b + 1.0))


def laguerre_sum(k, beta, x):
    """L^beta_k(x) from the explicit binomial sum."""
    k = _check_order(k, "k")
    x = np.asarray(x)
    out = np.zeros_like(x, dtype=np.result_type(x, float))
    for j in range(k + 1):
        out = out + (-1) ** j * gen_binomial(k + beta, k - j) * x**j / factorial(j)
    return out[()]


def ito_hermite_coeffs(n, m, alpha=1.0):
    """Coefficient table c[j, k] of H^alpha_{n,m} = sum c[j, k] z^j zbar^k.

    The z-degree is m and the zbar-degree is n.
    """
    n = _check_order(n)
    m = _check_order(m, "m")
    c = np.zeros((m + 1, n + 1))
    for j in range(min(n, m) + 1):
        c[m - j, n - j] = (-1) ** j * factorial(j) * comb(n, j) * comb(m, j) * alpha ** (n + m - j)
    return c


def ito_hermite(n, m, z, alpha=1.0, zbar=None):
    """Complex Ito-Hermite polynomial H^alpha_{n,m}(z, zbar).

    By default the second slot is conj(z).  Passing ``zbar`` evaluates the
    polynomial with an independent second argument.
    """
    z = np.asarray(z, dtype=complex)
    w = np.conj(z) if zbar is None else np.asarray(zbar, dtype=complex)
    n = _check_order(n)
    m = _check_order(m, "m")
    out = np.zeros(np.broadcast(z, w).shape, dtype=complex)
    for j in range(min(n, m) + 1):
        coef = (-1) ** j * factorial(j) * comb(n, j) * comb(m, j) * alpha ** (n + m - j)
        out = out + coef * z ** (m - j) * w ** (n - j)
    return out[()]


def christoffel_darboux(N, u, v, form="auto"):
    """M_N(u, v) = sum_{m<=N} H_m(u) H_m(v) / (2^m m!).

    ``form`` is "sum", "quotient" or "auto"; auto takes the quotient away
    from the diagonal |u - v| > 1e-8.
    """
    N = _check_order(N, "N")
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if form not in ("auto", "sum", "quotient"):
        raise ValueError(f"unknown form {form!r}")
    if form == "sum" or (form == "auto" and np.all(np.abs(u - v) <= 1e-8)):
        return _cd_sum(N, u, v)
    num = hermite_poly(N, v) * hermite_poly(N + 1, u) - hermite_poly(N, u) * hermite_poly(N + 1, v)
    with np.errstate(divide="ignore", invalid="ignore"):
        quot = num / (factorial(N) * 2.0 ** (N + 1) * (u - v))
    if form == "quotient":
        return quot[()]
    near = np.abs(u - v) <= 1e-8
    return np.where(near, _cd_sum(N, u, v), quot)[()]


def _cd_sum(N, u, v, rho=1.0):
    # p_m = H_m / sqrt(2^m m!) keeps every term O(1)
    pu_prev, pu = np.zeros_like(u), np.ones_like(u)
    pv_prev, pv = np.zeros_like(v), np.ones_like(v)
    total = pu * pv
    r = 1.0
    for k in range(N):
        a, b = sqrt(2.0 / (k + 1)), sqrt(k / (k + 1))
        pu_prev, pu = pu, a * u * pu - b * pu_prev
        pv_prev, pv = pv, a * v * pv - b * pv_prev
        r *= rho
        total = total + r * pu * pv
    return total[()]


def mehler_sum(rho, N, u, v):
    """Truncated Mehler series sum_{m<=N} rho^m H_m(u) H_m(v) / (2^m m!)."""
    _check_rho(rho)
    N = _check_order(N, "N")
    return _cd_sum(N, np.asarray(u, dtype=float), np.asarray(v, dtype=float), rho)


def mehler_tail_bound(rho, N, u, v):
    """Upper bound on |E_rho - E_{rho,N}| from the Cramer inequality."""
    _check_rho(rho)
    r = abs(rho)
    return CRAMER_K**2 * np.exp(0.5 * (np.square(u) + np.square(v))) * r ** (N + 1) / (1.0 - r)


def mehler_series(rho, u, v, tol=1e-14, max_terms=4096):
    """Untruncated Mehler series at scalar (u, v).

    Returns ``(value, N)`` where N is the first order whose Cramer tail bound
    drops below ``tol``.
    """
    _check_rho(rho)
    N = 0
    while mehler_tail_bound(rho, N, u, v) > tol:
        N += 1
        if N > max_terms:
            raise RuntimeError("Mehler series did not reach tolerance")
    return float(mehler_sum(rho, N, u, v)), N


def mehler_closed(rho, u, v):
    """Closed form of the Mehler series (reference value)."""
    _check_rho(rho)
    d = 1.0 - rho * rho
    return np.exp((2.0 * rho * u * v - rho * rho * (np.square(u) + np.square(v))) / d) / np.sqrt(d)


def _check_rho(rho):
    if not abs(rho) < 1.0:
        raise ValueError(f"|rho| must be < 1, got {rho!r}")
