"""Verification suites: each check compares a closed form with an independent oracle."""

import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from math import factorial, pi, sqrt

import numpy as np

from . import kernels as K
from . import mlkit as ML
from . import polygauss as PG
from . import quad as Q
from . import specfun as SF
from . import transforms as TR


@dataclass(frozen=True)
class Check:
    id: str
    description: str
    paper_anchor: str
    measured: float
    tolerance: float
    passed: bool

    def line(self):
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag} {self.id}: {self.description} (measured {self.measured:.3e}, tolerance {self.tolerance:.1e})"

    def to_dict(self):
        return asdict(self)


def _check(cid, desc, anchor, measured, tol):
    measured = float(measured)
    return Check(cid, desc, anchor, measured, float(tol), bool(measured <= tol))


def _rng(seed):
    return np.random.default_rng(seed)


def _disc(rng, n, radius):
    r = radius * np.sqrt(rng.uniform(0, 1, n))
    t = rng.uniform(0, 2 * pi, n)
    return r * np.exp(1j * t)


# specfun


def check_hermite_orthonormality():
    rule = Q.gauss_hermite(64)
    worst = 0.0
    for n in range(13):
        for m in range(13):
            v = Q.inner_l2(lambda x: SF.normalized_hermite(n, x), lambda x: SF.normalized_hermite(m, x), rule)
            worst = max(worst, abs(v - (n == m)))
    return _check("specfun.hermite_orthonormality", "psi_n orthonormal for n, m <= 12", "Hermite functions", worst, 1e-10)


def _laguerre_exact(k, beta, x):
    fx, fb = Fraction(float(x)), Fraction(beta)
    terms = []
    for j in range(k + 1):
        c = Fraction(1)
        for i in range(k - j):
            c *= fb + k - i
        terms.append((-1) ** j * c / factorial(k - j) * fx**j / factorial(j))
    return float(sum(terms)), float(sum(abs(t) for t in terms))


def check_laguerre_recurrence():
    # error scaled by the sum of |terms|, the condition scale of the explicit sum
    worst = 0.0
    for k in range(31):
        for beta in (0, 1, 0.5):
            for x in np.linspace(-50, 50, 21):
                exact, scale = _laguerre_exact(k, beta, x)
                worst = max(worst, abs(SF.laguerre(k, beta, x) - exact) / scale)
    return _check(
        "specfun.laguerre_recurrence",
        "Laguerre recurrence vs exact explicit sum, k <= 30, |x| <= 50",
        "generalized Laguerre polynomial",
        worst,
        1e-13,
    )


def check_ito_orthogonality():
    rule = Q.gauss_hermite(24)
    worst = 0.0
    for alpha in (0.5, 1.0):
        meas = Q.fock_plane(alpha)
        for n in range(6):
            for m in range(6):
                for n2 in range(6):
                    for m2 in range(6):
                        v = Q.inner_plane(
                            lambda z: SF.ito_hermite(n, m, z, alpha),
                            lambda z: SF.ito_hermite(n2, m2, z, alpha),
                            meas,
                            rule,
                        )
                        # plane measure carries alpha/pi; the norm is pi n! m! alpha^{n+m-1}
                        norm = factorial(n) * factorial(m) * alpha ** (n + m)
                        target = norm if (n, m) == (n2, m2) else 0.0
                        worst = max(worst, abs(v - target) / norm)
    return _check(
        "specfun.ito_orthogonality",
        "Ito-Hermite orthogonality, indices <= 5, alpha in {1/2, 1}",
        "Ito-Hermite orthogonality relation",
        worst,
        1e-8,
    )


def check_ito_laguerre_link():
    z = _disc(_rng(1), 50, 2.0)
    worst = 0.0
    for n in range(9):
        for m in range(9):
            lo, d = min(n, m), abs(n - m)
            th = np.angle(z)
            rhs = (-1) ** lo * factorial(lo) * np.exp(1j * th * (m - n)) * np.abs(z) ** d
            rhs = rhs * SF.laguerre(lo, d, np.abs(z) ** 2)
            lhs = SF.ito_hermite(n, m, z)
            worst = max(worst, np.max(np.abs(lhs - rhs) / np.maximum(1.0, np.abs(lhs))))
    return _check(
        "specfun.ito_laguerre_link",
        "Ito-Hermite polynomials in terms of Laguerre polynomials",
        "Ito-Hermite Laguerre form",
        worst,
        1e-10,
    )


def check_ito_derivative():
    worst = 0.0
    for alpha in (0.5, 1.0, 2.0):
        for n in range(1, 9):
            for m in range(9):
                c = SF.ito_hermite_coeffs(n, m, alpha)
                d = c[:, 1:] * np.arange(1, c.shape[1])[None, :]
                target = n * alpha * SF.ito_hermite_coeffs(n - 1, m, alpha)
                worst = max(worst, np.max(np.abs(d - target)))
    return _check(
        "specfun.ito_derivative",
        "d/dzbar H_{n,m} = n alpha H_{n-1,m} on coefficient tables",
        "Ito-Hermite recurrences",
        worst,
        0.0,
    )


def check_ito_generating():
    zs = _disc(_rng(2), 12, 1.0)
    worst = 0.0
    for m in range(7):
        for u in (-2.0, 0.0, 1.5):
            s = u / sqrt(2.0)
            series = sum(zs**n / factorial(n) * SF.ito_hermite(m, n, s) for n in range(60))
            worst = max(worst, np.max(np.abs(series - (s - zs) ** m * np.exp(u * zs / sqrt(2.0)))))
    return _check(
        "specfun.ito_generating",
        "generating series of H_{m,n}(u/sqrt2, u/sqrt2)",
        "Ito-Hermite generating formula",
        worst,
        1e-10,
    )


def check_ito_kernel_series():
    rng = _rng(3)
    zs, ws = _disc(rng, 10, 1.5), _disc(rng, 10, 1.5)
    worst = 0.0
    for alpha in (0.5, 1.0):
        for m in range(6):
            s = sum(
                SF.ito_hermite(m, n, zs, alpha) * SF.ito_hermite(n, m, ws, alpha) / (factorial(m) * factorial(n) * alpha ** (n + m))
                for n in range(90)
            )
            target = np.exp(alpha * zs * np.conj(ws)) * SF.laguerre(m, 0, alpha * K.sqdist(zs, ws))
            worst = max(worst, np.max(np.abs(s - target)))
    return _check(
        "specfun.ito_kernel_series",
        "Ito-Hermite kernel series sums to the true polyanalytic Fock kernel",
        "generating formula for Ito-Hermite polynomials",
        worst,
        1e-9,
    )


def check_christoffel_darboux():
    rng = _rng(4)
    worst = 0.0
    for N in range(8):
        u, v = rng.uniform(-3, 3, 40), rng.uniform(-3, 3, 40)
        s = SF.christoffel_darboux(N, u, v, form="sum")
        q = SF.christoffel_darboux(N, u, v, form="quotient")
        worst = max(worst, np.max(np.abs(s - q) / np.maximum(np.abs(s), 1.0)))
    return _check(
        "specfun.christoffel_darboux_forms",
        "Christoffel-Darboux quotient agrees with the direct sum",
        "Christoffel-Darboux formula",
        worst,
        1e-9,
    )


def check_cd_integral():
    rule = Q.gauss_hermite(32)
    worst = 0.0
    for N in range(6):
        v = Q.integrate_weighted(lambda x: SF.christoffel_darboux(N, x, x), rule).real
        worst = max(worst, abs(v - sqrt(pi) * (N + 1)))
    return _check(
        "specfun.cd_integral",
        "integral of M_N(x,x) exp(-x^2) equals sqrt(pi)(N+1), N <= 5; phi_N has unit mass",
        "Christoffel-Darboux density",
        worst,
        1e-10,
    )


def phi_rho_mass(rho, order=48):
    """Total mass of (1-rho) E_rho(x,x) exp(-x^2) / sqrt(pi) by quadrature."""
    s = sqrt((1 + rho) / (1 - rho))
    rule = Q.gauss_hermite(order)

    def F(x):
        out = np.empty(x.shape)
        for i, xi in enumerate(x):
            e, _ = SF.mehler_series(rho, xi, xi, tol=1e-17 * np.exp(xi * xi * 2 * rho / (1 + rho)))
            out[i] = e
        # exp(-x^2) times the inverse rule weight exp((x/s)^2)
        return (1 - rho) * out * np.exp(-x * x + (x / s) ** 2) / sqrt(pi)

    return Q.integrate_weighted(F, rule, scale=s).real


def check_phi_rho():
    worst = max(abs(phi_rho_mass(r) - 1.0) for r in (0.3, -0.3, 0.6))
    return _check(
        "specfun.phi_rho_mass",
        "phi_rho built from the untruncated Mehler series has unit mass",
        "Mehler density",
        worst,
        1e-8,
    )


def check_phi_n():
    rule = Q.gauss_hermite(32)
    worst = 0.0
    for N in range(6):
        v = Q.integrate_weighted(lambda x: SF.christoffel_darboux(N, x, x) / (sqrt(pi) * (N + 1)), rule).real
        worst = max(worst, abs(v - 1.0))
    return _check("specfun.phi_n_mass", "phi_N has unit mass, N <= 5", "Christoffel-Darboux density", worst, 1e-8)


def check_mehler_series():
    worst = 0.0
    for rho in (0.5, 0.3, -0.4):
        for u, v in ((0.0, 0.0), (0.7, -1.2), (1.5, 1.1)):
            e, _ = SF.mehler_series(rho, u, v, tol=1e-15)
            worst = max(worst, abs(e - SF.mehler_closed(rho, u, v)))
    return _check(
        "specfun.mehler_series",
        "Cramer-controlled Mehler series vs closed Mehler formula",
        "Mehler kernel",
        worst,
        1e-13,
    )


# kernels


def _pairs(seed, n, radius):
    rng = _rng(seed)
    return _disc(rng, n, radius), _disc(rng, n, radius)


GAMMAS = (1.0, 2.0, sqrt(2.0))


KERNEL_RADIUS = 1.5


def check_kernel_sum():
    z, w = _pairs(10, 100, KERNEL_RADIUS)
    worst = 0.0
    for g in GAMMAS:
        for N in range(1, 7):
            s = sum(K.true_poly_rbf_kernel(g, ell, z, w) for ell in range(1, N + 1))
            worst = max(worst, np.max(np.abs(K.poly_rbf_kernel(g, N, z, w) - s)))
    return _check(
        "kernels.sum_identity",
        "K_RBF,N equals the sum of true polyanalytic RBF kernels",
        "polyanalytic Gaussian RBF kernel as a sum",
        worst,
        1e-12,
    )


def check_fock_factorization():
    z, w = _pairs(10, 100, KERNEL_RADIUS)
    worst = 0.0
    for g in GAMMAS:
        for N in range(1, 7):
            worst = max(worst, K.rbf_fock_factorization_check(g, N, z, w))
    return _check(
        "kernels.fock_factorization",
        "RBF kernel factors through the polyanalytic Fock kernel",
        "RBF-Fock factorization",
        worst,
        1e-12,
    )


def check_zaremba():
    z, w = _pairs(11, 20, 1.5)
    worst_a = max(
        abs(K.zaremba_partial("RBF_analytic", 40, zi, wi).value - K.rbf_kernel(2.0, zi, wi)) for zi, wi in zip(z, w)
    )
    worst_t = max(
        abs(K.zaremba_partial("TruePoly", 60, zi, wi, ell).value - K.true_poly_rbf_kernel(2.0, ell, zi, wi))
        for ell in (1, 2, 3)
        for zi, wi in zip(z, w)
    )
    return [
        _check("kernels.zaremba_analytic", "analytic Zaremba-Bergman sum, 40 terms", "Zaremba-Bergman formula", worst_a, 1e-10),
        _check(
            "kernels.zaremba_truepoly",
            "true polyanalytic Zaremba-Bergman sum, 60 terms, ell <= 3",
            "polyanalytic Zaremba-Bergman formula",
            worst_t,
            1e-8,
        ),
    ]


def check_hermitian():
    z, w = _pairs(12, 100, 2.0)
    fams = [
        lambda a, b: K.fock_kernel(0.7, a, b),
        lambda a, b: K.poly_fock_kernel(1.0, 4, a, b),
        lambda a, b: K.true_poly_fock_kernel(0.5, 3, a, b),
        lambda a, b: K.rbf_kernel(2.0, a, b),
        lambda a, b: K.true_poly_rbf_kernel(1.5, 3, a, b),
        lambda a, b: K.poly_rbf_kernel(2.0, 4, a, b),
        lambda a, b: K.k_rho(0.4, a, b),
        lambda a, b: K.mehler_limit(0.4, 0.0, a, b),
    ]
    worst = 0.0
    for f in fams:
        a, b = f(z, w), np.conj(f(w, z))
        worst = max(worst, np.max(np.abs(a - b) / np.maximum(1.0, np.abs(a))))
    return _check("kernels.hermitian", "K(z,w) = conj K(w,z) for every kernel", "reproducing kernels", worst, 1e-13)


def check_restriction():
    rng = _rng(13)
    x, y = rng.uniform(-3, 3, 50), rng.uniform(-3, 3, 50)
    worst = 0.0
    for g in (0.5, 1.0, 2.0):
        for N in (1, 2, 5):
            a = K.poly_rbf_kernel(g, N, x, y)
            b = K.poly_rbf_kernel_rd(g, N, x[:, None], y[:, None])
            worst = max(worst, np.max(np.abs(a - b)))
    return _check("kernels.rd_restriction", "complex kernel restricted to reals equals the R^1 form", "R^d kernel", worst, 1e-14)


def check_polyfock_binomial():
    z, w = _pairs(14, 50, KERNEL_RADIUS)
    worst = 0.0
    for N in range(1, 11):
        a = K.poly_fock_kernel(1.0, N, z, w)
        worst = max(worst, np.max(np.abs(a - K.poly_fock_kernel_sum(1.0, N, z, w)) / np.abs(a)))
    return _check("kernels.polyfock_binomial", "Laguerre form vs binomial sum, N <= 10", "polyanalytic Fock kernel", worst, 1e-10)


def check_i_am():
    z, w = _pairs(15, 6, 1.2)
    worst = max(
        abs(TR.i_am_integral(a, m, zi, wi) - K.i_am(a, m, zi, wi)) for a in (0.0, 0.8) for m in range(4) for zi, wi in zip(z, w)
    )
    return _check("kernels.i_am", "I_{a,m} closed form vs defining integral", "integral function I_{a,m}", worst, 1e-7)


def check_s_aN():
    z, w = _pairs(16, 6, 1.2)
    worst = 0.0
    for a in (0.0, 0.5, -0.8):
        for N in range(4):
            for zi, wi in zip(z, w):
                terms = sum(K.i_am(a, m, zi, wi) / (2**m * factorial(m)) for m in range(N + 1))
                worst = max(worst, abs(K.s_aN(a, N, zi, wi) - terms))
                worst = max(worst, abs(K.s_aN(a, N, zi, wi) - TR.s_aN_integral(a, N, zi, wi)))
    return _check(
        "kernels.s_aN",
        "s_aN closed form vs term sum and Christoffel-Darboux integral",
        "integral representation of the series",
        worst,
        1e-7,
    )


def check_mehler_limit():
    z, w = _pairs(17, 20, 1.0)
    rho = 0.4
    s = K.s_rho_aN(rho, 0.0, 80, z, w)
    target = K.fock_kernel(1.0, z, w) * K.k_rho(rho, z, w)
    return _check(
        "kernels.mehler_limit",
        "S_{rho,0,N} -> K K_rho at rho = 0.4, N = 80",
        "Mehler application",
        np.max(np.abs(s - target)),
        1e-7,
    )


# polygauss


def check_eigen_residual():
    worst = max(PG.eigen_residual(g, ell, m) for g in (2.0, sqrt(2.0)) for ell in range(1, 6) for m in range(6))
    return _check(
        "polygauss.eigen_residual",
        "Box H~_{l,m} = 2(l-1)/gamma^2 H~_{l,m}, exact coefficients",
        "eigenfunctions of the RBF Landau operator",
        worst,
        1e-12,
    )


SCHRODINGER_POINTS = ((0.3, 0.2), (-0.5, 0.4), (0.1, -0.3), (0.8, -0.1), (-0.2, -0.6))
SCHRODINGER_CASES = [(g, ell, m) for g in (2.0, sqrt(2.0)) for ell in (1, 2, 3) for m in (0, 1, 2)]


def check_schrodinger_stated():
    worst = max(PG.schrodinger_check(g, ell, m, SCHRODINGER_POINTS, 1e-3) for g, ell, m in SCHRODINGER_CASES)
    return _check(
        "polygauss.schrodinger_stated",
        "L(g H~) = 2(l-1)/gamma^2 g H~ by finite differences, h = 1e-3",
        "Schrodinger operator eigenvalues",
        worst,
        1e-5,
    )


def _shifted(g, ell):
    return PG.box_eigenvalue(g, ell) + 1.0 / g**2


def check_schrodinger_shifted():
    worst = max(
        PG.schrodinger_check(g, ell, m, SCHRODINGER_POINTS, 1e-3, eigenvalue=_shifted(g, ell))
        for g, ell, m in SCHRODINGER_CASES
    )
    return _check(
        "polygauss.schrodinger_shifted",
        "L(g H~) = (2(l-1)+1)/gamma^2 g H~ by finite differences, h = 1e-3",
        "ground state transformation",
        worst,
        1e-5,
    )


def check_schrodinger_order():
    # second-order decay: halving h should cut the residual about 4x, at least 3x
    worst = 0.0
    for g, ell, m in SCHRODINGER_CASES:
        lam = _shifted(g, ell)
        r1 = PG.schrodinger_check(g, ell, m, SCHRODINGER_POINTS, 1e-3, eigenvalue=lam)
        r2 = PG.schrodinger_check(g, ell, m, SCHRODINGER_POINTS, 5e-4, eigenvalue=lam)
        worst = max(worst, r2 / r1)
    return _check(
        "polygauss.schrodinger_order",
        "finite-difference residual ratio r(h/2)/r(h) at h = 1e-3",
        "ground state transformation",
        worst,
        1.0 / 3.0,
    )


def _basis_sample(g, lmax, mmax):
    return [PG.basis_element(g, ell, m) for ell in range(1, lmax + 1) for m in range(mmax + 1)]


def check_orthonormality():
    worst = 0.0
    for g in (2.0, sqrt(2.0)):
        B = _basis_sample(g, 3, 5)
        G = np.array([[Q.rbf_inner(f, h) for h in B] for f in B])
        worst = max(worst, np.max(np.abs(G - np.eye(len(B)))))
    return _check(
        "polygauss.orthonormality",
        "e_{l,m} orthonormal for l <= 3, m <= 5, including across levels",
        "orthonormal basis of the true polyanalytic RBF space",
        worst,
        1e-9,
    )


def check_adjointness():
    worst = 0.0
    for g in (2.0, sqrt(2.0)):
        B = _basis_sample(g, 3, 3)
        for f in B:
            Af = PG.apply("A", f)
            for h in B:
                d = Q.rbf_inner(Af, h) - Q.rbf_inner(f, PG.apply("Astar", h))
                worst = max(worst, abs(d))
    return _check("polygauss.adjointness", "<A f, g> = <f, A* g> on the basis sample", "adjoint of A", worst, 1e-9)


def check_reproducing():
    pts = (0.0, 0.3 - 0.2j, -0.7 + 0.4j, 1.1 + 0.5j, -0.4 - 0.9j)
    worst = 0.0
    for ell in (1, 2):
        for m in range(5):
            f = PG.basis_element(2.0, ell, m)
            for w in pts:
                worst = max(worst, abs(Q.reproduce_rbf(f, 2.0, 2, w) - PG.evaluate(f, w)))
    return _check(
        "polygauss.reproducing",
        "K_{RBF,2} reproduces e_{l,m}, l <= 2, m <= 4",
        "reproducing property",
        worst,
        1e-8,
    )


def check_box_composition():
    rng = _rng(20)
    worst = 0.0
    for _ in range(50):
        c = np.zeros((5, 5), dtype=complex)
        idx = rng.integers(0, 5, size=(4, 2))
        c[idx[:, 0], idx[:, 1]] = rng.normal(size=4) + 1j * rng.normal(size=4)
        f = PG.from_coeffs(rng.choice([1.0, 2.0, sqrt(2.0)]), c)
        a = PG.apply("Box", f)
        b = PG.apply("A", PG.apply("Astar", f))
        d = PG.apply("MagneticLaplacian", f)
        worst = max(worst, float(a != b), float(a != d))
    return _check("polygauss.box_composition", "Box equals A after A* and the magnetic Laplacian", "RBF Landau operator", worst, 0.0)


# transforms

CONV_X = (-2.0, -0.5, 0.0, 0.7, 1.9)


def check_conv_triple():
    worst = 0.0
    for ell in range(5):
        for k in range(ell + 1):
            for x in CONV_X:
                a = TR.conv_hermite_numeric(k, ell, x)
                b = TR.conv_hermite_ito(k, ell, x)
                c = TR.conv_hermite_algebraic(k, ell, x)
                worst = max(worst, abs(a - b), abs(a - c), abs(b - c))
    return _check(
        "transforms.conv_triple",
        "numeric, Ito-Hermite and algebraic h_k * h_l agree, k <= l <= 4",
        "convolution of two Hermite functions",
        worst,
        1e-8,
    )


def check_modulated_conv():
    cases = [(1, 1, 0.5, -0.3, 0.8), (2, 1, 0.4, -0.7, 0.3), (1, 3, 0.2, 0.9, -0.4), (0, 2, 0.3, 0.1, 1.1), (3, 2, -0.6, 0.2, 0.5)]
    worst = max(abs(TR.modulated_conv(*c) - TR.modulated_conv_numeric(*c)) for c in cases)
    return _check("transforms.modulated_conv", "modulated convolution closed form vs quadrature", "modulated Hermite convolution", worst, 1e-7)


def check_bargmann_basis():
    z = (1 + 1j, 0.5 + 0.2j, -0.3 - 0.8j)
    worst = max(abs(TR.bargmann(TR.Signal.basis(k), zi) - zi**k / sqrt(factorial(k))) for k in range(6) for zi in z)
    return _check("transforms.bargmann_basis", "B psi_k = z^k / sqrt(k!)", "Segal-Bargmann transform", worst, 1e-9)


def check_bargmann_unitarity():
    rule = Q.gauss_hermite(40)
    line = Q.gauss_hermite(64)
    worst = 0.0
    for ell in (1, 2, 3):
        F = [lambda Z, n=n: TR.true_bargmann(ell, TR.Signal.basis(n), Z, rule=line) for n in range(5)]
        meas = Q.fock_plane(1.0)
        G = np.array([[Q.inner_plane(f, g, meas, rule) for g in F] for f in F])
        worst = max(worst, np.max(np.abs(G - np.eye(5))))
    return _check("transforms.bargmann_unitarity", "Gram of B_l psi_n, n <= 4, is the identity", "true polyanalytic Bargmann transform", worst, 1e-6)


def check_bargmann_roundtrip():
    line = Q.gauss_hermite(64)
    worst = 0.0
    for ell in (2,):
        for n in (0, 1, 3):

            def F(Z, n=n):
                return TR.true_bargmann(ell, TR.Signal.basis(n), Z, rule=line)

            for x in (-1.0, 0.0, 0.7):
                worst = max(worst, abs(TR.true_bargmann_inverse(ell, F, x) - SF.normalized_hermite(n, x)))
    return _check("transforms.bargmann_roundtrip", "B_2^{-1} B_2 psi_n = psi_n", "inverse true Bargmann transform", worst, 1e-6)


def _test_fn(z):
    return (z**2 - 0.5 * z + 0.3j) * np.exp(0.2 * z)


def check_weyl_fock():
    a, b = 1 + 1j, 0.5 - 0.2j
    zs = _disc(_rng(30), 10, 1.0)
    lhs = TR.weyl_fock(a, lambda s: TR.weyl_fock(b, _test_fn, s), zs)
    rhs = TR.fock_weyl_phase(a, b) * TR.weyl_fock(a + b, _test_fn, zs)
    inv = TR.weyl_fock(-a, lambda s: TR.weyl_fock(a, _test_fn, s), zs)
    worst = max(np.max(np.abs(lhs - rhs)), np.max(np.abs(inv - _test_fn(zs))))
    return _check("transforms.weyl_fock", "Fock Weyl semigroup phase law and inverse", "Weyl operator semigroup", worst, 1e-12)


def check_weyl_true_poly():
    worst = 0.0
    z = 0.2 + 0.1j
    for ell in (1, 2):
        for n in range(5):

            def f(Z, ell=ell, n=n):
                return SF.ito_hermite(ell - 1, n, Z)

            for a, b in ((0.6, 0.0), (0.6, 0.4), (-0.3, 0.5)):
                c = TR.weyl_true_poly_composition(ell, a, b, f, z)
                worst = max(worst, abs(c - TR.weyl_true_poly(ell, a, b, f, z)))
    return _check(
        "transforms.weyl_true_poly",
        "true polyanalytic Weyl closed form vs B M_b tau_a B^{-1}, l <= 2",
        "true polyanalytic Weyl operator",
        worst,
        1e-5,
    )


def _rbf_weyl_sample(phase_fn, ell_list=(1, 2, 3)):
    beta, beta1 = 1 + 1j, 0.3
    zs = _disc(_rng(31), 8, 1.0)
    worst = 0.0
    for ell in ell_list:
        f = PG.basis_element(sqrt(2.0), ell, 2)

        def fz(s, f=f):
            return PG.evaluate(f, s)

        worst = max(worst, TR.rbf_weyl_semigroup_defect(ell, beta, beta1, fz, zs, phase_fn(beta, beta1)))
    return worst


def check_rbf_weyl_stated():
    return _check(
        "transforms.rbf_weyl_stated",
        "RBF-Weyl law with phase exp(-(2i/gamma^2) Im(beta conj beta1)), gamma = sqrt2",
        "polyanalytic RBF-Weyl semigroup",
        _rbf_weyl_sample(TR.rbf_weyl_phase_stated),
        1e-12,
    )


def check_rbf_weyl_derived():
    return _check(
        "transforms.rbf_weyl_derived",
        "RBF-Weyl closed form obeys phase exp((i/2) Im(beta conj beta1))",
        "polyanalytic RBF-Weyl operator",
        _rbf_weyl_sample(TR.rbf_weyl_phase),
        1e-12,
    )


def check_phi_m():
    worst = max(
        abs(TR.phi_m_series(m, z, u) - TR.phi_m(m, z, u)) for m in range(4) for z in (0.8, 0.3 - 0.5j) for u in (1.1, -0.4)
    )
    return _check("transforms.phi_m", "series for Phi_m equals the Weyl closed form", "action of the Weyl operator", worst, 1e-10)


# mlkit


def psd_sweep(dims, seed=40, n=30):
    """Largest negative Gram eigenvalue over the gamma and N grid, per dimension."""
    out = {}
    rng = _rng(seed)
    for d in dims:
        X = rng.normal(size=(n, d))
        for g in (0.5, 1.0, 2.0, 4.0):
            for N in (1, 2, 3, 5):
                G = ML.gram(K.KernelSpec("PolyRBF_Rd", gamma=g, order=N), X)
                out[(d, g, N)] = ML.psd_check(G).min_eig
    return out


def check_psd_sweep():
    worst = max(0.0, -min(psd_sweep((1, 2, 5)).values()))
    return _check(
        "mlkit.psd_sweep",
        "minimum Gram eigenvalue >= -1e-8 across gamma, N, d in {1, 2, 5}",
        "positive definiteness",
        worst,
        1e-8,
    )


def check_psd_sweep_planar():
    # for N >= 2 the radial profile has a negative Fourier transform near 0 once d >= 3
    worst = max(0.0, -min(psd_sweep((1, 2)).values()))
    return _check(
        "mlkit.psd_sweep_planar",
        "minimum Gram eigenvalue >= -1e-8 across gamma, N, d in {1, 2}",
        "positive definiteness",
        worst,
        1e-8,
    )


def _krr_data(seed=41, n=20, d=2):
    rng = _rng(seed)
    X = rng.uniform(-2, 2, size=(n, d))
    y = np.sin(X[:, 0]) + X[:, -1] ** 2
    return ML.Dataset(X, y)


def check_krr_roundtrip():
    data = _krr_data()
    spec = K.KernelSpec("PolyRBF_Rd", gamma=2.0, order=2)
    model = ML.GramModel.from_json(ML.krr_fit(spec, data, 1e-10).to_json())
    pred = ML.krr_predict(model, data.X)
    return _check(
        "mlkit.krr_roundtrip",
        "fit, serialize, predict reproduces training targets at lambda = 1e-10",
        "kernel ridge regression",
        np.max(np.abs(pred - data.y) / np.maximum(1.0, np.abs(data.y))),
        1e-6,
    )


def classical_rbf_krr(X, y, Xn, gamma, lam):
    """Independent Gaussian-RBF ridge regression by exp/dot arithmetic."""
    sq = np.sum(X * X, 1)
    G = np.exp(-(sq[:, None] + sq[None, :] - 2 * X @ X.T) / gamma**2)
    c = np.linalg.solve(G + lam * np.eye(len(y)), y)
    sqn = np.sum(Xn * Xn, 1)
    return np.exp(-(sqn[:, None] + sq[None, :] - 2 * Xn @ X.T) / gamma**2) @ c


def check_krr_baseline():
    data = _krr_data(42, 15, 3)
    Xn = _rng(43).uniform(-2, 2, size=(10, 3))
    lam = 1e-3
    spec = K.KernelSpec("PolyRBF_Rd", gamma=1.5, order=1)
    ours = ML.krr_predict(ML.krr_fit(spec, data, lam), Xn)
    base = classical_rbf_krr(data.X, data.y, Xn, 1.5, lam)
    return _check(
        "mlkit.krr_baseline",
        "N = 1 predictions match a classical Gaussian RBF ridge regression",
        "classical Gaussian RBF kernel",
        np.max(np.abs(ours - base)),
        1e-10,
    )


SUITES = {
    "specfun": [
        check_hermite_orthonormality,
        check_laguerre_recurrence,
        check_ito_orthogonality,
        check_ito_laguerre_link,
        check_ito_derivative,
        check_ito_generating,
        check_ito_kernel_series,
        check_christoffel_darboux,
        check_cd_integral,
        check_phi_n,
        check_phi_rho,
        check_mehler_series,
    ],
    "kernels": [
        check_kernel_sum,
        check_fock_factorization,
        check_zaremba,
        check_hermitian,
        check_restriction,
        check_polyfock_binomial,
        check_i_am,
        check_s_aN,
        check_mehler_limit,
    ],
    "polygauss": [
        check_eigen_residual,
        check_schrodinger_stated,
        check_schrodinger_shifted,
        check_schrodinger_order,
        check_orthonormality,
        check_adjointness,
        check_reproducing,
        check_box_composition,
    ],
    "transforms": [
        check_conv_triple,
        check_modulated_conv,
        check_bargmann_basis,
        check_bargmann_unitarity,
        check_bargmann_roundtrip,
        check_weyl_fock,
        check_weyl_true_poly,
        check_rbf_weyl_stated,
        check_rbf_weyl_derived,
        check_phi_m,
    ],
    "mlkit": [check_psd_sweep, check_psd_sweep_planar, check_krr_roundtrip, check_krr_baseline],
}


def run_suite(name):
    """Run a named suite (or "all"); return (checks, wall_time)."""
    if name == "all":
        fns = [f for s in SUITES.values() for f in s]
    elif name in SUITES:
        fns = SUITES[name]
    else:
        raise KeyError(name)
    t0 = time.perf_counter()
    checks = []
    for fn in fns:
        out = fn()
        checks.extend(out if isinstance(out, list) else [out])
    checks.sort(key=lambda c: c.id)
    return checks, time.perf_counter() - t0
