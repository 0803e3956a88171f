import warnings
from math import factorial, gamma, pi, sqrt

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from polyrbf import kernels, polygauss, quad, specfun


def test_order_one_rule():
    r = quad.gauss_hermite(1)
    assert r.nodes.tolist() == [0.0]
    assert r.weights[0] == pytest.approx(sqrt(pi), rel=1e-15)


@pytest.mark.parametrize("order", [0, -3, 2.5, quad.MAX_ORDER + 1])
def test_order_out_of_range(order):
    with pytest.raises(ValueError):
        quad.gauss_hermite(order)


def test_weight_sum():
    assert abs(np.sum(quad.gauss_hermite(64).weights) - sqrt(pi)) < 1e-12


def test_rule_matches_numpy():
    x, w = np.polynomial.hermite.hermgauss(40)
    r = quad.gauss_hermite(40)
    assert np.allclose(r.nodes, x, atol=1e-13)
    assert np.allclose(r.weights, w, rtol=1e-11, atol=1e-300)


def test_rule_is_symmetric_and_read_only():
    r = quad.gauss_hermite(31)
    assert np.array_equal(r.nodes, -r.nodes[::-1])
    assert np.array_equal(r.weights, r.weights[::-1])
    with pytest.raises(ValueError):
        r.nodes[0] = 1.0


def _moment(k):
    # integral of x^k e^{-x^2}
    return 0.0 if k % 2 else gamma((k + 1) / 2)


@pytest.mark.parametrize("k", [0, 2, 10, 24, 38])
def test_moments_exact(k):
    r = quad.gauss_hermite(20)
    v = quad.integrate_weighted(lambda x: x**k, r).real
    assert abs(v - _moment(k)) <= 1e-11 * _moment(k)


@given(st.integers(1, 60))
def test_exactness_degree(order):
    r = quad.gauss_hermite(order)
    k = 2 * order - 2
    v = quad.integrate_weighted(lambda x: x**k, r).real
    assert abs(v - _moment(k)) <= 1e-10 * _moment(k)


def test_doubling_order_does_not_increase_error():
    f = lambda x: np.cos(2 * x) * np.exp(0.3 * x)  # noqa: E731
    exact = sqrt(pi) * np.exp(-0.25 * (4 - 0.09)) * np.cos(0.6)
    errs = [abs(quad.integrate_weighted(f, quad.gauss_hermite(n)).real - exact) for n in (8, 16, 32, 64)]
    assert all(b <= max(a, 1e-15) for a, b in zip(errs, errs[1:]))


def test_shifted_scaled_weight():
    r = quad.gauss_hermite(10)
    v = quad.integrate_weighted(lambda x: np.ones_like(x), r, center=3.0, scale=0.5)
    assert v.real == pytest.approx(0.5 * sqrt(pi), rel=1e-14)


def test_tree_sum_deterministic_and_exact():
    v = np.arange(1, 101, dtype=float)
    assert quad.tree_sum(v) == 5050.0
    assert quad.tree_sum([]) == 0


def test_inner_l2_examples():
    r = quad.gauss_hermite(64)
    p = lambda n: lambda x: specfun.normalized_hermite(n, x)  # noqa: E731
    assert abs(quad.inner_l2(p(3), p(3), r) - 1) < 1e-11
    assert abs(quad.inner_l2(p(2), p(5), r)) < 1e-11


def test_inner_l2_bargmann_ground_state():
    from polyrbf.transforms import sb_kernel

    z = 0.5 + 0.2j
    r = quad.gauss_hermite(64)
    # <psi_0, conj A_z> = (B psi_0)(z) = 1
    v = quad.inner_l2(lambda x: specfun.normalized_hermite(0, x), lambda x: np.conj(sb_kernel(z, x)), r)
    assert abs(v - 1) < 1e-9


def test_non_finite_integrand_rejected():
    r = quad.gauss_hermite(8)
    with pytest.raises(ValueError):
        quad.integrate_weighted(lambda x: np.full_like(x, np.nan), r)


def test_fock_monomials_orthonormal():
    r = quad.gauss_hermite(24)
    m = quad.fock_plane(1.0)
    for a in range(9):
        for b in range(9):
            v = quad.inner_plane(
                lambda z: z**a / sqrt(factorial(a)), lambda z: z**b / sqrt(factorial(b)), m, r
            )
            assert abs(v - (a == b)) < 1e-11


def test_rbf_plane_first_level_norms():
    r = quad.gauss_hermite(64)
    for m in range(6):
        e = polygauss.basis_element(2.0, 1, m)
        assert abs(quad.inner_plane(e, e, quad.rbf_plane(2.0), r) - 1) < 1e-9


def test_rbf_plane_callable_and_rep_agree():
    r = quad.gauss_hermite(48)
    e = polygauss.basis_element(2.0, 2, 1)
    a = quad.inner_plane(e, e, quad.rbf_plane(2.0), r)
    b = quad.inner_plane(lambda z: polygauss.evaluate(e, z), e, quad.rbf_plane(2.0), r)
    assert abs(a - b) < 1e-12


def test_fock_reproducing_diagonal():
    alpha, N, w = 0.5, 2, 0.4 + 0.3j
    r = quad.gauss_hermite(40)
    k = lambda z: kernels.poly_fock_kernel(alpha, N, z, w)  # noqa: E731
    v = quad.inner_plane(k, k, quad.fock_plane(alpha), r)
    assert abs(v - kernels.poly_fock_kernel(alpha, N, w, w)) < 1e-8


def test_measure_validation():
    with pytest.raises(ValueError):
        quad.fock_plane(0.0)
    with pytest.raises(ValueError):
        quad.rbf_plane(-1.0)


def test_reproduce_rbf_examples():
    e10 = polygauss.basis_element(2.0, 1, 0)
    assert abs(quad.reproduce_rbf(e10, 2.0, 1, 0.0) - polygauss.evaluate(e10, 0.0)) < 1e-10
    e21 = polygauss.basis_element(2.0, 2, 1)
    w = 0.3 - 0.2j
    assert abs(quad.reproduce_rbf(e21, 2.0, 2, w) - polygauss.evaluate(e21, w)) < 1e-8


def test_reproduce_rbf_projects_out_higher_levels():
    # e_{3,0} is orthogonal to the order-2 space, so its projection vanishes
    e30 = polygauss.basis_element(2.0, 3, 0)
    w = 0.3 - 0.2j
    assert abs(quad.reproduce_rbf(e30, 2.0, 2, w)) < 1e-10
    assert abs(polygauss.evaluate(e30, w)) > 0.01


def test_reproduce_rbf_warns_on_degree_overflow():
    f = polygauss.basis_element(2.0, 1, 10)
    with warnings.catch_warnings(record=True) as rec:
        warnings.simplefilter("always")
        quad.reproduce_rbf(f, 2.0, 1, 0.1, rule=quad.gauss_hermite(12))
    assert any(issubclass(w.category, RuntimeWarning) for w in rec)


def test_rbf_measure_width_mismatch():
    e = polygauss.basis_element(2.0, 1, 0)
    with pytest.raises(ValueError):
        quad.inner_plane(e, e, quad.rbf_plane(1.0), quad.gauss_hermite(8))
