from math import exp, factorial, sqrt

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from polyrbf import polygauss as PG
from polyrbf import quad, specfun

POINTS = [(0.3, 0.2), (-0.5, 0.4), (0.1, -0.3), (0.8, -0.1), (-0.2, -0.6)]

coef = st.complex_numbers(max_magnitude=3.0, allow_nan=False, allow_infinity=False)
tables = st.lists(st.lists(coef, min_size=4, max_size=4), min_size=4, max_size=4).map(np.array)
widths = st.sampled_from([1.0, 2.0, sqrt(2.0)])


def test_first_level_basis_is_scaled_monomial():
    for m in range(6):
        e = PG.basis_element(2.0, 1, m)
        expected = np.zeros((m + 1, 1))
        expected[m, 0] = 1.0 / (sqrt(factorial(m)) * 2 ** (m / 2))
        assert np.allclose(e.coeffs, expected, rtol=1e-15, atol=0)


def test_ground_basis_element():
    e = PG.basis_element(2.0, 1, 0)
    assert e.coeffs.tolist() == [[1.0]]
    assert PG.evaluate(e, 0.7) == pytest.approx(exp(-0.49 / 4), rel=1e-15)


def test_basis_element_pointwise():
    z = 1 + 1j
    e = PG.basis_element(2.0, 2, 1)
    ref = PG.basis_norm_const(2.0, 2, 1) * specfun.ito_hermite(1, 1, z, alpha=0.5) * np.exp(-z * z / 4)
    assert abs(PG.evaluate(e, z) - ref) < 1e-13


def test_astar_kills_holomorphic():
    for m in range(5):
        assert PG.apply("Astar", PG.basis_element(2.0, 1, m)).is_zero()


@pytest.mark.parametrize("ell", [2, 3, 4])
@pytest.mark.parametrize("m", [0, 1, 3])
def test_iterated_creation_gives_ito_hermite(ell, m):
    f = PG.monomial(2.0, m)
    for _ in range(ell - 1):
        f = PG.apply("A", f)
    g = 2.0**m * PG.PolyGaussRep(2.0, specfun.ito_hermite_coeffs(ell - 1, m, 0.5))
    assert (f - g).is_zero()


def test_box_exact_eigenvalue_example():
    h = PG.htilde(2.0, 3, 2)
    assert PG.apply("Box", h) == 1.0 * h
    assert PG.box_eigenvalue(2.0, 3) == 1.0


@pytest.mark.parametrize("gamma,ell,m", [(2.0, 1, 0), (2.0, 1, 4), (2.0, 4, 3), (sqrt(2.0), 2, 0), (sqrt(2.0), 5, 5)])
def test_eigen_residual(gamma, ell, m):
    assert PG.eigen_residual(gamma, ell, m) < 1e-12


def test_evaluate_examples():
    assert PG.evaluate(PG.zero(2.0), 0.3 + 0.1j) == 0
    assert PG.evaluate(PG.basis_element(2.0, 1, 1), 1.0) == pytest.approx(exp(-0.25) / sqrt(2), rel=1e-15)


def test_mul_z_semantics():
    rng = np.random.default_rng(3)
    f = PG.basis_element(2.0, 2, 3)
    zf = PG.apply("MulZ", f)
    zb = PG.apply("MulZbar", f)
    for z in rng.normal(size=20) + 1j * rng.normal(size=20):
        assert abs(PG.evaluate(zf, z) - z * PG.evaluate(f, z)) < 1e-13 * max(1, abs(z * PG.evaluate(f, z)))
        assert abs(PG.evaluate(zb, z) - np.conj(z) * PG.evaluate(f, z)) < 1e-13 * max(1, abs(PG.evaluate(zb, z)))


def _num_dz(F, z, h=1e-5):
    return 0.5 * ((F(z + h) - F(z - h)) / (2 * h) - 1j * (F(z + 1j * h) - F(z - 1j * h)) / (2 * h))


def _num_dzbar(F, z, h=1e-5):
    return 0.5 * ((F(z + h) - F(z - h)) / (2 * h) + 1j * (F(z + 1j * h) - F(z - 1j * h)) / (2 * h))


@pytest.mark.parametrize("op,num", [("Dz", _num_dz), ("Dzbar", _num_dzbar), ("Astar", _num_dzbar)])
def test_derivatives_match_finite_differences(op, num):
    f = PG.basis_element(sqrt(2.0), 3, 2)
    F = lambda z: PG.evaluate(f, z)  # noqa: E731
    g = PG.apply(op, f)
    for z in (0.3 + 0.2j, -0.4 + 0.5j):
        assert abs(PG.evaluate(g, z) - num(F, z)) < 1e-7


@given(tables, widths)
def test_box_equals_composition_and_magnetic_laplacian(c, g):
    f = PG.from_coeffs(g, c)
    box = PG.apply("Box", f)
    assert box == PG.apply("A", PG.apply("Astar", f))
    assert box == PG.apply("MagneticLaplacian", f)


@given(tables, tables, widths)
def test_linearity(c1, c2, g):
    f, h = PG.from_coeffs(g, c1), PG.from_coeffs(g, c2)
    for op in PG.Op:
        lhs = PG.apply(op, f + 2.0 * h)
        rhs = PG.apply(op, f) + 2.0 * PG.apply(op, h)
        d = lhs - rhs
        assert d.is_zero() or np.max(np.abs(d.coeffs)) < 1e-12 * max(1.0, np.max(np.abs(lhs.coeffs)))


def test_polyanalytic_order():
    # the true level ell is annihilated by ell powers of d/dzbar and no fewer
    for ell in range(1, 5):
        f = PG.basis_element(2.0, ell, 2)
        for k in range(ell):
            assert not f.is_zero()
            f = PG.apply("Astar", f)
        assert f.is_zero()


def test_rep_is_immutable_and_trimmed():
    c = np.zeros((4, 4), dtype=complex)
    c[1, 0] = 2.0
    f = PG.from_coeffs(2.0, c)
    assert f.coeffs.shape == (2, 1)
    with pytest.raises(ValueError):
        f.coeffs[0, 0] = 1.0
    assert f.deg_z == 1 and f.deg_zbar == 0
    with pytest.raises(ValueError):
        PG.from_coeffs(2.0, np.array([[np.nan]]))


def test_width_mismatch_rejected():
    with pytest.raises(ValueError):
        PG.basis_element(2.0, 1, 0) + PG.basis_element(1.0, 1, 0)


def test_orthonormality_small_sample():
    B = [PG.basis_element(2.0, ell, m) for ell in (1, 2, 3) for m in (0, 2, 5)]
    G = np.array([[quad.rbf_inner(f, h) for h in B] for f in B])
    assert np.max(np.abs(G - np.eye(len(B)))) < 1e-9


def test_adjointness_small_sample():
    B = [PG.basis_element(sqrt(2.0), ell, m) for ell in (1, 2) for m in (0, 1, 3)]
    for f in B:
        for h in B:
            d = quad.rbf_inner(PG.apply("A", f), h) - quad.rbf_inner(f, PG.apply("Astar", h))
            assert abs(d) < 1e-9


def _shifted(g, ell):
    return PG.box_eigenvalue(g, ell) + 1 / g**2


@pytest.mark.parametrize("gamma,ell,m", [(2.0, 1, 0), (2.0, 2, 1), (sqrt(2.0), 3, 2)])
def test_schrodinger_at_ground_state_shifted_eigenvalue(gamma, ell, m):
    r1 = PG.schrodinger_check(gamma, ell, m, POINTS, 1e-3, eigenvalue=_shifted(gamma, ell))
    r2 = PG.schrodinger_check(gamma, ell, m, POINTS, 5e-4, eigenvalue=_shifted(gamma, ell))
    assert r1 < 1e-5
    assert 3.0 < r1 / r2 < 5.5


def test_schrodinger_stated_eigenvalue_is_off_by_ground_energy():
    # residual at 2(ell-1)/gamma^2 equals the 1/gamma^2 shift times |g H~|
    gamma, ell, m = 2.0, 2, 1
    r = PG.schrodinger_check(gamma, ell, m, POINTS, 1e-3)
    f = PG.htilde(gamma, ell, m)
    size = max(abs(PG.ground_state(gamma, y) * PG.evaluate(f, x + 1j * y)) for x, y in POINTS)
    assert r == pytest.approx(size / gamma**2, rel=1e-4)


@pytest.mark.parametrize("h", [0.0, -1e-3])
def test_schrodinger_step_validation(h):
    with pytest.raises(ValueError):
        PG.schrodinger_check(2.0, 1, 0, POINTS, h)
