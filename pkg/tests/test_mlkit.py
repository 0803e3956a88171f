import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyrbf import mlkit as ML
from polyrbf.kernels import KernelSpec
from polyrbf.verify import classical_rbf_krr


def spec(gamma=2.0, order=2):
    return KernelSpec("PolyRBF_Rd", gamma=gamma, order=order)


@pytest.mark.parametrize("N", [1, 2, 5])
def test_single_point_gram(N):
    G = ML.gram(spec(1.3, N), np.array([[0.2, -0.4]]))
    assert G.shape == (1, 1) and G[0, 0] == pytest.approx(N)


def test_order_one_gram_is_classical():
    X = np.random.default_rng(0).normal(size=(12, 3))
    d2 = np.sum((X[:, None, :] - X[None, :, :]) ** 2, axis=-1)
    assert np.max(np.abs(ML.gram(spec(1.7, 1), X) - np.exp(-d2 / 1.7**2))) < 1e-14


def test_gram_symmetric_exactly():
    G = ML.gram(spec(1.0, 3), np.random.default_rng(1).normal(size=(15, 2)))
    assert np.array_equal(G, G.T)


def test_gram_requires_rd_family():
    with pytest.raises(ValueError):
        ML.gram(KernelSpec("RBF"), np.zeros((2, 1)))


def test_small_gram_in_r3():
    X = np.random.default_rng(7).normal(size=(5, 3))
    assert ML.psd_check(ML.gram(spec(2.0, 2), X)).min_eig >= -1e-10


def test_psd_check_examples():
    r = ML.psd_check(np.eye(4))
    assert r.passed and r.min_eig == pytest.approx(1.0)
    X = np.random.default_rng(2).normal(size=(30, 2))
    assert ML.psd_check(ML.gram(spec(2.0, 3), X), tol=1e-8).passed
    Xd = np.vstack([X[:10], X[:1]])
    r = ML.psd_check(ML.gram(spec(2.0, 3), Xd))
    assert r.passed and r.min_eig >= -1e-8
    with pytest.raises(ValueError):
        ML.psd_check(np.array([[1.0, 2.0], [0.0, 1.0]]))


@given(st.sampled_from([0.5, 1.0, 2.0, 4.0]), st.sampled_from([1, 2, 3, 5]), st.integers(0, 10_000))
@settings(max_examples=25, deadline=None)
def test_planar_gram_psd(gamma, N, seed):
    X = np.random.default_rng(seed).normal(size=(20, 2))
    assert ML.psd_check(ML.gram(spec(gamma, N), X)).passed


def test_higher_dimensional_gram_can_be_indefinite():
    # for d >= 3 and N = 2 the radial profile has negative Fourier mass near the origin
    X = np.random.default_rng(40).normal(size=(200, 5))
    assert ML.psd_check(ML.gram(spec(2.0, 2), X)).min_eig < -1e-3


def _data(n=20, d=2, seed=4):
    rng = np.random.default_rng(seed)
    X = rng.uniform(-2, 2, size=(n, d))
    return ML.Dataset(X, np.sin(X[:, 0]) + X[:, -1] ** 2)


def test_single_point_fit():
    data = ML.Dataset(np.array([[0.3, 0.1]]), np.array([2.5]))
    m = ML.krr_fit(spec(), data, 0.0)
    assert ML.krr_predict(m, data.X)[0] == pytest.approx(2.5, abs=1e-12)


def test_interpolates_kernel_section():
    p = np.array([0.4, -0.2])
    rng = np.random.default_rng(9)
    X = rng.uniform(-2, 2, size=(20, 2))
    s = spec(2.0, 2)
    y = ML.cross_gram(s, X, p[None, :])[:, 0]
    m = ML.krr_fit(s, ML.Dataset(X, y), 1e-10)
    assert np.max(np.abs(ML.krr_predict(m, X) - y)) < 1e-6


def test_large_ridge_shrinks_to_zero():
    data = _data()
    m = ML.krr_fit(spec(), data, 1e12)
    assert np.max(np.abs(ML.krr_predict(m, data.X))) < 1e-9


def test_fit_roundtrip_and_json():
    data = _data()
    m = ML.krr_fit(spec(2.0, 2), data, 1e-10)
    m2 = ML.GramModel.from_json(m.to_json())
    assert np.array_equal(m2.dual_coeffs, m.dual_coeffs)
    assert m2.spec == m.spec
    pred = ML.krr_predict(m2, data.X)
    assert np.max(np.abs(pred - data.y)) < 1e-6


def test_order_one_matches_classical_krr():
    data = _data(15, 3, 5)
    Xn = np.random.default_rng(6).uniform(-2, 2, size=(8, 3))
    ours = ML.krr_predict(ML.krr_fit(spec(1.5, 1), data, 1e-3), Xn)
    assert np.max(np.abs(ours - classical_rbf_krr(data.X, data.y, Xn, 1.5, 1e-3))) < 1e-10


def test_permutation_invariance():
    data = _data()
    perm = np.random.default_rng(8).permutation(len(data))
    a = ML.krr_predict(ML.krr_fit(spec(), data, 1e-6), data.X[:5])
    b = ML.krr_predict(ML.krr_fit(spec(), ML.Dataset(data.X[perm], data.y[perm]), 1e-6), data.X[:5])
    assert np.max(np.abs(a - b)) < 1e-8


def test_fit_is_deterministic():
    data = _data()
    a = ML.krr_fit(spec(), data, 1e-8).to_json()
    assert a == ML.krr_fit(spec(), data, 1e-8).to_json()


def test_jitter_escalation_on_duplicates():
    X = np.array([[0.0], [0.0], [1.0]])
    m = ML.krr_fit(spec(2.0, 1), ML.Dataset(X, [1.0, 1.0, 0.0]), 0.0)
    assert m.jitter_used in ML.JITTERS and m.jitter_used > 0


def test_predict_dimension_mismatch():
    m = ML.krr_fit(spec(), _data(), 1e-6)
    with pytest.raises(ML.DimensionError):
        ML.krr_predict(m, np.zeros((2, 3)))


def test_dataset_validation():
    with pytest.raises(ValueError):
        ML.Dataset(np.array([[np.nan]]))
    with pytest.raises(ML.DimensionError):
        ML.Dataset(np.zeros((3, 2)), np.zeros(2))
    with pytest.raises(ValueError):
        ML.krr_fit(spec(), _data(), -1.0)


def test_csv_load(tmp_path):
    p = tmp_path / "d.csv"
    p.write_text("a,b,y\n1,2,3\n4,5,6\n7,8,9\n")
    d = ML.load_csv(p, target="y")
    assert d.d == 2 and len(d) == 3
    assert d.feature_names == ("a", "b")
    assert d.y.tolist() == [3.0, 6.0, 9.0]


def test_csv_inf_cell_named(tmp_path):
    p = tmp_path / "d.csv"
    p.write_text("a,b\n1,2\n3,inf\n")
    with pytest.raises(ML.CsvError, match=r"row 3, column 'b'"):
        ML.load_csv(p)


@pytest.mark.parametrize("text", ["a,b\n1,x\n", "a,b\n1\n", "", "a,b\n"])
def test_csv_errors(tmp_path, text):
    p = tmp_path / "d.csv"
    p.write_text(text)
    with pytest.raises(ML.CsvError):
        ML.load_csv(p)


def test_csv_roundtrip_bit_exact(tmp_path):
    rng = np.random.default_rng(11)
    d = ML.Dataset(rng.normal(size=(6, 3)) * 1e3, rng.normal(size=6) / 7, ("p", "q", "r"))
    p = tmp_path / "rt.csv"
    ML.save_csv(p, d)
    d2 = ML.load_csv(p, target="y")
    assert np.array_equal(d2.X, d.X) and np.array_equal(d2.y, d.y)
