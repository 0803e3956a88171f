"""Gram matrices, PSD checks and kernel ridge regression on R^d."""

import csv
import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve, eigvalsh

from .kernels import Family, KernelSpec, poly_rbf_kernel_rd

JITTERS = (0.0, 1e-12, 1e-10, 1e-8)


class DimensionError(ValueError):
    pass


class CsvError(ValueError):
    pass


class SingularSystemError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class Dataset:
    X: np.ndarray
    y: np.ndarray | None = None
    feature_names: tuple | None = None

    def __post_init__(self):
        X = np.array(self.X, dtype=float)
        if X.ndim == 1:
            X = X[:, None]
        if X.ndim != 2 or X.shape[1] < 1:
            raise DimensionError("X must be a 2-D array with at least one column")
        if not np.all(np.isfinite(X)):
            raise ValueError("X contains non-finite entries")
        object.__setattr__(self, "X", X)
        if self.y is not None:
            y = np.array(self.y, dtype=float).reshape(-1)
            if y.shape[0] != X.shape[0]:
                raise DimensionError("y length does not match the number of rows")
            if not np.all(np.isfinite(y)):
                raise ValueError("y contains non-finite entries")
            object.__setattr__(self, "y", y)
        if self.feature_names is not None:
            names = tuple(self.feature_names)
            if len(names) != X.shape[1]:
                raise DimensionError("feature_names length does not match the number of columns")
            object.__setattr__(self, "feature_names", names)

    @property
    def d(self):
        return self.X.shape[1]

    def __len__(self):
        return self.X.shape[0]


def _rows(X):
    return X.X if isinstance(X, Dataset) else Dataset(X).X


def _check_spec(spec):
    if spec.family is not Family.PolyRBF_Rd:
        raise ValueError("mlkit requires the PolyRBF_Rd family")


def gram(spec, X):
    """Symmetric Gram matrix, each unordered pair evaluated once."""
    _check_spec(spec)
    X = _rows(X)
    n = X.shape[0]
    i, j = np.triu_indices(n)
    vals = poly_rbf_kernel_rd(spec.gamma, spec.order, X[i], X[j])
    if not np.all(np.isfinite(vals)):
        raise ValueError("non-finite kernel value")
    G = np.empty((n, n))
    G[i, j] = vals
    G[j, i] = vals
    return G


def cross_gram(spec, X_new, X_train):
    _check_spec(spec)
    A = _rows(X_new)
    B = _rows(X_train)
    if A.shape[1] != B.shape[1]:
        raise DimensionError(f"feature dimension {A.shape[1]} does not match the model's {B.shape[1]}")
    return poly_rbf_kernel_rd(spec.gamma, spec.order, A[:, None, :], B[None, :, :])


@dataclass(frozen=True)
class PsdReport:
    min_eig: float
    passed: bool


def psd_check(G, tol=1e-8):
    G = np.asarray(G, dtype=float)
    if G.ndim != 2 or G.shape[0] != G.shape[1]:
        raise ValueError("matrix must be square")
    if np.max(np.abs(G - G.T), initial=0.0) > 1e-12:
        raise ValueError("matrix is not symmetric")
    lam = float(eigvalsh(G)[0]) if G.size else math.inf
    return PsdReport(lam, lam >= -tol)


@dataclass(frozen=True, eq=False)
class GramModel:
    spec: KernelSpec
    X_train: np.ndarray
    dual_coeffs: np.ndarray
    ridge_lambda: float
    jitter_used: float

    def to_json(self):
        doc = {
            "spec": self.spec.to_dict(),
            "X_train": self.X_train.tolist(),
            "dual_coeffs": self.dual_coeffs.tolist(),
            "ridge_lambda": float(self.ridge_lambda),
            "jitter_used": float(self.jitter_used),
        }
        # json writes floats with repr, the shortest round-trip form
        return json.dumps(doc, indent=2)

    @classmethod
    def from_json(cls, text):
        doc = json.loads(text)
        X = np.array(doc["X_train"], dtype=float)
        c = np.array(doc["dual_coeffs"], dtype=float)
        if X.ndim != 2 or c.shape != (X.shape[0],):
            raise ValueError("malformed model: coefficient count does not match X_train")
        return cls(KernelSpec.from_dict(doc["spec"]), X, c, float(doc["ridge_lambda"]), float(doc["jitter_used"]))


def krr_fit(spec, data, ridge_lambda):
    """Solve (G + lambda I) c = y by Cholesky with escalating jitter."""
    if not ridge_lambda >= 0:
        raise ValueError("ridge_lambda must be nonnegative")
    if data.y is None:
        raise ValueError("dataset has no targets")
    G = gram(spec, data)
    n = G.shape[0]
    for jitter in JITTERS:
        try:
            factor = cho_factor(G + (ridge_lambda + jitter) * np.eye(n), lower=True)
        except LinAlgError:
            continue
        c = cho_solve(factor, data.y)
        if np.all(np.isfinite(c)):
            return GramModel(spec, data.X.copy(), c, float(ridge_lambda), jitter)
    raise SingularSystemError("system is singular after the largest jitter")


def krr_predict(model, X_new):
    return cross_gram(model.spec, X_new, model.X_train) @ model.dual_coeffs


def _cell(text, row, col):
    try:
        v = float(text)
    except ValueError:
        raise CsvError(f"row {row}, column {col!r}: cannot parse {text!r} as a number") from None
    if not math.isfinite(v):
        raise CsvError(f"row {row}, column {col!r}: non-finite value {text!r}")
    return v


def load_csv(path, target=None):
    """Read a numeric CSV with a header row; ``target`` names the y column."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise CsvError("empty file") from None
        if target is not None and target not in header:
            raise CsvError(f"target column {target!r} not in header")
        rows = []
        for r, rec in enumerate(reader, start=2):
            if not rec or all(not c.strip() for c in rec):
                continue
            if len(rec) != len(header):
                raise CsvError(f"row {r}: expected {len(header)} fields, found {len(rec)}")
            rows.append([_cell(c.strip(), r, header[k]) for k, c in enumerate(rec)])
    if not rows:
        raise CsvError("no data rows")
    A = np.array(rows, dtype=float)
    if target is None:
        return Dataset(A, None, tuple(header))
    t = header.index(target)
    feats = [k for k in range(len(header)) if k != t]
    if not feats:
        raise CsvError("no feature columns besides the target")
    return Dataset(A[:, feats], A[:, t], tuple(header[k] for k in feats))


def save_csv(path, data, target="y"):
    names = list(data.feature_names or [f"x{k}" for k in range(data.d)])
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(names + ([target] if data.y is not None else []))
        for i, row in enumerate(data.X):
            cells = [repr(float(v)) for v in row]
            if data.y is not None:
                cells.append(repr(float(data.y[i])))
            w.writerow(cells)
