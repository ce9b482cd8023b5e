"""Multinomial logit over outcomes {-1, 0, +1} with 0 as the base category.

Parameters are stacked as ``theta = [beta_{-1}; beta_{+1}]``, each of length
``K`` (intercept first when added). Fitting is Newton-Raphson with step
halving on the exact Hessian.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.stats import norm

CATEGORIES = (-1, 0, 1)
NONBASE = (-1, 1)


class RankDeficient(ValueError):
    pass


class Separation(ArithmeticError):
    def __init__(self, message: str, column: str | None = None):
        super().__init__(message)
        self.column = column


class SingularInformation(np.linalg.LinAlgError):
    pass


def add_intercept(X: np.ndarray) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    return np.column_stack([np.ones(len(X)), X]) if X.ndim == 2 else np.ones((len(X), 1))


def _onehot(y: np.ndarray) -> np.ndarray:
    y = np.asarray(y)
    bad = set(np.unique(y).tolist()) - set(CATEGORIES)
    if bad:
        raise ValueError(f"outcomes must lie in {CATEGORIES}; found {sorted(bad)}")
    return np.stack([(y == c).astype(float) for c in CATEGORIES], axis=1)


def probabilities(Z: np.ndarray, theta: np.ndarray) -> np.ndarray:
    """(n, 3) fitted probabilities, columns ordered -1, 0, +1."""
    K = Z.shape[1]
    B = theta.reshape(2, K)
    eta = np.column_stack([Z @ B[0], np.zeros(len(Z)), Z @ B[1]])
    eta -= eta.max(axis=1, keepdims=True)
    P = np.exp(eta)
    return P / P.sum(axis=1, keepdims=True)


def loglik(Z: np.ndarray, y: np.ndarray, theta: np.ndarray) -> float:
    K = Z.shape[1]
    B = theta.reshape(2, K)
    eta = np.column_stack([Z @ B[0], np.zeros(len(Z)), Z @ B[1]])
    m = eta.max(axis=1, keepdims=True)
    lse = (m + np.log(np.exp(eta - m).sum(axis=1, keepdims=True))).ravel()
    Y = _onehot(y)
    return float(np.sum(Y * eta) - lse.sum())


def score_contributions(Z: np.ndarray, y: np.ndarray, theta: np.ndarray) -> np.ndarray:
    """(n, 2K) per-observation gradients of the log-likelihood."""
    R = _onehot(y) - probabilities(Z, theta)
    return np.hstack([R[:, [0]] * Z, R[:, [2]] * Z])


def information(Z: np.ndarray, theta: np.ndarray) -> np.ndarray:
    """Observed information (negative Hessian); equals the expected one for this model."""
    P = probabilities(Z, theta)[:, [0, 2]]
    K = Z.shape[1]
    A = np.zeros((2 * K, 2 * K))
    for a in range(2):
        for b in range(2):
            w = P[:, a] * ((a == b) - P[:, b])
            A[a * K:(a + 1) * K, b * K:(b + 1) * K] = (Z * w[:, None]).T @ Z
    return A


def _inverse(A: np.ndarray) -> np.ndarray:
    if np.linalg.matrix_rank(A) < A.shape[0]:
        raise SingularInformation("information matrix is singular")
    return np.linalg.inv(A)


@dataclass
class MlogitFit:
    columns: tuple[str, ...]
    params: np.ndarray             # (K, 2): column 0 is the Y=-1 equation, column 1 is Y=+1
    cov_model: np.ndarray          # (2K, 2K) in theta order
    loglik: float
    iterations: int
    grad_max: float
    intercept: bool = True
    cov_robust: np.ndarray | None = None
    nobs: int = 0
    counts: dict[int, int] = field(default_factory=dict)

    @property
    def theta(self) -> np.ndarray:
        return self.params.T.ravel()

    def design(self, X: np.ndarray) -> np.ndarray:
        return add_intercept(X) if self.intercept else np.asarray(X, dtype=float)

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        return probabilities(self.design(X), self.theta)

    def cov(self, flavor: str = "model") -> np.ndarray:
        if flavor == "model":
            return self.cov_model
        if flavor == "robust":
            if self.cov_robust is None:
                raise ValueError("fit has no robust covariance")
            return self.cov_robust
        raise ValueError(f"unknown covariance flavor {flavor!r}")

    def se(self, flavor: str = "model") -> np.ndarray:
        K = len(self.columns)
        return np.sqrt(np.diag(self.cov(flavor))).reshape(2, K).T

    def z(self, flavor: str = "model") -> np.ndarray:
        return self.params / self.se(flavor)


def fit_mlogit(
    X: np.ndarray,
    y: Sequence[int],
    columns: Sequence[str] | None = None,
    intercept: bool = True,
    robust: bool = True,
    tol: float = 1e-8,
    max_iter: int = 200,
    max_eta: float = 25.0,
) -> MlogitFit:
    """Maximum-likelihood fit; convergence when the gradient max-norm falls below ``tol``."""
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X.reshape(-1, 0) if X.size == 0 else X[:, None]
    y = np.asarray(y, dtype=int)
    Z = add_intercept(X) if intercept else X
    n, K = Z.shape
    names = list(columns) if columns is not None else [f"x{j + 1}" for j in range(X.shape[1])]
    if intercept:
        names = ["const", *names]
    if len(names) != K:
        raise ValueError(f"{len(names)} column names for {K} columns")
    if n <= K:
        raise RankDeficient(f"{n} observations for {K} parameters per equation")
    if np.linalg.matrix_rank(Z) < K:
        raise RankDeficient("design matrix is rank deficient (collinear or constant column)")
    _onehot(y)

    theta = np.zeros(2 * K)
    ll = loglik(Z, y, theta)
    it = 0
    while True:
        g = score_contributions(Z, y, theta).sum(axis=0)
        gmax = float(np.max(np.abs(g)))
        if gmax < tol:
            break
        if it >= max_iter:
            raise Separation(
                f"no convergence after {max_iter} Newton steps (gradient {gmax:.3g})",
                _worst_column(Z, theta, names),
            )
        A = information(Z, theta)
        try:
            step = np.linalg.solve(A, g)
        except np.linalg.LinAlgError:
            step = np.linalg.lstsq(A, g, rcond=None)[0]
        t = 1.0
        while True:
            cand = theta + t * step
            ll_new = loglik(Z, y, cand)
            if ll_new >= ll - 1e-12 * abs(ll) or t < 1e-10:
                break
            t *= 0.5
        theta, ll = cand, ll_new
        it += 1

    if np.max(np.abs(Z @ theta.reshape(2, K).T)) > max_eta:
        raise Separation("fitted log-odds are unbounded", _worst_column(Z, theta, names))
    A = information(Z, theta)
    cov = _inverse(A)
    fit = MlogitFit(
        tuple(names), theta.reshape(2, K).T.copy(), cov, ll, it, gmax, intercept,
        nobs=n, counts={c: int(np.sum(y == c)) for c in CATEGORIES},
    )
    if robust:
        fit.cov_robust = sandwich_cov(fit, X, y)
    return fit


def _worst_column(Z: np.ndarray, theta: np.ndarray, names: Sequence[str]) -> str:
    K = Z.shape[1]
    B = theta.reshape(2, K)
    reach = np.abs(B).max(axis=0) * np.abs(Z).max(axis=0)
    if K > 1 and names[0] == "const":
        reach[0] = -1.0
    return names[int(np.argmax(reach))]


def sandwich_cov(fit: MlogitFit, X: np.ndarray, y: Sequence[int]) -> np.ndarray:
    """Huber-White ``A^-1 B A^-1`` at the fitted parameters."""
    Z = fit.design(X)
    y = np.asarray(y, dtype=int)
    theta = fit.theta
    A_inv = _inverse(information(Z, theta))
    S = score_contributions(Z, y, theta)
    B = S.T @ S
    return A_inv @ B @ A_inv


def wald_p(fit: MlogitFit, flavor: str = "model") -> np.ndarray:
    """Two-sided normal p-values, shaped like ``fit.params``."""
    z = fit.z(flavor)
    return 2.0 * norm.sf(np.abs(z))
