"""Penalized maximum-likelihood training with L-BFGS."""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from .inference import forward_backward
from .model import CrfModel
from .templates import FeatureTemplate

log = logging.getLogger(__name__)

Example = tuple[Sequence[Sequence[str]], Sequence[str]]


class NonFiniteObjective(FloatingPointError):
    pass


@dataclass(frozen=True)
class TrainConfig:
    max_iterations: int = 500
    gaussian_variance: float = 10.0
    order: int = 1
    tolerance: float = 1e-4
    seed: int = 0
    memory: int = 10
    batch_size: int = 128

    def __post_init__(self):
        if self.max_iterations <= 0 or self.gaussian_variance <= 0 or self.tolerance <= 0:
            raise ValueError("max_iterations, gaussian_variance and tolerance must be positive")
        if self.order not in (1, 2):
            raise ValueError("order must be 1 or 2")


def label_alphabet(tag_sequences) -> tuple[str, ...]:
    tags = {t for seq in tag_sequences for t in seq}
    tags.add("O")
    return ("O",) + tuple(sorted(tags - {"O"}))


def attribute_alphabet(compiled_sequences) -> dict[str, int]:
    alphabet: dict[str, int] = {}
    for compiled in compiled_sequences:
        for feats in compiled:
            for f in feats:
                if f not in alphabet:
                    alphabet[f] = len(alphabet)
    return alphabet


@dataclass
class _Batch:
    rows: np.ndarray      # (B, T) token row per slot, -1 on padding
    mask: np.ndarray      # (B, T)
    order: np.ndarray     # token rows in batch-mask order


class IndexedData:
    """Sparse attribute indicators and label ids for a dataset under a fixed model alphabet."""

    def __init__(self, model: CrfModel, examples: Sequence[Example], batch_size: int = 128):
        label_index = {t: i for i, t in enumerate(model.labels)}
        indptr, indices, y, lengths = [0], [], [], []
        for compiled, tags in examples:
            if len(compiled) != len(tags):
                raise ValueError("feature and label sequences differ in length")
            if not tags:
                raise ValueError("empty sequence")
            for feats, tag in zip(compiled, tags):
                ids = sorted(set(model.attribute_ids(feats).tolist()))
                indices.extend(ids)
                indptr.append(len(indices))
                y.append(label_index[tag])
            lengths.append(len(tags))
        n_tok = len(y)
        L = model.n_labels
        self.X = sp.csr_matrix(
            (np.ones(len(indices)), np.array(indices, dtype=np.int64), np.array(indptr)),
            shape=(n_tok, len(model.attributes)),
        )
        self.y = np.array(y, dtype=np.int64)
        self.lengths = np.array(lengths, dtype=np.int64)
        offsets = np.concatenate([[0], np.cumsum(self.lengths)[:-1]])

        onehot = np.zeros((n_tok, L))
        onehot[np.arange(n_tok), self.y] = 1.0
        self.obs_emission = np.asarray(self.X.T @ onehot)
        self.obs_trans = np.zeros((L, L))
        self.obs_tri = np.zeros((L, L, L)) if model.order == 2 else None
        for off, n in zip(offsets, self.lengths):
            seq = self.y[off:off + n]
            np.add.at(self.obs_trans, (seq[:-1], seq[1:]), 1.0)
            if self.obs_tri is not None and n >= 3:
                np.add.at(self.obs_tri, (seq[:-2], seq[1:-1], seq[2:]), 1.0)

        # length-sorted fixed batches keep padding small; the order is deterministic
        by_len = np.argsort(self.lengths, kind="stable")
        self.batches: list[_Batch] = []
        for start in range(0, len(by_len), batch_size):
            idx = by_len[start:start + batch_size]
            T = int(self.lengths[idx].max())
            rows = np.full((len(idx), T), -1, dtype=np.int64)
            for b, s in enumerate(idx):
                rows[b, : self.lengths[s]] = np.arange(offsets[s], offsets[s] + self.lengths[s])
            mask = rows >= 0
            self.batches.append(_Batch(rows, mask, rows[mask]))

    @property
    def n_tokens(self) -> int:
        return int(self.y.size)


def loglik_and_gradient(model: CrfModel, data: IndexedData | Sequence[Example]) -> tuple[float, np.ndarray]:
    """Penalized conditional log-likelihood and its gradient w.r.t. ``model.weights``."""
    if not isinstance(data, IndexedData):
        data = IndexedData(model, data)
    sigma2 = model.gaussian_variance
    E_tok = np.asarray(data.X @ model.emission)
    node_tok = np.zeros_like(E_tok)
    exp_trans = np.zeros_like(model.transition)
    exp_tri = np.zeros_like(model.trigram) if model.trigram is not None else None
    log_z = 0.0
    for batch in data.batches:
        E = np.where(batch.mask[:, :, None], E_tok[np.maximum(batch.rows, 0)], 0.0)
        post = forward_backward(E, batch.mask, model.transition, model.trigram)
        log_z += float(post.log_z.sum())
        node_tok[batch.order] = post.node[batch.mask]
        exp_trans += post.trans_counts
        if exp_tri is not None:
            exp_tri += post.tri_counts

    gold = float(np.sum(data.obs_emission * model.emission) + np.sum(data.obs_trans * model.transition))
    if model.trigram is not None:
        gold += float(np.sum(data.obs_tri * model.trigram))
    w = model.weights
    value = gold - log_z - float(w @ w) / (2.0 * sigma2)

    grads = [
        (data.obs_emission - np.asarray(data.X.T @ node_tok)).ravel(),
        (data.obs_trans - exp_trans).ravel(),
    ]
    if exp_tri is not None:
        grads.append((data.obs_tri - exp_tri).ravel())
    grad = np.concatenate(grads) - w / sigma2
    return value, grad


@dataclass
class LbfgsResult:
    x: np.ndarray
    value: float
    iterations: int
    evaluations: int
    stop_reason: str
    trace: list[float]


def lbfgs_maximize(fun, x0: np.ndarray, max_iterations: int, tolerance: float, memory: int = 10) -> LbfgsResult:
    """Maximize ``fun(x) -> (value, grad)`` with L-BFGS and Armijo backtracking.

    Stops when the gradient's Euclidean norm drops below ``tolerance``, after
    ``max_iterations`` accepted steps, or when no ascent step can be found.
    """
    x = np.array(x0, dtype=float)
    f, g = fun(x)
    evals = 1
    if not np.isfinite(f) or not np.all(np.isfinite(g)):
        raise NonFiniteObjective("objective is not finite at the starting point")
    s_hist: list[np.ndarray] = []
    y_hist: list[np.ndarray] = []
    trace = [f]
    reason = "max_iterations"
    it = 0
    while it < max_iterations:
        if np.linalg.norm(g) <= tolerance:
            reason = "gradient_tolerance"
            break
        # two-loop recursion on the negated objective: direction d ascends f
        q = -g
        alphas = []
        for s, yv in zip(reversed(s_hist), reversed(y_hist)):
            rho = 1.0 / (yv @ s)
            a = rho * (s @ q)
            alphas.append(a)
            q = q - a * yv
        if s_hist:
            q *= (s_hist[-1] @ y_hist[-1]) / (y_hist[-1] @ y_hist[-1])
        else:
            q /= max(1.0, np.linalg.norm(g))
        for (s, yv), a in zip(zip(s_hist, y_hist), reversed(alphas)):
            rho = 1.0 / (yv @ s)
            b = rho * (yv @ q)
            q = q + s * (a - b)
        d = -q
        slope = g @ d
        if slope <= 0:
            s_hist.clear()
            y_hist.clear()
            d = g / max(1.0, np.linalg.norm(g))
            slope = g @ d

        step = 1.0
        accepted = False
        saw_finite = False
        for _ in range(60):
            x_new = x + step * d
            f_new, g_new = fun(x_new)
            evals += 1
            if np.isfinite(f_new) and np.all(np.isfinite(g_new)):
                saw_finite = True
                if f_new >= f + 1e-4 * step * slope:
                    accepted = True
                    break
            step *= 0.5
        if not accepted:
            if not saw_finite:
                raise NonFiniteObjective("line search produced only non-finite objectives")
            reason = "line_search"
            break
        s_vec, y_vec = x_new - x, g - g_new   # curvature pair for the minimization of -f
        if s_vec @ y_vec > 1e-12:
            s_hist.append(s_vec)
            y_hist.append(y_vec)
            if len(s_hist) > memory:
                s_hist.pop(0)
                y_hist.pop(0)
        x, f, g = x_new, f_new, g_new
        trace.append(f)
        it += 1
    return LbfgsResult(x, f, it, evals, reason, trace)


def train(
    examples: Sequence[Example],
    config: TrainConfig = TrainConfig(),
    templates: Sequence[FeatureTemplate] = (),
    feature_config: dict | None = None,
    labels: Sequence[str] | None = None,
) -> CrfModel:
    """Fit a CRF on ``(compiled features, tags)`` pairs.

    Alphabets are collected from the training data and frozen. Training
    starts from zero weights and is deterministic for a given example order.
    """
    if not examples:
        raise ValueError("training set is empty")
    labels = tuple(labels) if labels is not None else label_alphabet(t for _, t in examples)
    attributes = attribute_alphabet(c for c, _ in examples)
    model = CrfModel.zeros(
        labels, attributes, config.order, gaussian_variance=config.gaussian_variance,
        templates=tuple(templates), feature_config=feature_config,
    )
    data = IndexedData(model, examples, config.batch_size)

    def objective(w):
        model.set_weights(w)
        return loglik_and_gradient(model, data)

    result = lbfgs_maximize(objective, model.weights, config.max_iterations, config.tolerance, config.memory)
    model.set_weights(result.x)
    model.meta = {
        "train_config": asdict(config),
        "iterations": result.iterations,
        "evaluations": result.evaluations,
        "stop_reason": result.stop_reason,
        "objective": result.value,
        "n_sequences": len(examples),
        "n_tokens": data.n_tokens,
    }
    log.info(
        "trained order-%d CRF: %d attributes, %d labels, %d iterations (%s), objective %.4f",
        config.order, len(attributes), len(labels), result.iterations, result.stop_reason, result.value,
    )
    model.meta["objective_trace"] = result.trace
    return model
