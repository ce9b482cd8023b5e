"""Exact inference for linear-chain CRFs of order 1 and 2, in log space.

Scores are split into per-position emissions ``E[t, y]``, label-bigram
weights ``trans[y_prev, y]`` and, for order 2, label-trigram weights
``tri[y_prev2, y_prev, y]``. Batched routines take right-padded emission
arrays ``(B, T, L)`` and a boolean mask ``(B, T)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def logsumexp(a: np.ndarray, axis) -> np.ndarray:
    m = np.max(a, axis=axis, keepdims=True)
    m = np.where(np.isfinite(m), m, 0.0)
    with np.errstate(divide="ignore"):
        out = np.log(np.sum(np.exp(a - m), axis=axis, keepdims=True)) + m
    return np.squeeze(out, axis=axis)


def sequence_score(E: np.ndarray, trans: np.ndarray, tri: np.ndarray | None, path) -> float:
    score = 0.0
    for t, y in enumerate(path):
        score += E[t, y]
        if t >= 1:
            score += trans[path[t - 1], y]
        if t >= 2 and tri is not None:
            score += tri[path[t - 2], path[t - 1], y]
    return float(score)


@dataclass
class Posteriors:
    log_z: np.ndarray           # (B,)
    node: np.ndarray            # (B, T, L), zero on padding
    trans_counts: np.ndarray    # (L, L) expected bigram counts summed over the batch
    tri_counts: np.ndarray | None


def _forward_backward_1(E, mask, trans):
    B, T, L = E.shape
    alpha = np.empty_like(E)
    alpha[:, 0] = E[:, 0]
    for t in range(1, T):
        a = logsumexp(alpha[:, t - 1, :, None] + trans[None], axis=1) + E[:, t]
        alpha[:, t] = np.where(mask[:, t, None], a, alpha[:, t - 1])
    log_z = logsumexp(alpha[:, -1], axis=1)

    beta = np.zeros_like(E)
    for t in range(T - 2, -1, -1):
        b = logsumexp(trans[None] + (E[:, t + 1] + beta[:, t + 1])[:, None, :], axis=2)
        beta[:, t] = np.where(mask[:, t + 1, None], b, 0.0)

    node = np.exp(alpha + beta - log_z[:, None, None]) * mask[:, :, None]
    trans_counts = np.zeros_like(trans)
    for t in range(1, T):
        edge = (
            alpha[:, t - 1, :, None] + trans[None] + (E[:, t] + beta[:, t])[:, None, :]
            - log_z[:, None, None]
        )
        trans_counts += np.einsum("bij,b->ij", np.exp(edge), mask[:, t].astype(float))
    return Posteriors(log_z, node, trans_counts, None)


def _forward_backward_2(E, mask, trans, tri):
    B, T, L = E.shape
    neg_inf = -np.inf
    # pair state (y_{t-1}, y_t); at t = 0 the dummy predecessor is label 0
    alpha = np.full((B, T, L, L), neg_inf)
    alpha[:, 0, 0, :] = E[:, 0]
    for t in range(1, T):
        prev = alpha[:, t - 1]                          # (B, k, i)
        inner = prev[:, :, :, None] + (tri[None] if t >= 2 else 0.0)   # (B, k, i, j)
        a = logsumexp(inner, axis=1) + trans[None] + E[:, t, None, :]
        alpha[:, t] = np.where(mask[:, t, None, None], a, alpha[:, t - 1])
    log_z = logsumexp(alpha[:, -1].reshape(B, -1), axis=1)

    beta = np.zeros((B, T, L, L))
    for t in range(T - 2, -1, -1):
        nxt = (E[:, t + 1, None, :] + trans[None] + beta[:, t + 1])   # (B, j, k)
        inner = nxt[:, None, :, :] + (tri[None] if t + 1 >= 2 else 0.0)  # (B, i, j, k)
        b = logsumexp(inner, axis=3)
        beta[:, t] = np.where(mask[:, t + 1, None, None], b, 0.0)

    with np.errstate(invalid="ignore"):
        pair = np.exp(alpha + beta - log_z[:, None, None, None])
    pair = np.nan_to_num(pair) * mask[:, :, None, None]
    node = pair.sum(axis=2)
    trans_counts = pair[:, 1:].sum(axis=(0, 1))
    tri_counts = np.zeros_like(tri)
    for t in range(2, T):
        trip = (
            alpha[:, t - 1, :, :, None] + tri[None] + trans[None, None]
            + (E[:, t, None, :] + beta[:, t])[:, None, :, :] - log_z[:, None, None, None]
        )
        tri_counts += np.einsum("bkij,b->kij", np.exp(trip), mask[:, t].astype(float))
    return Posteriors(log_z, node, trans_counts, tri_counts)


def forward_backward(E: np.ndarray, mask: np.ndarray, trans: np.ndarray, tri: np.ndarray | None = None) -> Posteriors:
    """Log-partition values and posterior expectations for a padded batch."""
    if E.ndim != 3:
        raise ValueError("expected emissions of shape (B, T, L)")
    mask = mask.astype(bool)
    if tri is None:
        return _forward_backward_1(E, mask, trans)
    return _forward_backward_2(E, mask, trans, tri)


def log_partition(E: np.ndarray, trans: np.ndarray, tri: np.ndarray | None = None) -> float:
    """log Z for one sequence with emissions ``(T, L)``, by the forward recursion only."""
    T, L = E.shape
    if tri is None:
        alpha = E[0].copy()
        for t in range(1, T):
            alpha = logsumexp(alpha[:, None] + trans, axis=0) + E[t]
        return float(logsumexp(alpha, axis=0))
    alpha = np.full((L, L), -np.inf)
    alpha[0] = E[0]
    for t in range(1, T):
        inner = alpha[:, :, None] + (tri if t >= 2 else 0.0)
        alpha = logsumexp(inner, axis=0) + trans + E[t][None, :]
    return float(logsumexp(alpha.ravel(), axis=0))


def viterbi(E: np.ndarray, trans: np.ndarray, tri: np.ndarray | None = None) -> tuple[list[int], float]:
    """Best label path and its score.

    Among equally scored paths the lexicographically smallest (lowest label
    index first, left to right) is returned: suffix maxima are computed right
    to left, then labels are chosen greedily from the left with ``argmax``,
    which picks the first maximal index.
    """
    T, L = E.shape
    if tri is None:
        suffix = np.zeros((T, L))
        for t in range(T - 2, -1, -1):
            suffix[t] = np.max(trans + (E[t + 1] + suffix[t + 1])[None, :], axis=1)
        path = [int(np.argmax(E[0] + suffix[0]))]
        best = float(np.max(E[0] + suffix[0]))
        for t in range(1, T):
            path.append(int(np.argmax(trans[path[-1]] + E[t] + suffix[t])))
        return path, best

    # suffix2[t, i, j]: best score of positions > t given y_{t-1} = i, y_t = j (t >= 1)
    suffix2 = np.zeros((T, L, L))
    for t in range(T - 2, 0, -1):
        cand = tri + trans[None, :, :] + (E[t + 1] + 0.0)[None, None, :] + suffix2[t + 1][None, :, :]
        suffix2[t] = np.max(cand, axis=2)
    if T >= 2:
        suffix1 = np.max(trans + E[1][None, :] + suffix2[1], axis=1)
    else:
        suffix1 = np.zeros(L)
    first = E[0] + suffix1
    path = [int(np.argmax(first))]
    best = float(np.max(first))
    if T >= 2:
        path.append(int(np.argmax(trans[path[0]] + E[1] + suffix2[1][path[0]])))
    for t in range(2, T):
        a, b = path[-2], path[-1]
        path.append(int(np.argmax(tri[a, b] + trans[b] + E[t] + suffix2[t][b])))
    return path, best
