"""Slow, independent reference computations used to check the package.

Nothing here imports the code under test; each routine is written from the
defining formula in the most direct way available.
"""

from __future__ import annotations

import itertools
import math
import statistics

import numpy as np


# --- linear-chain CRF by exhaustive enumeration ---------------------------------

def path_score(E, trans, tri, path) -> float:
    total = 0.0
    for t, y in enumerate(path):
        total += E[t][y]
        if t > 0:
            total += trans[path[t - 1]][y]
        if t > 1 and tri is not None:
            total += tri[path[t - 2]][path[t - 1]][y]
    return total


def all_paths(T: int, L: int):
    return itertools.product(range(L), repeat=T)


def brute_log_partition(E, trans, tri=None) -> float:
    scores = [path_score(E, trans, tri, p) for p in all_paths(len(E), len(E[0]))]
    m = max(scores)
    return m + math.log(math.fsum(math.exp(s - m) for s in scores))


def brute_best(E, trans, tri=None) -> tuple[tuple[int, ...], float]:
    """Highest-scoring path; the lexicographically smallest among ties."""
    best_path, best = None, -math.inf
    for p in all_paths(len(E), len(E[0])):
        s = path_score(E, trans, tri, p)
        if s > best:
            best_path, best = p, s
    return best_path, best


def brute_marginals(E, trans, tri=None):
    """Node marginals (T, L) and expected bigram counts (L, L)."""
    T, L = len(E), len(E[0])
    log_z = brute_log_partition(E, trans, tri)
    node = np.zeros((T, L))
    pair = np.zeros((L, L))
    for p in all_paths(T, L):
        w = math.exp(path_score(E, trans, tri, p) - log_z)
        for t, y in enumerate(p):
            node[t, y] += w
            if t > 0:
                pair[p[t - 1], y] += w
    return node, pair


def brute_penalized_loglik(sequences, labels_of, emission, trans, tri, sigma2) -> float:
    """sequences: list of (attribute-id lists per position, gold label ids)."""
    total = 0.0
    for ids, gold in sequences:
        E = [[sum(emission[a][y] for a in pos) for y in range(len(labels_of))] for pos in ids]
        total += path_score(E, trans, tri, gold) - brute_log_partition(E, trans, tri)
    sq = float(np.sum(emission ** 2) + np.sum(trans ** 2) + (0.0 if tri is None else np.sum(tri ** 2)))
    return total - sq / (2.0 * sigma2)


def central_difference(f, x: np.ndarray, h: float = 1e-5) -> np.ndarray:
    g = np.zeros_like(x)
    for i in range(x.size):
        up, down = x.copy(), x.copy()
        up[i] += h
        down[i] -= h
        g[i] = (f(up) - f(down)) / (2.0 * h)
    return g


# --- multinomial logit ------------------------------------------------------------

def mlogit_probs(Z: np.ndarray, b_neg: np.ndarray, b_pos: np.ndarray) -> np.ndarray:
    """Columns are P(Y=-1), P(Y=0), P(Y=+1) written straight from the softmax."""
    out = np.zeros((len(Z), 3))
    for i, z in enumerate(Z):
        a, c = math.exp(float(z @ b_neg)), math.exp(float(z @ b_pos))
        den = 1.0 + a + c
        out[i] = (a / den, 1.0 / den, c / den)
    return out


def gradient_ascent_mlogit(Z: np.ndarray, y: np.ndarray, step: float = 0.5, max_iter: int = 400_000,
                           tol: float = 1e-10) -> tuple[np.ndarray, np.ndarray, int]:
    """Fixed-step ascent on the mean log-likelihood; returns (b_neg, b_pos, iterations)."""
    n, K = Z.shape
    Y = np.stack([(y == -1), (y == 1)], axis=1).astype(float)
    B = np.zeros((K, 2))
    for it in range(max_iter):
        eta = Z @ B
        m = np.maximum(eta.max(axis=1, keepdims=True), 0.0)
        ex = np.exp(eta - m)
        P = ex / (np.exp(-m) + ex.sum(axis=1, keepdims=True))
        G = Z.T @ (Y - P) / n
        if np.max(np.abs(G)) < tol:
            return B[:, 0].copy(), B[:, 1].copy(), it
        B += step * G
    return B[:, 0].copy(), B[:, 1].copy(), max_iter


def sandwich_direct(Z: np.ndarray, y: np.ndarray, b_neg: np.ndarray, b_pos: np.ndarray) -> np.ndarray:
    """Observation-by-observation A and B, then A^-1 B A^-1, in [beta_-1; beta_+1] order."""
    n, K = Z.shape
    P = mlogit_probs(Z, b_neg, b_pos)
    A = np.zeros((2 * K, 2 * K))
    B = np.zeros((2 * K, 2 * K))
    for i in range(n):
        z = Z[i][:, None]
        p = np.array([P[i, 0], P[i, 2]])
        W = np.diag(p) - np.outer(p, p)
        A += np.kron(W, z @ z.T)
        r = np.array([float(y[i] == -1) - p[0], float(y[i] == 1) - p[1]])
        s = np.kron(r[:, None], z).ravel()
        B += np.outer(s, s)
    A_inv = np.linalg.inv(A)
    return A_inv @ B @ A_inv


def normal_two_sided_p(z: float) -> float:
    return math.erfc(abs(z) / math.sqrt(2.0))


# --- spans and scores ---------------------------------------------------------------

def naive_spans(tags) -> list[tuple[str, int, int]]:
    """Spans by a left-to-right scan: B-X or an I-X not continuing X opens a span."""
    spans = []
    i = 0
    while i < len(tags):
        tag = tags[i]
        if tag == "O":
            j = i
            while j < len(tags) and tags[j] == "O":
                j += 1
            spans.append(("Other", i, j))
            i = j
            continue
        cls = tag[2:]
        j = i + 1
        while j < len(tags) and tags[j] == "I-" + cls:
            j += 1
        spans.append((cls, i, j))
        i = j
    return spans


def naive_phrase_counts(gold_seqs, pred_seqs) -> dict[str, tuple[int, int, int]]:
    """class -> (gold, predicted, correct) by comparing every predicted span with every gold span."""
    out: dict[str, list[int]] = {}
    for g, p in zip(gold_seqs, pred_seqs):
        gs, ps = naive_spans(g), naive_spans(p)
        for cls, _, _ in gs:
            out.setdefault(cls, [0, 0, 0])[0] += 1
        for cand in ps:
            row = out.setdefault(cand[0], [0, 0, 0])
            row[1] += 1
            if any(cand == ref for ref in gs):
                row[2] += 1
    return {k: tuple(v) for k, v in out.items()}


# --- earnings ---------------------------------------------------------------------

def sue_by_hand(earnings) -> list[float]:
    ue = [b - a for a, b in zip(earnings, earnings[1:])]
    mu, sd = statistics.mean(ue), statistics.stdev(ue)
    return [(u - mu) / sd for u in ue]


def mwef_idf_direct(f, n, N, q=20.0, l=40.0) -> float:
    if f == 0:
        return 0.0
    return f / q * math.log(max(1.0, l * f * N / n))
