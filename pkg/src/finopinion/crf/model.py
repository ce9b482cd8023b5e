"""CRF model container and its versioned text file format.

File layout, one record per line::

    {"format": "finopinion-crf", "version": 1, ...header...}
    E<TAB>"<attribute>"<TAB>w_0 w_1 ... w_{L-1}
    T<TAB>i<TAB>w_i0 ... w_i{L-1}
    U<TAB>k<TAB>i<TAB>w_ki0 ... w_ki{L-1}          (order 2 only)
    END<TAB><number of body lines><TAB><sha256 of body>

Weights are written with ``repr`` so they round-trip exactly.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .inference import log_partition, viterbi
from .templates import FeatureTemplate

FORMAT = "finopinion-crf"
VERSION = 1


class VersionMismatch(ValueError):
    pass


class CorruptFile(ValueError):
    pass


@dataclass
class CrfModel:
    labels: tuple[str, ...]
    attributes: dict[str, int]
    emission: np.ndarray                 # (n_attributes, L)
    transition: np.ndarray               # (L, L)
    trigram: np.ndarray | None = None    # (L, L, L) for order 2
    order: int = 1
    gaussian_variance: float = 10.0
    templates: tuple[FeatureTemplate, ...] = ()
    feature_config: dict | None = None
    meta: dict = field(default_factory=dict)

    @classmethod
    def zeros(cls, labels: Sequence[str], attributes: dict[str, int], order: int = 1, **kw) -> "CrfModel":
        if order not in (1, 2):
            raise ValueError("order must be 1 or 2")
        L = len(labels)
        return cls(
            tuple(labels), dict(attributes), np.zeros((len(attributes), L)), np.zeros((L, L)),
            np.zeros((L, L, L)) if order == 2 else None, order, **kw,
        )

    @property
    def n_labels(self) -> int:
        return len(self.labels)

    @property
    def n_weights(self) -> int:
        n = self.emission.size + self.transition.size
        return n + (self.trigram.size if self.trigram is not None else 0)

    @property
    def weights(self) -> np.ndarray:
        parts = [self.emission.ravel(), self.transition.ravel()]
        if self.trigram is not None:
            parts.append(self.trigram.ravel())
        return np.concatenate(parts)

    def set_weights(self, w: np.ndarray) -> None:
        w = np.asarray(w, dtype=float)
        if w.shape != (self.n_weights,):
            raise ValueError(f"expected {self.n_weights} weights, got {w.shape}")
        a = self.emission.size
        b = a + self.transition.size
        self.emission = w[:a].reshape(self.emission.shape).copy()
        self.transition = w[a:b].reshape(self.transition.shape).copy()
        if self.trigram is not None:
            self.trigram = w[b:].reshape(self.trigram.shape).copy()

    def attribute_ids(self, features: Sequence[str]) -> np.ndarray:
        """Known attribute indices; unseen features carry no weight and are skipped."""
        return np.fromiter(
            (self.attributes[f] for f in features if f in self.attributes), dtype=np.int64
        )

    def emissions(self, compiled: Sequence[Sequence[str]]) -> np.ndarray:
        E = np.zeros((len(compiled), self.n_labels))
        for t, feats in enumerate(compiled):
            ids = self.attribute_ids(feats)
            if ids.size:
                E[t] = self.emission[ids].sum(axis=0)
        return E

    def log_partition(self, compiled) -> float:
        return log_partition(self.emissions(compiled), self.transition, self.trigram)

    def decode(self, compiled) -> list[str]:
        path, _ = viterbi(self.emissions(compiled), self.transition, self.trigram)
        return [self.labels[y] for y in path]

    def decode_with_score(self, compiled) -> tuple[list[int], float]:
        return viterbi(self.emissions(compiled), self.transition, self.trigram)


def _fmt(values: np.ndarray) -> str:
    return " ".join(repr(float(v)) for v in values)


def save_model(model: CrfModel, path) -> None:
    header = {
        "format": FORMAT,
        "version": VERSION,
        "order": model.order,
        "gaussian_variance": model.gaussian_variance,
        "labels": list(model.labels),
        "templates": [t.to_json() for t in model.templates],
        "feature_config": model.feature_config,
        "n_attributes": len(model.attributes),
        "meta": model.meta,
    }
    body = []
    by_index = sorted(model.attributes.items(), key=lambda kv: kv[1])
    for name, idx in by_index:
        body.append(f"E\t{json.dumps(name, ensure_ascii=False)}\t{_fmt(model.emission[idx])}")
    for i in range(model.n_labels):
        body.append(f"T\t{i}\t{_fmt(model.transition[i])}")
    if model.trigram is not None:
        for k in range(model.n_labels):
            for i in range(model.n_labels):
                body.append(f"U\t{k}\t{i}\t{_fmt(model.trigram[k, i])}")
    digest = hashlib.sha256("\n".join(body).encode("utf-8")).hexdigest()
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(header, ensure_ascii=False, sort_keys=True) + "\n")
        for line in body:
            fh.write(line + "\n")
        fh.write(f"END\t{len(body)}\t{digest}\n")


def _floats(text: str, n: int) -> np.ndarray:
    vals = np.array([float(x) for x in text.split(" ")])
    if vals.shape != (n,):
        raise CorruptFile(f"expected {n} weights per row")
    return vals


def load_model(path) -> CrfModel:
    try:
        lines = Path(path).read_text(encoding="utf-8").split("\n")
    except UnicodeDecodeError as exc:
        raise CorruptFile(f"{path}: not UTF-8 text") from exc
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise CorruptFile(f"{path}: empty model file")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise CorruptFile(f"{path}: unreadable header") from exc
    if not isinstance(header, dict) or header.get("format") != FORMAT:
        raise CorruptFile(f"{path}: not a {FORMAT} file")
    if not isinstance(header.get("version"), int) or header["version"] > VERSION:
        raise VersionMismatch(f"{path}: format version {header.get('version')} > supported {VERSION}")

    footer = lines[-1].split("\t")
    body = lines[1:-1]
    if len(footer) != 3 or footer[0] != "END":
        raise CorruptFile(f"{path}: missing END footer (truncated?)")
    if int(footer[1]) != len(body):
        raise CorruptFile(f"{path}: expected {footer[1]} body lines, found {len(body)}")
    if hashlib.sha256("\n".join(body).encode("utf-8")).hexdigest() != footer[2]:
        raise CorruptFile(f"{path}: checksum mismatch")

    try:
        labels = tuple(header["labels"])
        order = int(header["order"])
        L = len(labels)
        attributes: dict[str, int] = {}
        emission = np.zeros((int(header["n_attributes"]), L))
        transition = np.zeros((L, L))
        trigram = np.zeros((L, L, L)) if order == 2 else None
        for line in body:
            kind, rest = line.split("\t", 1)
            if kind == "E":
                name, values = rest.rsplit("\t", 1)
                idx = len(attributes)
                attributes[json.loads(name)] = idx
                emission[idx] = _floats(values, L)
            elif kind == "T":
                i, values = rest.split("\t", 1)
                transition[int(i)] = _floats(values, L)
            elif kind == "U" and trigram is not None:
                k, i, values = rest.split("\t", 2)
                trigram[int(k), int(i)] = _floats(values, L)
            else:
                raise CorruptFile(f"{path}: unexpected line kind {kind!r}")
        if len(attributes) != emission.shape[0]:
            raise CorruptFile(f"{path}: attribute count mismatch")
    except (KeyError, ValueError, IndexError) as exc:
        if isinstance(exc, CorruptFile):
            raise
        raise CorruptFile(f"{path}: {exc}") from exc

    return CrfModel(
        labels, attributes, emission, transition, trigram, order,
        float(header["gaussian_variance"]),
        tuple(FeatureTemplate.from_json(t) for t in header.get("templates", [])),
        header.get("feature_config"), header.get("meta", {}),
    )
