"""Token accuracy, exact-match phrase scores and dataset transforms for tagging experiments.

All scores are on a percent scale.
"""

from __future__ import annotations

import json
import math
import random
from collections import Counter
from dataclasses import asdict, dataclass, replace
from typing import Sequence

from .lingdata import (
    AGENT, DIRECT_SUBJECTIVE, EXPRESSIVE_SUBJECTIVITY, OBJECTIVE_SPEECH_EVENT, OPINION_CLASSES, TARGET,
    LabelSpan, LengthMismatch, SentenceRecord, iob_spans,
)

OTHER = "Other"


def _tags(item) -> Sequence[str]:
    if isinstance(item, SentenceRecord):
        if item.labels is None:
            raise ValueError("record has no labels")
        return item.labels
    return item


def f_measure(p: float, r: float, alpha: float = 1.0) -> float:
    """Weighted harmonic combination of precision and recall; 0 when both are 0."""
    if p < 0 or r < 0:
        raise ValueError("precision and recall must be non-negative")
    denom = alpha * p + r
    return 0.0 if denom == 0 else (1 + alpha) * p * r / denom


def token_accuracy(gold, predicted) -> float:
    """Percent of positions with identical tags, over one sequence or a list of sequences."""
    gold_seqs, pred_seqs = _as_corpus(gold), _as_corpus(predicted)
    same = total = 0
    for g, p in zip(gold_seqs, pred_seqs, strict=True):
        if len(g) != len(p):
            raise LengthMismatch(f"{len(g)} gold tags vs {len(p)} predicted")
        same += sum(a == b for a, b in zip(g, p))
        total += len(g)
    if total == 0:
        raise ValueError("no tokens to score")
    return 100.0 * same / total


def _as_corpus(items) -> list[Sequence[str]]:
    if isinstance(items, SentenceRecord):
        return [_tags(items)]
    items = list(items)
    if items and isinstance(items[0], str):
        return [items]
    return [_tags(x) for x in items]


def other_spans(tags: Sequence[str]) -> list[LabelSpan]:
    """Maximal runs of ``O`` as spans of the pseudo-class ``Other``."""
    out, start = [], None
    for i, tag in enumerate(list(tags) + ["<end>"]):
        if tag == "O" and start is None:
            start = i
        elif tag != "O" and start is not None:
            out.append(LabelSpan(start, i, OTHER))
            start = None
    return out


@dataclass(frozen=True)
class ClassScore:
    label: str
    p: float
    r: float
    F: float
    gold: int
    predicted: int
    correct: int

    @classmethod
    def from_counts(cls, label: str, gold: int, predicted: int, correct: int, alpha: float = 1.0) -> "ClassScore":
        p = 100.0 * correct / predicted if predicted else 0.0
        r = 100.0 * correct / gold if gold else 0.0
        return cls(label, p, r, f_measure(p, r, alpha), gold, predicted, correct)


@dataclass(frozen=True)
class EvalReport:
    classes: tuple[ClassScore, ...]
    micro: ClassScore
    macro: ClassScore
    token_accuracy: float
    n_sentences: int
    n_tokens: int

    def row(self, label: str) -> ClassScore:
        for c in self.classes:
            if c.label == label:
                return c
        raise KeyError(label)

    def to_tsv(self) -> str:
        lines = ["class\tp\tr\tF"]
        for c in (*self.classes, self.micro, self.macro):
            lines.append(f"{c.label}\t{c.p:.2f}\t{c.r:.2f}\t{c.F:.2f}")
        lines.append(f"# token_accuracy\t{self.token_accuracy:.2f}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "classes": [asdict(c) for c in self.classes],
            "average_micro": asdict(self.micro),
            "average_macro": asdict(self.macro),
            "token_accuracy": self.token_accuracy,
            "n_sentences": self.n_sentences,
            "n_tokens": self.n_tokens,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def phrase_prf(gold, predicted, alpha: float = 1.0, include_other: bool = True) -> EvalReport:
    """Exact-match phrase scores per class.

    A predicted span is correct only if its class, start and end all match a
    gold span. The micro and macro averages cover the opinion classes that
    occur in either side; the ``Other`` row (runs of ``O``) is reported but
    kept out of the averages.
    """
    gold_seqs, pred_seqs = _as_corpus(gold), _as_corpus(predicted)
    if len(gold_seqs) != len(pred_seqs):
        raise LengthMismatch(f"{len(gold_seqs)} gold sentences vs {len(pred_seqs)} predicted")
    n_gold, n_pred, n_ok = Counter(), Counter(), Counter()
    for g, p in zip(gold_seqs, pred_seqs):
        if len(g) != len(p):
            raise LengthMismatch(f"{len(g)} gold tags vs {len(p)} predicted")
        gs, ps = iob_spans(g), iob_spans(p)
        if include_other:
            gs += other_spans(g)
            ps += other_spans(p)
        gset = set(gs)
        for s in gs:
            n_gold[s.label] += 1
        for s in ps:
            n_pred[s.label] += 1
            if s in gset:
                n_ok[s.label] += 1

    seen = set(n_gold) | set(n_pred)
    opinion = [c for c in OPINION_CLASSES if c in seen] + sorted(seen - set(OPINION_CLASSES) - {OTHER})
    rows = [ClassScore.from_counts(c, n_gold[c], n_pred[c], n_ok[c], alpha) for c in opinion]
    micro = ClassScore.from_counts(
        "Average", sum(n_gold[c] for c in opinion), sum(n_pred[c] for c in opinion),
        sum(n_ok[c] for c in opinion), alpha,
    )
    if rows:
        mp = sum(c.p for c in rows) / len(rows)
        mr = sum(c.r for c in rows) / len(rows)
        macro = ClassScore("Average (macro)", mp, mr, f_measure(mp, mr, alpha), micro.gold, micro.predicted, micro.correct)
    else:
        macro = replace(micro, label="Average (macro)")
    if include_other:
        rows.append(ClassScore.from_counts(OTHER, n_gold[OTHER], n_pred[OTHER], n_ok[OTHER], alpha))
    n_tokens = sum(len(g) for g in gold_seqs)
    acc = token_accuracy(gold_seqs, pred_seqs) if n_tokens else 0.0
    return EvalReport(tuple(rows), micro, macro, acc, len(gold_seqs), n_tokens)


def is_explicit(record: SentenceRecord) -> bool:
    classes = {s.label for s in record.spans()}
    return (
        AGENT in classes and DIRECT_SUBJECTIVE in classes
        and bool(classes & {EXPRESSIVE_SUBJECTIVITY, OBJECTIVE_SPEECH_EVENT})
    )


def select_explicit(records: Sequence[SentenceRecord]) -> list[SentenceRecord]:
    return [r for r in records if r.labels is not None and is_explicit(r)]


def drop_target_tags(tags: Sequence[str]) -> list[str]:
    return ["O" if t.endswith("-" + TARGET) else t for t in tags]


def drop_target(records: Sequence[SentenceRecord]) -> list[SentenceRecord]:
    return [r if r.labels is None else replace(r, labels=tuple(drop_target_tags(r.labels))) for r in records]


def split_heldout(records: Sequence, train_fraction: float = 0.7, seed: int = 0) -> tuple[list, list]:
    """Seeded shuffle, then the first ``floor(n * train_fraction)`` items train."""
    if not 0 < train_fraction < 1:
        raise ValueError("train_fraction must lie strictly between 0 and 1")
    order = list(range(len(records)))
    random.Random(seed).shuffle(order)
    # rounding first keeps 100 * 0.29 from flooring to 28
    k = math.floor(round(len(records) * train_fraction, 9))
    return [records[i] for i in order[:k]], [records[i] for i in order[k:]]
