"""Multiword-expression harvesting, weighting and co-occurrence counts over tagged records."""

from __future__ import annotations

import csv
import math
from collections import defaultdict
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .lingdata import AGENT, MissingNerLayer, SentenceRecord, SrlFrame, repair_iob

PLACEHOLDERS = {
    "PERSON": "PERSON", "PER": "PERSON",
    "ORG": "ORG", "ORGANIZATION": "ORG",
    "LOC": "LOC", "LOCATION": "LOC", "GPE": "LOC",
}


class DomainError(ValueError):
    pass


# --- entity masking -----------------------------------------------------------

def _entity_type(tag: str) -> tuple[str | None, bool]:
    """Placeholder for an NER tag and whether the tag forces a new span (``B-``)."""
    if tag in ("O", ""):
        return None, False
    begin = tag.startswith("B-")
    if tag[:2] in ("B-", "I-"):
        tag = tag[2:]
    return PLACEHOLDERS.get(tag.upper()), begin


def entity_spans(ner: Sequence[str]) -> list[tuple[int, int, str]]:
    spans: list[tuple[int, int, str]] = []
    for i, tag in enumerate(ner):
        kind, begin = _entity_type(tag)
        if kind is None:
            continue
        if spans and spans[-1][1] == i and spans[-1][2] == kind and not begin:
            s, _, k = spans[-1]
            spans[-1] = (s, i + 1, k)
        else:
            spans.append((i, i + 1, kind))
    return spans


def _render_pruned(node, first: dict[int, str], dropped: set[int]) -> str | None:
    if node.is_preterminal:
        if node.start in dropped:
            return None
        if node.start in first:
            return f"(NNP {first[node.start]})"
        return node.to_string()
    kids = [k for k in (_render_pruned(c, first, dropped) for c in node.children) if k]
    if not kids:
        return None
    return f"({node.label} {' '.join(kids)})"


def mask_entities(record: SentenceRecord) -> SentenceRecord:
    """Collapse each PERSON/ORG/LOC span to one placeholder token, re-aligning every layer."""
    if record.ner is None:
        raise MissingNerLayer("entity masking needs the ner layer")
    spans = entity_spans(record.ner)
    if not spans:
        return record
    n = len(record)
    new_index = list(range(n))
    keep = [True] * n
    first: dict[int, str] = {}
    for s, e, kind in spans:
        first[s] = kind
        for i in range(s + 1, e):
            keep[i] = False
    j = -1
    for i in range(n):
        if keep[i]:
            j += 1
        new_index[i] = j
    kept = [i for i in range(n) if keep[i]]

    def layer(values, placeholder=None):
        if values is None:
            return None
        out = []
        for i in kept:
            out.append(placeholder(i) if placeholder and i in first else values[i])
        return tuple(out)

    tokens = layer(record.tokens, lambda i: first[i])
    lemmas = layer(record.lemmas, lambda i: first[i])
    pos = layer(record.pos, lambda i: "NNP")
    ner = layer(record.ner, lambda i: first[i])
    chunks = layer(record.chunks)
    labels = layer(record.labels)
    if chunks is not None:
        chunks = tuple(repair_iob(chunks))
    if labels is not None:
        labels = tuple(repair_iob(labels))

    deps = None
    if record.deps is not None:
        seen, deps_out = set(), []
        for h, d, rel in record.deps:
            nh = -1 if h < 0 else new_index[h]
            nd = new_index[d]
            if nh == nd or (nh, nd, rel) in seen:
                continue
            seen.add((nh, nd, rel))
            deps_out.append((nh, nd, rel))
        deps = tuple(deps_out)

    srl = None
    if record.srl is not None:
        srl = tuple(
            SrlFrame(
                new_index[f.predicate], f.voice,
                tuple((lab, new_index[s], new_index[e - 1] + 1) for lab, s, e in f.args),
            )
            for f in record.srl
        )

    parse = None
    if record.parse is not None:
        dropped = {i for i in range(n) if not keep[i]}
        parse = _render_pruned(record.tree.root, first, dropped)

    return replace(
        record, tokens=tokens, lemmas=lemmas, pos=pos, chunks=chunks, ner=ner, parse=parse,
        deps=deps, srl=srl, verb_cluster=layer(record.verb_cluster), frame=layer(record.frame),
        labels=labels,
    )


# --- harvesting -----------------------------------------------------------------

def canonical_tokens(record: SentenceRecord, start: int, end: int) -> tuple[str, ...]:
    out = []
    for i in range(start, end):
        tok = record.tokens[i]
        if tok in PLACEHOLDERS.values():
            out.append(tok)
            continue
        base = record.lemmas[i] if record.lemmas is not None else tok
        out.append(base.lower())
    return tuple(out)


def canonical(text: str) -> str:
    """Canonical form of a user-supplied expression: whitespace-normalised, lowercase except placeholders."""
    return " ".join(t if t in PLACEHOLDERS.values() else t.lower() for t in text.split())


@dataclass
class MweEntry:
    text: str
    label: str
    total_freq: int = 0
    per_doc_freq: dict[str, int] = field(default_factory=dict)

    @property
    def doc_freq(self) -> int:
        return len(self.per_doc_freq)


def _doc(record: SentenceRecord) -> str:
    return record.doc_id if record.doc_id is not None else ""


def harvest(records: Iterable[SentenceRecord], classes: str | Iterable[str] | None = None) -> list[MweEntry]:
    """Aggregate decoded spans by (class, canonical text), most frequent first, ties by text."""
    if isinstance(classes, str):
        classes = {classes}
    wanted = None if classes is None else set(classes)
    table: dict[tuple[str, str], MweEntry] = {}
    for record in records:
        for span in record.spans():
            if wanted is not None and span.label not in wanted:
                continue
            text = " ".join(canonical_tokens(record, span.start, span.end))
            entry = table.setdefault((span.label, text), MweEntry(text, span.label))
            entry.total_freq += 1
            doc = _doc(record)
            entry.per_doc_freq[doc] = entry.per_doc_freq.get(doc, 0) + 1
    return sorted(table.values(), key=lambda e: (-e.total_freq, e.text, e.label))


def frequent_phrases(entries: Sequence[MweEntry], top: int | None = None) -> list[tuple[str, int]]:
    """(expression, freq) rows, merged over classes, most frequent first."""
    totals: dict[str, int] = defaultdict(int)
    for e in entries:
        totals[e.text] += e.total_freq
    rows = sorted(totals.items(), key=lambda kv: (-kv[1], kv[0]))
    return rows if top is None else rows[:top]


def write_mwe_table(path, entries: Sequence[MweEntry]) -> None:
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(["class", "expression", "total_freq", "doc_freq"])
        for e in entries:
            w.writerow([e.label, e.text, e.total_freq, e.doc_freq])
    with open(sidecar_path(path), "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(["class", "expression", "doc_id", "freq"])
        for e in entries:
            for doc in sorted(e.per_doc_freq):
                w.writerow([e.label, e.text, doc, e.per_doc_freq[doc]])


def sidecar_path(path) -> Path:
    path = Path(path)
    return path.with_name(path.stem + ".docs" + path.suffix)


def read_mwe_table(path) -> list[MweEntry]:
    entries: dict[tuple[str, str], MweEntry] = {}
    with open(path, encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh, delimiter="\t"):
            entries[(row["class"], row["expression"])] = MweEntry(row["expression"], row["class"], int(row["total_freq"]))
    with open(sidecar_path(path), encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh, delimiter="\t"):
            entries[(row["class"], row["expression"])].per_doc_freq[row["doc_id"]] = int(row["freq"])
    return list(entries.values())


# --- weighting ------------------------------------------------------------------

@dataclass(frozen=True)
class MwefIdfConfig:
    tf_scale: float = 20.0     # q
    idf_boost: float = 40.0    # l

    def __post_init__(self):
        if self.tf_scale <= 0 or self.idf_boost <= 0:
            raise ValueError("tf_scale and idf_boost must be positive")


def mwef_idf(f: float, n: int, N: int, config: MwefIdfConfig = MwefIdfConfig()) -> float:
    """Weight of an expression occurring ``f`` times in a document, present in ``n`` of ``N`` documents.

    ``(f / q) * ln(max(1, l * f * N / n))``. The frequency boost inside the log
    keeps expressions that occur in every document above zero weight.
    """
    if f < 0:
        raise DomainError("frequency must be non-negative")
    if f == 0:
        return 0.0
    if n < 1 or n > N:
        raise DomainError(f"document frequency {n} outside [1, {N}]")
    q, l = config.tf_scale, config.idf_boost
    return (f / q) * math.log(max(1.0, l * f * N / n))


def weight_matrix(
    entries: Sequence[MweEntry],
    documents: Sequence[str],
    selected: Sequence[str],
    config: MwefIdfConfig = MwefIdfConfig(),
) -> np.ndarray:
    """Documents x selected expressions. Counts of one text under several classes are pooled."""
    per_doc: dict[str, dict[str, int]] = defaultdict(lambda: defaultdict(int))
    for e in entries:
        for doc, f in e.per_doc_freq.items():
            per_doc[e.text][doc] += f
    docs = list(documents)
    N = len(docs)
    W = np.zeros((N, len(selected)))
    for j, text in enumerate(selected):
        freqs = per_doc.get(canonical(text), {})
        n = sum(1 for d in docs if freqs.get(d, 0) > 0)
        for i, d in enumerate(docs):
            W[i, j] = mwef_idf(freqs.get(d, 0), n, N, config)
    return W


def write_weight_matrix(path, documents: Sequence[str], names: Sequence[str], W: np.ndarray) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(["doc_id", *names])
        for doc, row in zip(documents, W):
            w.writerow([doc, *(repr(float(v)) for v in row)])


def read_weight_matrix(path) -> tuple[list[str], list[str], np.ndarray]:
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh, delimiter="\t"))
    names = rows[0][1:]
    docs = [r[0] for r in rows[1:]]
    W = np.array([[float(v) for v in r[1:]] for r in rows[1:]]).reshape(len(docs), len(names))
    return docs, names, W


# --- co-occurrence --------------------------------------------------------------

def _contains(seq: Sequence[str], sub: Sequence[str]) -> bool:
    k = len(sub)
    return k > 0 and any(tuple(seq[i:i + k]) == tuple(sub) for i in range(len(seq) - k + 1))


def cooccurrence(
    records: Iterable[SentenceRecord], agent_terms: Iterable[str], mwe: str,
) -> tuple[int, int]:
    """(sentences, distinct documents) pairing a matching agent span with a decoded span of ``mwe``.

    An agent span matches a term when the term's tokens occur contiguously in
    the span, compared case-insensitively on surface or lemma forms.
    """
    terms = [tuple(t.lower().split()) for t in agent_terms]
    target = canonical(mwe)
    total, docs = 0, set()
    for record in records:
        spans = record.spans()
        agent_hit = False
        mwe_hit = False
        for span in spans:
            if span.label == AGENT and not agent_hit:
                surface = [t.lower() for t in record.tokens[span.start:span.end]]
                lemma = list(canonical_tokens(record, span.start, span.end))
                agent_hit = any(_contains(surface, t) or _contains(lemma, t) for t in terms)
            elif span.label != AGENT and not mwe_hit:
                mwe_hit = " ".join(canonical_tokens(record, span.start, span.end)) == target
        if agent_hit and mwe_hit:
            total += 1
            docs.add(_doc(record))
    return total, len(docs)


def cooccurrence_table(
    records: Sequence[SentenceRecord], combinations: Sequence[tuple[Sequence[str], str]],
) -> list[tuple[str, int, int]]:
    """Rows of (combination, total freq, document freq)."""
    rows = []
    for agents, mwe in combinations:
        total, docs = cooccurrence(records, agents, mwe)
        label = "/".join(agents) + " ... " + mwe
        rows.append((label, total, docs))
    return rows


def load_allow_list(path) -> list[str]:
    out = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.split("\t")[0].strip()
        if line and not line.startswith("#"):
            out.append(canonical(line))
    return out

