"""Sentence records carrying annotation layers, and IOB span utilities.

A record file holds one JSON object per line. Only ``tokens`` is required;
every other layer is optional and must have one entry per token.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Any, Iterable, Iterator, Sequence

from .tree import ConstituencyTree, MalformedTree, parse_tree

AGENT = "agent"
DIRECT_SUBJECTIVE = "direct-subjective"
EXPRESSIVE_SUBJECTIVITY = "expressive-subjectivity"
OBJECTIVE_SPEECH_EVENT = "objective-speech-event"
TARGET = "target"

OPINION_CLASSES = (AGENT, DIRECT_SUBJECTIVE, EXPRESSIVE_SUBJECTIVITY, OBJECTIVE_SPEECH_EVENT, TARGET)

# per-token string layers, in serialization order
TOKEN_LAYERS = ("lemmas", "pos", "chunks", "ner", "verb_cluster", "frame", "labels")
RECORD_KEYS = ("id", "doc_id", "tokens", *TOKEN_LAYERS[:4], "parse", "deps", "srl", *TOKEN_LAYERS[4:])


class LengthMismatch(ValueError):
    pass


class MalformedLabel(ValueError):
    pass


class OverlappingSpans(ValueError):
    pass


class MalformedRecord(ValueError):
    pass


class MissingLayer(ValueError):
    """An operation needs an annotation layer the record does not carry."""


class MissingParseLayer(MissingLayer):
    pass


class MissingSrlLayer(MissingLayer):
    pass


class MissingDepsLayer(MissingLayer):
    pass


class MissingNerLayer(MissingLayer):
    pass


__all__ = [
    "AGENT", "DIRECT_SUBJECTIVE", "EXPRESSIVE_SUBJECTIVITY", "OBJECTIVE_SPEECH_EVENT", "TARGET",
    "OPINION_CLASSES", "LabelSpan", "SrlFrame", "SentenceRecord", "LengthMismatch", "MalformedLabel",
    "MalformedTree", "OverlappingSpans", "MalformedRecord", "MissingLayer", "MissingParseLayer",
    "MissingSrlLayer", "MissingDepsLayer", "MissingNerLayer", "iob_spans", "spans_to_iob", "repair_iob",
    "parse_record", "serialize_record", "read_records", "write_records",
]


@dataclass(frozen=True, order=True)
class LabelSpan:
    start: int
    end: int
    label: str

    def __post_init__(self):
        if not 0 <= self.start < self.end:
            raise ValueError(f"bad span [{self.start}, {self.end})")

    def __len__(self) -> int:
        return self.end - self.start


@dataclass(frozen=True)
class SrlFrame:
    predicate: int
    voice: str = "active"
    args: tuple[tuple[str, int, int], ...] = ()

    def to_json(self) -> dict:
        return {
            "predicate": self.predicate,
            "voice": self.voice,
            "args": [{"label": lab, "start": s, "end": e} for lab, s, e in self.args],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SrlFrame":
        try:
            args = tuple((a["label"], int(a["start"]), int(a["end"])) for a in obj.get("args", ()))
            return cls(int(obj["predicate"]), str(obj.get("voice", "active")), args)
        except (KeyError, TypeError) as exc:
            raise MalformedRecord(f"bad srl frame {obj!r}") from exc


@dataclass(frozen=True)
class SentenceRecord:
    tokens: tuple[str, ...]
    lemmas: tuple[str, ...] | None = None
    pos: tuple[str, ...] | None = None
    chunks: tuple[str, ...] | None = None
    ner: tuple[str, ...] | None = None
    parse: str | None = None
    deps: tuple[tuple[int, int, str], ...] | None = None
    srl: tuple[SrlFrame, ...] | None = None
    verb_cluster: tuple[str, ...] | None = None
    frame: tuple[str, ...] | None = None
    labels: tuple[str, ...] | None = None
    id: str | None = None
    doc_id: str | None = None

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def tree(self) -> ConstituencyTree | None:
        return None if self.parse is None else parse_tree(self.parse)

    def spans(self) -> list[LabelSpan]:
        return iob_spans(self.labels or ())

    def with_labels(self, labels: Sequence[str]) -> "SentenceRecord":
        if len(labels) != len(self.tokens):
            raise LengthMismatch(f"{len(labels)} labels for {len(self.tokens)} tokens")
        return replace(self, labels=tuple(labels))


def _split_tag(tag: str) -> tuple[str, str | None]:
    if tag == "O":
        return "O", None
    prefix, sep, cls = tag.partition("-")
    if not sep or prefix not in ("B", "I") or not cls:
        raise MalformedLabel(f"not an IOB tag: {tag!r}")
    return prefix, cls


def iob_spans(labels: Sequence[str]) -> list[LabelSpan]:
    """Maximal labelled spans. An ``I-X`` that does not continue an X span opens one."""
    spans = []
    start, current = None, None
    for i, tag in enumerate(labels):
        prefix, cls = _split_tag(tag)
        if prefix == "I" and cls == current:
            continue
        if current is not None:
            spans.append(LabelSpan(start, i, current))
        start, current = (i, cls) if cls is not None else (None, None)
    if current is not None:
        spans.append(LabelSpan(start, len(labels), current))
    return spans


def spans_to_iob(spans: Iterable[LabelSpan], length: int) -> list[str]:
    tags = ["O"] * length
    for span in sorted(spans):
        if span.end > length:
            raise ValueError(f"span {span} exceeds length {length}")
        if any(t != "O" for t in tags[span.start:span.end]):
            raise OverlappingSpans(f"span {span} overlaps an earlier span")
        tags[span.start] = "B-" + span.label
        for i in range(span.start + 1, span.end):
            tags[i] = "I-" + span.label
    return tags


def repair_iob(labels: Sequence[str]) -> list[str]:
    """Rewrite orphan ``I-X`` tags as ``B-X``; valid sequences come back unchanged."""
    return spans_to_iob(iob_spans(labels), len(labels))


def _check_opinion_tag(tag: str) -> None:
    _, cls = _split_tag(tag)
    if cls is not None and cls not in OPINION_CLASSES:
        raise MalformedLabel(f"unknown opinion class in {tag!r}")


def _layer(obj: dict, key: str, n: int) -> tuple[str, ...] | None:
    value = obj.get(key)
    if value is None:
        return None
    if not isinstance(value, list):
        raise MalformedRecord(f"layer {key!r} must be a list")
    if len(value) != n:
        raise LengthMismatch(f"layer {key!r} has {len(value)} entries for {n} tokens")
    return tuple(str(v) for v in value)


def record_from_json(obj: dict[str, Any]) -> SentenceRecord:
    if not isinstance(obj, dict) or "tokens" not in obj:
        raise MalformedRecord("record needs a 'tokens' list")
    tokens = obj["tokens"]
    if not isinstance(tokens, list) or not tokens:
        raise MalformedRecord("'tokens' must be a non-empty list")
    tokens = tuple(str(t) for t in tokens)
    n = len(tokens)
    layers = {key: _layer(obj, key, n) for key in TOKEN_LAYERS}

    for key in ("labels", "chunks"):
        if layers[key] is not None:
            if key == "labels":
                for tag in layers[key]:
                    _check_opinion_tag(tag)
            layers[key] = tuple(repair_iob(layers[key]))

    parse = obj.get("parse")
    if parse is not None:
        tree = parse_tree(parse)
        if len(tree) != n:
            raise LengthMismatch(f"parse has {len(tree)} leaves for {n} tokens")

    deps = obj.get("deps")
    if deps is not None:
        try:
            deps = tuple((int(h), int(d), str(r)) for h, d, r in deps)
        except (TypeError, ValueError) as exc:
            raise MalformedRecord("deps must be [head, dependent, relation] triples") from exc
        for h, d, _ in deps:
            if not (-1 <= h < n and 0 <= d < n):
                raise MalformedRecord(f"dependency index out of range: {(h, d)}")

    srl = obj.get("srl")
    if srl is not None:
        srl = tuple(SrlFrame.from_json(f) for f in srl)
        for frame in srl:
            if not 0 <= frame.predicate < n:
                raise MalformedRecord(f"predicate index {frame.predicate} out of range")
            for _, s, e in frame.args:
                if not 0 <= s < e <= n:
                    raise MalformedRecord(f"argument span [{s}, {e}) out of range")

    return SentenceRecord(
        tokens=tokens, parse=parse, deps=deps, srl=srl,
        id=None if obj.get("id") is None else str(obj["id"]),
        doc_id=None if obj.get("doc_id") is None else str(obj["doc_id"]),
        **layers,
    )


def record_to_json(record: SentenceRecord) -> dict[str, Any]:
    out: dict[str, Any] = {}
    for key in RECORD_KEYS:
        value = getattr(record, key)
        if value is None:
            continue
        if key == "srl":
            value = [f.to_json() for f in value]
        elif key == "deps":
            value = [list(t) for t in value]
        elif isinstance(value, tuple):
            value = list(value)
        out[key] = value
    return out


def parse_record(line: str) -> SentenceRecord:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise MalformedRecord(f"not a JSON object: {exc}") from exc
    return record_from_json(obj)


def serialize_record(record: SentenceRecord) -> str:
    return json.dumps(record_to_json(record), ensure_ascii=False)


def read_records(path) -> Iterator[SentenceRecord]:
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                yield parse_record(line)
            except (ValueError, MalformedTree) as exc:
                raise type(exc)(f"{path}:{lineno}: {exc}") from exc


def write_records(path, records: Iterable[SentenceRecord]) -> int:
    n = 0
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(serialize_record(record) + "\n")
            n += 1
    return n
