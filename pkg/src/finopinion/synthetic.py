"""Synthetic fixtures: annotated sentence records, HTML filings, an earnings panel and toy lexicons.

Sentences come from a handful of templates over a small vocabulary, so every
annotation layer (parse, dependencies, predicate frames, chunks, entities,
opinion labels) is exact by construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .econ.panel import EarningsRow, write_earnings
from .econ.sue import categorize, compute_sue
from .lingdata import SentenceRecord, SrlFrame, write_records


@dataclass
class Piece:
    words: list[str]
    pos: list[str]
    lemmas: list[str]
    bracket: str
    head: int
    deps: list[tuple[int, int, str]] = field(default_factory=list)   # local indices
    ner: list[str] | None = None
    chunk: str = "NP"

    def __len__(self):
        return len(self.words)


def _np(parts, ner=None) -> Piece:
    """Flat NP from (word, pos, lemma) triples; head is the last noun or pronoun."""
    words = [w for w, _, _ in parts]
    pos = [p for _, p, _ in parts]
    lemmas = [l for _, _, l in parts]
    head = max(i for i, p in enumerate(pos) if p.startswith(("NN", "PRP")) and p != "PRP$")
    rel = {"DT": "det", "PRP$": "poss", "JJ": "amod", "NNP": "compound", "NN": "compound", "CD": "nummod"}
    deps = [(head, i, rel.get(p, "dep")) for i, p in enumerate(pos) if i != head]
    bracket = "(NP " + " ".join(f"({p} {w})" for w, p in zip(words, pos)) + ")"
    return Piece(words, pos, lemmas, bracket, head, deps, ner or ["O"] * len(words))


AGENTS = {
    "we": (_np([("We", "PRP", "we")]), True),
    "management": (_np([("Management", "NN", "management")]), False),
    "the company": (_np([("The", "DT", "the"), ("Company", "NN", "company")]), False),
    "our board": (_np([("Our", "PRP$", "our"), ("board", "NN", "board")]), False),
    "john smith": (_np([("John", "NNP", "John"), ("Smith", "NNP", "Smith")], ["PERSON"] * 2), False),
    "acme holdings": (_np([("Acme", "NNP", "Acme"), ("Holdings", "NNP", "Holdings")], ["ORGANIZATION"] * 2), False),
}

TARGETS = [
    _np([("the", "DT", "the"), ("outlook", "NN", "outlook")]),
    _np([("our", "PRP$", "our"), ("results", "NNS", "result")]),
    _np([("future", "JJ", "future"), ("earnings", "NNS", "earnings")]),
    _np([("the", "DT", "the"), ("business", "NN", "business")]),
    _np([("our", "PRP$", "our"), ("liquidity", "NN", "liquidity")]),
    _np([("operating", "NN", "operating"), ("margins", "NNS", "margin")]),
]

# (plural-agreement form, singular form, lemma, cluster, frame)
DS_VERBS = [
    ("believe", "believes", "believe", "c07", "Awareness"),
    ("expect", "expects", "expect", "c07", "Expectation"),
    ("anticipate", "anticipates", "anticipate", "c07", "Expectation"),
    ("think", "thinks", "think", "c07", "Opinion"),
    ("feel", "feels", "feel", "c21", "Feeling"),
]
OSE_VERBS = [
    ("said", "say", "c03", "Statement"),
    ("stated", "state", "c03", "Statement"),
    ("reported", "report", "c03", "Reporting"),
]


def _vp(words, pos, lemmas, bracket, head, deps) -> Piece:
    return Piece(list(words), list(pos), list(lemmas), bracket, head, list(deps), chunk="VP")


# expressive phrases; polarity "negative" phrases cluster in bad years, "positive" in good ones
EXPRESSIVE = {
    "could be adversely affected": (_vp(
        ["could", "be", "adversely", "affected"], ["MD", "VB", "RB", "VBN"], ["could", "be", "adversely", "affect"],
        "(VP (MD could) (VP (VB be) (VP (ADVP (RB adversely)) (VBN affected))))", 3,
        [(3, 0, "aux"), (3, 1, "auxpass"), (3, 2, "advmod")]), "negative"),
    "may be impaired": (_vp(
        ["may", "be", "impaired"], ["MD", "VB", "VBN"], ["may", "be", "impair"],
        "(VP (MD may) (VP (VB be) (VP (VBN impaired))))", 2, [(2, 0, "aux"), (2, 1, "auxpass")]), "negative"),
    "could be materially harmed": (_vp(
        ["could", "be", "materially", "harmed"], ["MD", "VB", "RB", "VBN"], ["could", "be", "materially", "harm"],
        "(VP (MD could) (VP (VB be) (VP (ADVP (RB materially)) (VBN harmed))))", 3,
        [(3, 0, "aux"), (3, 1, "auxpass"), (3, 2, "advmod")]), "negative"),
    "will remain strong": (_vp(
        ["will", "remain", "strong"], ["MD", "VB", "JJ"], ["will", "remain", "strong"],
        "(VP (MD will) (VP (VB remain) (ADJP (JJ strong))))", 1, [(1, 0, "aux"), (1, 2, "xcomp")]), "positive"),
    "should improve significantly": (_vp(
        ["should", "improve", "significantly"], ["MD", "VB", "RB"], ["should", "improve", "significantly"],
        "(VP (MD should) (VP (VB improve) (ADVP (RB significantly))))", 1, [(1, 0, "aux"), (1, 2, "advmod")]),
        "positive"),
    "may decline substantially": (_vp(
        ["may", "decline", "substantially"], ["MD", "VB", "RB"], ["may", "decline", "substantially"],
        "(VP (MD may) (VP (VB decline) (ADVP (RB substantially))))", 1, [(1, 0, "aux"), (1, 2, "advmod")]),
        "negative"),
}

OBJECTIVE_VPS = [
    _vp(["increased", "during", "the", "year"], ["VBD", "IN", "DT", "NN"], ["increase", "during", "the", "year"],
        "(VP (VBD increased) (PP (IN during) (NP (DT the) (NN year))))", 0,
        [(0, 1, "prep"), (1, 3, "pobj"), (3, 2, "det")]),
    _vp(["declined", "in", "the", "fourth", "quarter"], ["VBD", "IN", "DT", "JJ", "NN"],
        ["decline", "in", "the", "fourth", "quarter"],
        "(VP (VBD declined) (PP (IN in) (NP (DT the) (JJ fourth) (NN quarter))))", 0,
        [(0, 1, "prep"), (1, 4, "pobj"), (4, 2, "det"), (4, 3, "amod")]),
    _vp(["were", "unchanged", "from", "the", "prior", "year"], ["VBD", "JJ", "IN", "DT", "JJ", "NN"],
        ["be", "unchanged", "from", "the", "prior", "year"],
        "(VP (VBD were) (ADJP (JJ unchanged) (PP (IN from) (NP (DT the) (JJ prior) (NN year)))))", 0,
        [(0, 1, "acomp"), (1, 2, "prep"), (2, 5, "pobj"), (5, 3, "det"), (5, 4, "amod")]),
]

PLACES = [("Chicago", "LOCATION"), ("Texas", "LOCATION"), ("Europe", "LOCATION")]

VERB_CLUSTERS = {
    "be": "c01", "remain": "c01", "say": "c03", "state": "c03", "report": "c03", "affect": "c12",
    "harm": "c12", "impair": "c12", "improve": "c15", "decline": "c15", "increase": "c15",
}
FRAMES = {
    "say": "Statement", "state": "Statement", "report": "Reporting", "affect": "Objective_influence",
    "harm": "Damaging", "impair": "Damaging", "improve": "Improvement", "decline": "Change_position",
    "increase": "Change_position", "remain": "State_continue", "be": "none",
}


class _Builder:
    """Concatenates pieces into one record, shifting local indices."""

    def __init__(self):
        self.words, self.pos, self.lemmas, self.ner, self.chunks, self.labels = [], [], [], [], [], []
        self.deps: list[tuple[int, int, str]] = []

    def add(self, piece: Piece, label: str | None = None) -> tuple[int, int]:
        off = len(self.words)
        self.words += piece.words
        self.pos += piece.pos
        self.lemmas += piece.lemmas
        self.ner += piece.ner or ["O"] * len(piece)
        self.chunks += [("B-" if i == 0 else "I-") + piece.chunk for i in range(len(piece))]
        self.labels += [("O" if label is None else ("B-" if i == 0 else "I-") + label) for i in range(len(piece))]
        self.deps += [(h + off, d + off, r) for h, d, r in piece.deps]
        return off, off + piece.head

    def word(self, w, p, lemma, label=None, chunk="O", ner="O") -> int:
        self.words.append(w)
        self.pos.append(p)
        self.lemmas.append(lemma)
        self.ner.append(ner)
        self.chunks.append(chunk)
        self.labels.append(label or "O")
        return len(self.words) - 1

    def record(self, parse, srl, rid, doc_id, frame_names) -> SentenceRecord:
        clusters = [VERB_CLUSTERS.get(l, "c00") if p.startswith("VB") else "none" for l, p in zip(self.lemmas, self.pos)]
        frames = ["none"] * len(self.words)
        for i, name in frame_names.items():
            frames[i] = name
        return SentenceRecord(
            tokens=tuple(self.words), lemmas=tuple(self.lemmas), pos=tuple(self.pos), chunks=tuple(self.chunks),
            ner=tuple(self.ner), parse=parse, deps=tuple(self.deps), srl=tuple(srl),
            verb_cluster=tuple(clusters), frame=tuple(frames), labels=tuple(self.labels), id=rid, doc_id=doc_id,
        )


def _pick(rng, seq):
    return seq[int(rng.integers(len(seq)))]


def sentence_record(rng: np.random.Generator, kind: str, rid: str, doc_id: str, expressive: str | None = None,
                    agent: str | None = None) -> SentenceRecord:
    """One annotated sentence of the given template kind: ``ds``, ``ose``, ``according``, ``place`` or ``objective``."""
    b = _Builder()
    agent_key = agent or _pick(rng, sorted(AGENTS))
    agent_np, plural = AGENTS[agent_key]
    target = _pick(rng, TARGETS)
    es_key = expressive or _pick(rng, sorted(EXPRESSIVE))
    es = EXPRESSIVE[es_key][0]

    if kind == "ds":
        a0, ah = b.add(agent_np, "agent")
        pl, sg, lemma, _, frame = _pick(rng, DS_VERBS)
        v = b.word(pl if plural else sg, "VBP" if plural else "VBZ", lemma, "B-direct-subjective", "B-VP")
        that = b.word("that", "IN", "that", chunk="B-SBAR")
        t0, th = b.add(target, "target")
        e0, eh = b.add(es, "expressive-subjectivity")
        dot = b.word(".", ".", ".")
        b.deps += [(-1, v, "root"), (v, ah, "nsubj"), (v, eh, "ccomp"), (eh, that, "mark"),
                   (eh, th, "nsubjpass" if es.pos[es.head] == "VBN" else "nsubj"), (v, dot, "punct")]
        vp_tag = "VBP" if plural else "VBZ"
        parse = (f"(ROOT (S {agent_np.bracket} (VP ({vp_tag} {b.words[v]}) (SBAR (IN that) "
                 f"(S {target.bracket} {es.bracket}))) (. .)))")
        srl = [SrlFrame(v, "active", (("A0", a0, a0 + len(agent_np)), ("A1", that, dot)))]
        frames = {v: frame, eh: FRAMES.get(es.lemmas[es.head], "none")}
    elif kind == "ose":
        a0, ah = b.add(agent_np, "agent")
        word, lemma, _, frame = _pick(rng, OSE_VERBS)
        v = b.word(word, "VBD", lemma, "B-objective-speech-event", "B-VP")
        that = b.word("that", "IN", "that", chunk="B-SBAR")
        t0, th = b.add(target)
        obj = _pick(rng, OBJECTIVE_VPS)
        o0, oh = b.add(obj)
        dot = b.word(".", ".", ".")
        b.deps += [(-1, v, "root"), (v, ah, "nsubj"), (v, oh, "ccomp"), (oh, that, "mark"), (oh, th, "nsubj"),
                   (v, dot, "punct")]
        parse = (f"(ROOT (S {agent_np.bracket} (VP (VBD {word}) (SBAR (IN that) (S {target.bracket} "
                 f"{obj.bracket}))) (. .)))")
        srl = [SrlFrame(v, "active", (("A0", a0, a0 + len(agent_np)), ("A1", that, dot)))]
        frames = {v: frame}
    elif kind == "according":
        acc = b.word("According", "VBG", "accord", "B-objective-speech-event", "B-PP")
        to = b.word("to", "TO", "to", "I-objective-speech-event", "I-PP")
        a0, ah = b.add(agent_np, "agent")
        comma = b.word(",", ",", ",")
        t0, th = b.add(target, "target")
        e0, eh = b.add(es, "expressive-subjectivity")
        dot = b.word(".", ".", ".")
        b.deps += [(-1, eh, "root"), (eh, acc, "prep"), (acc, to, "pcomp"), (to, ah, "pobj"),
                   (eh, th, "nsubjpass" if es.pos[es.head] == "VBN" else "nsubj"), (eh, comma, "punct"),
                   (eh, dot, "punct")]
        parse = (f"(ROOT (S (PP (VBG According) (PP (TO to) {agent_np.bracket})) (, ,) {target.bracket} "
                 f"{es.bracket} (. .)))")
        voice = "passive" if es.pos[es.head] == "VBN" else "active"
        srl = [SrlFrame(eh, voice, (("A1", t0, t0 + len(target)),))]
        frames = {eh: FRAMES.get(es.lemmas[es.head], "none")}
    elif kind == "place":
        place, ner = _pick(rng, PLACES)
        prep = b.word("In", "IN", "in", chunk="B-PP")
        loc = b.word(place, "NNP", place, chunk="B-NP", ner=ner)
        comma = b.word(",", ",", ",")
        t0, th = b.add(target, "target")
        e0, eh = b.add(es, "expressive-subjectivity")
        dot = b.word(".", ".", ".")
        b.deps += [(-1, eh, "root"), (eh, prep, "prep"), (prep, loc, "pobj"),
                   (eh, th, "nsubjpass" if es.pos[es.head] == "VBN" else "nsubj"), (eh, comma, "punct"),
                   (eh, dot, "punct")]
        parse = (f"(ROOT (S (PP (IN In) (NP (NNP {place}))) (, ,) {target.bracket} {es.bracket} (. .)))")
        voice = "passive" if es.pos[es.head] == "VBN" else "active"
        srl = [SrlFrame(eh, voice, (("A1", t0, t0 + len(target)),))]
        frames = {eh: FRAMES.get(es.lemmas[es.head], "none")}
    elif kind == "objective":
        t0, th = b.add(target)
        obj = _pick(rng, OBJECTIVE_VPS)
        o0, oh = b.add(obj)
        dot = b.word(".", ".", ".")
        b.deps += [(-1, oh, "root"), (oh, th, "nsubj"), (oh, dot, "punct")]
        parse = f"(ROOT (S {target.bracket} {obj.bracket} (. .)))"
        srl = [SrlFrame(oh, "active", (("A1", t0, t0 + len(target)),))]
        frames = {oh: FRAMES.get(obj.lemmas[obj.head], "none")}
    else:
        raise ValueError(f"unknown template {kind!r}")
    return b.record(parse, srl, rid, doc_id, frames)


KINDS = ("ds", "ose", "according", "place", "objective")
KIND_WEIGHTS = (0.35, 0.15, 0.15, 0.15, 0.20)


def annotated_corpus(n: int, seed: int = 0, docs: int = 20) -> list[SentenceRecord]:
    rng = np.random.default_rng(seed)
    out = []
    for i in range(n):
        kind = KINDS[int(rng.choice(len(KINDS), p=KIND_WEIGHTS))]
        out.append(sentence_record(rng, kind, f"s{i:05d}", f"doc{i % docs:03d}"))
    return out


def sentence_text(record: SentenceRecord) -> str:
    text = " ".join(record.tokens)
    return text.replace(" .", ".").replace(" ,", ",")


def token_determined_corpus(n: int, seed: int = 0, vocab_size: int = 40) -> list[SentenceRecord]:
    """Sentences whose agent tag depends only on the current token (a fixed subset of the vocabulary)."""
    rng = np.random.default_rng(seed)
    vocab = [f"w{i}" for i in range(vocab_size)]
    agents = set(vocab[:5])
    out = []
    for i in range(n):
        toks = [vocab[int(j)] for j in rng.integers(vocab_size, size=int(rng.integers(4, 15)))]
        labels = ["B-agent" if t in agents else "O" for t in toks]
        out.append(SentenceRecord(tokens=tuple(toks), labels=tuple(labels), id=f"t{i:05d}", doc_id="toy"))
    return out


# --- filings and earnings -----------------------------------------------------

COMPANIES = ("C001", "C002", "C003", "C004", "C005")
FILING_YEARS = (2005, 2006, 2007, 2008)
HISTORY_YEARS = tuple(range(1999, 2011))

SUBJECTIVITY_LEXICON = [
    ("believe", "weaksubj", "neutral"), ("believes", "weaksubj", "neutral"),
    ("expect", "weaksubj", "neutral"), ("expects", "weaksubj", "neutral"),
    ("anticipate", "weaksubj", "neutral"), ("anticipates", "weaksubj", "neutral"),
    ("think", "weaksubj", "neutral"), ("thinks", "weaksubj", "neutral"),
    ("feel", "weaksubj", "neutral"), ("feels", "weaksubj", "neutral"),
    ("adversely", "strongsubj", "negative"), ("impaired", "strongsubj", "negative"),
    ("impair", "strongsubj", "negative"), ("harmed", "strongsubj", "negative"), ("harm", "strongsubj", "negative"),
    ("strong", "strongsubj", "positive"), ("significantly", "weaksubj", "positive"),
    ("improve", "weaksubj", "positive"), ("substantially", "weaksubj", "neutral"),
    ("decline", "weaksubj", "negative"), ("bold", "strongsubj", "positive"), ("decided", "weaksubj", "neutral"),
    ("decide", "weaksubj", "neutral"),
]
FINANCE_WORDS = [
    ("adversely", "negative"), ("impaired", "negative"), ("decline", "negative"), ("losses", "negative"),
    ("strong", "positive"), ("improve", "positive"), ("gains", "positive"),
]

FRONT = """<html><head><title>Annual report {cid} {year}</title><style>p {{margin: 0}}</style></head>
<body>
<p>UNITED STATES SECURITIES AND EXCHANGE COMMISSION</p>
<p>FORM 10-K for the fiscal year ended December 31, {year}</p>
<table><tr><td>Commission file number</td><td>0-{num}</td></tr></table>
<p>Indicate by check mark whether the registrant is a well-known seasoned issuer.</p>
"""
BACK = """<p>SIGNATURES</p>
<p>Pursuant to the requirements of the Securities Exchange Act, the registrant has duly caused this report to be signed.</p>
<p>EXHIBIT 31.1 Certification of the chief executive officer, who believes this report is accurate.</p>
</body></html>
"""


def _filing_html(rng, cid: str, year: int, outcome: int, negative: list[str], positive: list[str],
                 signal: float) -> str:
    parts = [FRONT.format(cid=cid, year=year, num=1000 + int(cid[1:]))]
    parts.append("<h2>Item 1. Business</h2>\n")
    parts.append(f"<p>{cid} Industries Inc. makes industrial products and sells them in many markets.</p>\n")
    parts.append("<table><tr><td>Revenue</td><td>1,234</td><td>5,678</td></tr></table>\n")
    parts.append("<p>....... 1,234   5,678 .......</p>\n")
    parts.append("<h2>Item 7. Management Discussion and Analysis</h2>\n")
    sentences = []
    # opinionated expressions track the year's outcome, with noise
    n_neg = int(rng.poisson(1.5 + signal * (outcome < 0)))
    n_pos = int(rng.poisson(1.5 + signal * (outcome > 0)))
    k = 0
    for es in [_pick(rng, negative) for _ in range(n_neg)] + [_pick(rng, positive) for _ in range(n_pos)]:
        kind = ("ds", "according", "place")[int(rng.integers(3))]
        sentences.append(sentence_record(rng, kind, f"{cid}_{year}_{k}", f"{cid}_{year}", expressive=es))
        k += 1
    for _ in range(int(rng.integers(3, 6))):
        kind = ("objective", "ose")[int(rng.integers(2))]
        sentences.append(sentence_record(rng, kind, f"{cid}_{year}_{k}", f"{cid}_{year}"))
        k += 1
    order = rng.permutation(len(sentences))
    paragraph = []
    for i in order:
        paragraph.append(sentence_text(sentences[i]))
        if len(paragraph) == 3:
            parts.append("<p>" + " ".join(paragraph) + "</p>\n")
            paragraph = []
    if paragraph:
        parts.append("<p>" + " ".join(paragraph) + "</p>\n")
    parts.append("<script>var x = 'We believe this script is hidden.';</script>\n")
    parts.append(BACK)
    return "".join(parts)


def earnings_panel(seed: int = 0) -> list[EarningsRow]:
    rng = np.random.default_rng(seed)
    rows = []
    for cid in COMPANIES:
        level = float(rng.uniform(50, 150))
        for year in HISTORY_YEARS:
            level += float(rng.normal(2.0, 10.0))
            controls = {
                "lag_sue": float(rng.normal()), "bm": float(rng.uniform(0.2, 1.5)), "roe": float(rng.normal(0.1, 0.05)),
                "accruals": float(rng.normal(0, 0.03)), "size": float(rng.normal(7.0, 1.0)),
                "dividend": float(rng.integers(0, 2)), "z_score": float(rng.normal(3.0, 1.0)),
                "asset_growth": float(rng.normal(0.05, 0.1)),
            }
            rows.append(EarningsRow(cid, year, round(level, 4), {c: round(v, 6) for c, v in controls.items()}))
    # one incomplete row, dropped at merge time
    r = rows[-1]
    rows[-1] = EarningsRow(r.company_id, r.fiscal_year, r.earnings, {**r.controls, "z_score": None})
    return rows


def outcomes(rows: list[EarningsRow], tau: float) -> dict[tuple[str, int], int]:
    out = {}
    for cid in COMPANIES:
        hist = sorted((r for r in rows if r.company_id == cid), key=lambda r: r.fiscal_year)
        sue = compute_sue([r.earnings for r in hist], [r.fiscal_year for r in hist])
        for r, s in zip(hist, sue):
            if np.isfinite(s):
                out[(cid, r.fiscal_year)] = categorize(float(s), tau)
    return out


def write_mini_bundle(root, seed: int = 4, n_records: int = 300, signal: float = 1.0) -> dict[str, str]:
    """Write the mini corpus used by the end-to-end pipeline; returns the written paths."""
    root = Path(root)
    (root / "filings").mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)
    earnings = earnings_panel(seed)
    y = outcomes(earnings, 0.5)
    negative = sorted(k for k, (_, pol) in EXPRESSIVE.items() if pol == "negative")
    positive = sorted(k for k, (_, pol) in EXPRESSIVE.items() if pol == "positive")
    for cid in COMPANIES:
        for year in FILING_YEARS:
            html = _filing_html(rng, cid, year, y.get((cid, year), 0), negative, positive, signal)
            (root / "filings" / f"{cid}_{year}.html").write_text(html, encoding="utf-8")
    write_earnings(root / "earnings.csv", earnings)
    write_records(root / "records.jsonl", annotated_corpus(n_records, seed))
    with open(root / "subjectivity.tsv", "w", encoding="utf-8") as fh:
        for w, s, p in SUBJECTIVITY_LEXICON:
            fh.write(f"{w}\t{s}\t{p}\n")
    with open(root / "finance_words.tsv", "w", encoding="utf-8") as fh:
        for w, c in FINANCE_WORDS:
            fh.write(f"{w}\t{c}\n")
    with open(root / "verb_clusters.tsv", "w", encoding="utf-8") as fh:
        for k in sorted(VERB_CLUSTERS):
            fh.write(f"{k}\t{VERB_CLUSTERS[k]}\n")
    with open(root / "frames.tsv", "w", encoding="utf-8") as fh:
        for k in sorted(FRAMES):
            fh.write(f"{k}\t{FRAMES[k]}\n")
    with open(root / "mwe_polarity.tsv", "w", encoding="utf-8") as fh:
        for k in sorted(EXPRESSIVE):
            fh.write(f"{k}\t{EXPRESSIVE[k][1]}\n")
    config = {
        "corpus_dir": "filings",
        "lexicons": ["subjectivity.tsv", "finance_words.tsv"],
        "subjectivity_lexicon": "subjectivity.tsv",
        "verb_clusters": "verb_clusters.tsv",
        "frames": "frames.tsv",
        "records": "records.jsonl",
        "earnings": "earnings.csv",
        "polarity": "mwe_polarity.tsv",
        "feature_set": "B",
        "train": {"max_iterations": 500, "gaussian_variance": 10.0, "order": 1, "seed": seed},
        "mwe_class": "expressive-subjectivity",
        "top_k": 2,
        "controls": ["size"],
        "tau": 0.5,
        "sig_level": 0.05,
        "robust": True,
        "seed": seed,
    }
    (root / "config.json").write_text(json.dumps(config, indent=2) + "\n", encoding="utf-8")
    return {"root": str(root), "config": str(root / "config.json")}
