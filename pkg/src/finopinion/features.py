"""Per-token attribute matrices for feature families f1..f19 (plus ``pos``).

Each family contributes fixed attribute names, so a record always gets one
or more ``(name, value)`` pairs per enabled family on every row. Layers the
record lacks yield the value ``absent`` unless ``FeatureConfig.strict`` is set.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .heads import DEFAULT_RULES, HeadRules, head_leaf, head_word, headship_chain
from .lingdata import (
    MissingDepsLayer,
    MissingLayer,
    MissingParseLayer,
    MissingSrlLayer,
    SentenceRecord,
    SrlFrame,
)
from .tree import ConstituencyTree, Node

FAMILIES = tuple(f"f{i}" for i in range(1, 20)) + ("pos",)
ABSENT = "absent"
UP, DOWN = "↑", "↓"
ARROW = "→"


class NoGoverningVP(ValueError):
    pass


# --- orthography (f3-f5) ---------------------------------------------------

_PUNCT_RE = re.compile(r"^[^\w\s]+$")


def orthographic_flags(token: str) -> dict[str, bool]:
    letters = [ch for ch in token if ch.isalpha()]
    return {
        "initcap": bool(token) and token[0].isupper(),
        "allcaps": bool(letters) and all(ch.isupper() for ch in letters),
        "alnum_mix": bool(letters) and any(ch.isdigit() for ch in token),
        "punct": bool(_PUNCT_RE.match(token)),
    }


# --- syntax (f9-f12, f14) -----------------------------------------------------

def subcategorization(tree: ConstituencyTree, predicate: int) -> str:
    """Expansion of the lowest VP above the predicate, e.g. ``VP→VBD-S``."""
    vp = next((a for a in tree.leaves[predicate].ancestors() if a.category == "VP"), None)
    if vp is None:
        raise NoGoverningVP(f"no VP above token {predicate}")
    return "VP" + ARROW + "-".join(c.category for c in vp.children)


def phrase_type_levels(
    tree: ConstituencyTree, leaf: int, max_levels: int = 3, rules: HeadRules = DEFAULT_RULES
) -> list[str]:
    """Categories of the preterminal and ancestors headed by ``leaf``, at most ``max_levels``."""
    return [n.category for n in headship_chain(tree.leaves[leaf], rules)[:max_levels]]


def _path_from(tree: ConstituencyTree, start: Node, predicate: int) -> tuple[str, str]:
    target = tree.leaves[predicate]
    lca = tree.lowest_common_ancestor(start, target)
    up = [start]
    node = start
    while node is not lca:
        node = node.parent
        up.append(node)
    down = []
    node = target
    while node is not lca:
        down.append(node)
        node = node.parent
    partial = UP.join(n.category for n in up)
    full = partial + "".join(DOWN + n.category for n in reversed(down))
    return full, partial


def syntactic_path(tree: ConstituencyTree, leaf: int, predicate: int) -> tuple[str, str]:
    """(full path, partial path) from a token's preterminal to the predicate's."""
    return _path_from(tree, tree.leaves[leaf], predicate)


def clause_patterns(tree: ConstituencyTree) -> list[tuple[bool, bool]]:
    """Per token: (verb takes an S/SBAR complement, token lies in an NP followed by a sibling VP)."""
    n = len(tree)
    ncv = [False] * n
    npvp = [False] * n
    for node in tree.nodes():
        if node.is_preterminal:
            continue
        kids = node.children
        for i, child in enumerate(kids):
            if child.is_preterminal and child.label.startswith("VB") and node.category == "VP":
                if any(k.category in ("S", "SBAR") for k in kids[i + 1:]):
                    ncv[child.start] = True
            if child.category == "NP" and any(k.category == "VP" for k in kids[i + 1:]):
                for t in range(child.start, child.end):
                    npvp[t] = True
    return list(zip(ncv, npvp))


# --- predicate-argument structure (f6-f8) ---------------------------------

_BE_GET = {
    "be", "is", "am", "are", "was", "were", "been", "being", "'s", "'re", "'m",
    "get", "gets", "got", "gotten", "getting",
}


def fallback_frame(tree: ConstituencyTree) -> SrlFrame:
    """Main verb by head percolation from the root; passive iff VBN after a be/get form in its VP chain."""
    leaf = head_leaf(tree.root)
    voice = "active"
    if leaf.label == "VBN":
        top = leaf.parent
        while top is not None and top.parent is not None and top.parent.category == "VP":
            top = top.parent
        if top is not None and top.category == "VP":
            words = tree.words
            if any(words[i].lower() in _BE_GET for i in range(top.start, leaf.start)):
                voice = "passive"
    return SrlFrame(leaf.start, voice)


def predicate_frames(record: SentenceRecord, fallback: bool = True) -> tuple[list[SrlFrame], bool]:
    """SRL frames of the record, or a single fallback frame. Second item says whether fallback was used."""
    if record.srl:
        return list(record.srl), False
    if record.srl is not None and not fallback:
        return [], False
    if not fallback:
        raise MissingSrlLayer("record has no srl layer and fallback is disabled")
    tree = record.tree
    if tree is None:
        raise MissingSrlLayer("record has no srl layer and no parse to fall back on")
    return [fallback_frame(tree)], True


def predicate_features(record: SentenceRecord, fallback: bool = True) -> list[dict[str, str]]:
    """Per token and frame k: ``f6.pk`` signed distance, ``f7.pk`` position, ``f8.pk`` voice."""
    frames, used_fallback = predicate_frames(record, fallback)
    if not frames:
        return [{"f6.p0": "none", "f7.p0": "none", "f8.p0": "none"} for _ in record.tokens]
    rows: list[dict[str, str]] = [{} for _ in record.tokens]
    for k, frame in enumerate(frames):
        voice = ("fallback:" if used_fallback else "") + frame.voice
        for i, row in enumerate(rows):
            d = i - frame.predicate
            row[f"f6.p{k}"] = str(d)
            row[f"f7.p{k}"] = "before" if d < 0 else "after" if d > 0 else "predicate"
            row[f"f8.p{k}"] = voice
    return rows


# --- dependencies (f15) ---------------------------------------------------------

_DEP_ROLES = {"nsubj": "nsubj", "nsubjpass": "nsubj", "amod": "amod", "advmod": "advmod", "dobj": "dobj"}


def dependency_flags(record: SentenceRecord) -> list[set[str]]:
    if record.deps is None:
        raise MissingDepsLayer("record has no deps layer")
    tags: list[set[str]] = [set() for _ in record.tokens]
    for head, dep, rel in record.deps:
        role = _DEP_ROLES.get(rel.lower())
        if role is None:
            continue
        tags[dep].add(f"{role}-dependent")
        if head >= 0:
            tags[head].add(f"{role}-governor")
    return tags


# --- lexicons (f17-f19) -------------------------------------------------------

LEXICON_CLASSES = (
    "objective",
    "weak-negative", "weak-neutral", "weak-positive",
    "strong-negative", "strong-neutral", "strong-positive",
)
_SUBJ_ALIASES = {"weak": "weak", "weaksubj": "weak", "strong": "strong", "strongsubj": "strong"}
_POL_ALIASES = {"negative": "negative", "neutral": "neutral", "positive": "positive", "both": "neutral"}


def load_subjectivity_lexicon(path) -> dict[str, str]:
    """Tab-separated ``word, subjectivity, polarity`` rows -> word -> class name."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            parts = line.rstrip("\n").split("\t")
            if not parts[0] or parts[0].startswith("#"):
                continue
            word = parts[0].strip().lower()
            subj = _SUBJ_ALIASES.get(parts[1].strip().lower(), "objective") if len(parts) > 1 else "objective"
            if subj == "objective":
                out[word] = "objective"
                continue
            pol = _POL_ALIASES.get(parts[2].strip().lower(), "neutral") if len(parts) > 2 else "neutral"
            out[word] = f"{subj}-{pol}"
    return out


def lexicon_class(token: str, lemma: str | None, lexicon: Mapping[str, str]) -> str:
    for key in (token.lower(), None if lemma is None else lemma.lower()):
        if key is not None and key in lexicon:
            return lexicon[key]
    return "objective"


def load_map(path) -> dict[str, str]:
    """Tab-separated ``key, value`` map file (verb clusters, frame names)."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            parts = line.rstrip("\n").split("\t")
            if len(parts) >= 2 and parts[0] and not parts[0].startswith("#"):
                out[parts[0].strip().lower()] = parts[1].strip()
    return out


@dataclass
class FeatureResources:
    lexicon: dict[str, str] = field(default_factory=dict)
    verb_clusters: dict[str, str] = field(default_factory=dict)
    frames: dict[str, str] = field(default_factory=dict)
    head_rules: HeadRules = field(default_factory=lambda: DEFAULT_RULES)

    @classmethod
    def from_paths(cls, lexicon=None, verb_clusters=None, frames=None, head_rules=None):
        from .heads import load_head_rules

        return cls(
            lexicon=load_subjectivity_lexicon(lexicon) if lexicon else {},
            verb_clusters=load_map(verb_clusters) if verb_clusters else {},
            frames=load_map(frames) if frames else {},
            head_rules=load_head_rules(head_rules) if head_rules else DEFAULT_RULES,
        )


# --- assembly -----------------------------------------------------------------

@dataclass(frozen=True)
class FeatureConfig:
    families: frozenset[str]
    name: str = "custom"
    srl_fallback: bool = True
    strict: bool = False
    drop_target: bool = False

    def __post_init__(self):
        unknown = set(self.families) - set(FAMILIES)
        if unknown:
            raise ValueError(f"unknown feature families: {sorted(unknown)}")
        object.__setattr__(self, "families", frozenset(self.families))

    def to_json(self) -> dict:
        return {
            "name": self.name, "families": sorted(self.families, key=FAMILIES.index),
            "srl_fallback": self.srl_fallback, "strict": self.strict, "drop_target": self.drop_target,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "FeatureConfig":
        return cls(
            frozenset(obj["families"]), obj.get("name", "custom"), obj.get("srl_fallback", True),
            obj.get("strict", False), obj.get("drop_target", False),
        )


@dataclass
class AttributeMatrix:
    names: tuple[str, ...]
    rows: list[list[tuple[str, str]]]

    def __len__(self) -> int:
        return len(self.rows)

    def values(self, i: int, name: str) -> list[str]:
        return [v for n, v in self.rows[i] if n == name]


_FAMILY_NAMES = {
    "f3": ("f3.initcap", "f3.allcaps"),
    "f10": ("f10", "f10.parent", "f10.pp"),
    "f11": ("f11.l1", "f11.l2", "f11.l3"),
    "f12": ("f12.path", "f12.partial", "f12.parent"),
    "f14": ("f14.ncv", "f14.npvp"),
    "f6": ("f6.p0",), "f7": ("f7.p0",), "f8": ("f8.p0",),
}


def _absent(n: int, names: Sequence[str]) -> list[dict[str, str]]:
    return [{name: ABSENT for name in names} for _ in range(n)]


def _require_tree(record: SentenceRecord) -> ConstituencyTree:
    tree = record.tree
    if tree is None:
        raise MissingParseLayer("record has no parse layer")
    return tree


def _layer_values(record: SentenceRecord, layer: str, name: str) -> list[dict[str, str]]:
    values = getattr(record, layer)
    if values is None:
        raise MissingLayer(f"record has no {layer} layer")
    return [{name: v} for v in values]


def _syntax_rows(record, family, res: FeatureResources, fallback: bool) -> list[dict[str, str]]:
    tree = _require_tree(record)
    rules = res.head_rules
    frames, _ = predicate_frames(record, fallback) if family in ("f9", "f10", "f12") else ([], False)
    pred = frames[0].predicate if frames else None
    rows: list[dict[str, str]] = [{} for _ in record.tokens]
    if family == "f9":
        try:
            value = subcategorization(tree, pred) if pred is not None else "none"
        except NoGoverningVP:
            value = "none"
        for row in rows:
            row["f9"] = value
    elif family == "f10":
        for i, leaf in enumerate(tree.leaves):
            rows[i]["f10"] = "PREDICATE" if i == pred else f"{leaf.label}:{leaf.word.lower()}"
            parent = leaf.parent
            headed = parent is not None and head_leaf(parent, rules) is leaf
            rows[i]["f10.parent"] = f"{leaf.label}:{leaf.word.lower()}" if headed else "O"
            pp = next((a for a in leaf.ancestors() if a.category == "PP"), None)
            info = head_word(tree, pp, rules) if pp is not None else None
            if info is not None and info.index == i and info.content_word is not None:
                rows[i]["f10.pp"] = f"{info.content_pos}:{info.content_word.lower()}"
            else:
                rows[i]["f10.pp"] = "O"
    elif family == "f11":
        for i in range(len(tree)):
            levels = phrase_type_levels(tree, i, 3, rules)
            levels += ["O"] * (3 - len(levels))
            for k, cat in enumerate(levels, 1):
                rows[i][f"f11.l{k}"] = cat
    elif family == "f12":
        for i, leaf in enumerate(tree.leaves):
            if pred is None:
                rows[i].update({"f12.path": "none", "f12.partial": "none", "f12.parent": "none"})
                continue
            full, partial = syntactic_path(tree, i, pred)
            rows[i]["f12.path"] = full
            rows[i]["f12.partial"] = partial
            parent = leaf.parent
            if parent is not None and head_leaf(parent, rules) is leaf and i != pred:
                rows[i]["f12.parent"] = _path_from(tree, parent, pred)[1]
            else:
                rows[i]["f12.parent"] = "O"
    elif family == "f14":
        for i, (ncv, npvp) in enumerate(clause_patterns(tree)):
            rows[i]["f14.ncv"] = "1" if ncv else "0"
            rows[i]["f14.npvp"] = "1" if npvp else "0"
    return rows


def _family_rows(record: SentenceRecord, family: str, config: FeatureConfig, res: FeatureResources):
    n = len(record)
    toks = record.tokens
    if family == "f1":
        return [{"f1": t} for t in toks]
    if family == "f2":
        return _layer_values(record, "lemmas", "f2")
    if family == "pos":
        return _layer_values(record, "pos", "pos")
    if family in ("f3", "f4", "f5"):
        flags = [orthographic_flags(t) for t in toks]
        if family == "f3":
            return [{"f3.initcap": str(int(f["initcap"])), "f3.allcaps": str(int(f["allcaps"]))} for f in flags]
        key = "alnum_mix" if family == "f4" else "punct"
        return [{family: str(int(f[key]))} for f in flags]
    if family in ("f6", "f7", "f8"):
        rows = predicate_features(record, config.srl_fallback)
        prefix = family + "."
        return [{k: v for k, v in row.items() if k.startswith(prefix)} for row in rows]
    if family in ("f9", "f10", "f11", "f12", "f14"):
        return _syntax_rows(record, family, res, config.srl_fallback)
    if family == "f13":
        return _layer_values(record, "chunks", "f13")
    if family == "f15":
        return [{"f15": sorted(tags) or ["none"]} for tags in dependency_flags(record)]
    if family == "f16":
        return _layer_values(record, "ner", "f16")
    if family == "f17":
        lemmas = record.lemmas or (None,) * n
        return [{"f17": lexicon_class(t, l, res.lexicon)} for t, l in zip(toks, lemmas)]
    if family in ("f18", "f19"):
        layer = "verb_cluster" if family == "f18" else "frame"
        values = getattr(record, layer)
        if values is not None:
            return [{family: v} for v in values]
        table = res.verb_clusters if family == "f18" else res.frames
        if record.pos is None or not table:
            raise MissingLayer(f"record has no {layer} layer and no lookup map applies")
        lemmas = record.lemmas or toks
        return [
            {family: table.get(l.lower(), table.get(t.lower(), "none")) if p.startswith("VB") else "none"}
            for t, l, p in zip(toks, lemmas, record.pos)
        ]
    raise ValueError(f"unknown family {family}")


def assemble_attributes(
    record: SentenceRecord, config: FeatureConfig, resources: FeatureResources | None = None
) -> AttributeMatrix:
    res = resources or FeatureResources()
    n = len(record)
    merged: list[list[tuple[str, str]]] = [[] for _ in range(n)]
    names: list[str] = []
    for family in FAMILIES:
        if family not in config.families:
            continue
        try:
            rows = _family_rows(record, family, config, res)
        except MissingLayer:
            if config.strict:
                raise
            default = _FAMILY_NAMES.get(family, (family,))
            rows = _absent(n, default)
        for i, row in enumerate(rows):
            for name, value in row.items():
                if name not in names:
                    names.append(name)
                if isinstance(value, list):
                    merged[i].extend((name, v) for v in value)
                else:
                    merged[i].append((name, value))
    return AttributeMatrix(tuple(names), merged)
