"""Collins-style head percolation."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .tree import ConstituencyTree, Node

HeadRules = dict[str, list[tuple[str, list[str]]]]

_NP_NOMINALS = ("NN", "NNP", "NNPS", "NNS", "NX", "POS", "JJR")
_PUNCT = {",", ":", ".", "``", "''", "-LRB-", "-RRB-", "#", "$"}


def load_head_rules(path: str | Path | None = None) -> HeadRules:
    """Read a head table; the bundled table is used when ``path`` is None."""
    if path is None:
        text = resources.files("finopinion.data").joinpath("head_rules.tsv").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    rules: HeadRules = {}
    for line in text.splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        parent, direction = parts[0], parts[1]
        if direction not in ("left", "right"):
            raise ValueError(f"bad direction {direction!r} for {parent}")
        cats = parts[2].split() if len(parts) > 2 else []
        rules.setdefault(parent, []).append((direction, cats))
    return rules


DEFAULT_RULES = load_head_rules()


def _scan(children: list[Node], direction: str, cats) -> Node | None:
    ordered = children if direction == "left" else list(reversed(children))
    for cat in cats:
        for child in ordered:
            if child.category == cat:
                return child
    return None


def _np_head(children: list[Node]) -> Node:
    if children[-1].category == "POS":
        return children[-1]
    for direction, cats in (
        ("right", _NP_NOMINALS), ("left", ("NP",)), ("right", ("$", "ADJP", "PRN")),
        ("right", ("CD",)), ("right", ("JJ", "JJS", "RB", "QP")),
    ):
        # every candidate category counts, the first match in scan order wins
        ordered = children if direction == "left" else reversed(children)
        for child in ordered:
            if child.category in cats:
                return child
    return children[-1]


def head_child(node: Node, rules: HeadRules = DEFAULT_RULES) -> Node:
    children = node.children
    if len(children) == 1:
        return children[0]
    if node.category == "NP":
        return _np_head(children)
    for direction, cats in rules.get(node.category, [("left", [])]):
        found = _scan(children, direction, cats)
        if found is not None:
            return found
    direction = rules.get(node.category, [("left", [])])[0][0]
    ordered = children if direction == "left" else list(reversed(children))
    # default: first non-punctuation child from the rule's side
    for child in ordered:
        if child.category not in _PUNCT:
            return child
    return ordered[0]


def head_leaf(node: Node, rules: HeadRules = DEFAULT_RULES) -> Node:
    while not node.is_preterminal:
        node = head_child(node, rules)
    return node


@dataclass(frozen=True)
class HeadInfo:
    index: int
    word: str
    pos: str
    content_index: int | None = None
    content_word: str | None = None
    content_pos: str | None = None


def head_word(tree: ConstituencyTree, node: Node, rules: HeadRules = DEFAULT_RULES) -> HeadInfo:
    """Lexical head of ``node``; for a PP also the head of its NP object."""
    leaf = head_leaf(node, rules)
    info = HeadInfo(leaf.start, leaf.word, leaf.label)
    if node.category == "PP":
        inner = next((c for c in node.children if c.category == "NP"), None)
        if inner is not None:
            c = head_leaf(inner, rules)
            info = HeadInfo(leaf.start, leaf.word, leaf.label, c.start, c.word, c.label)
    return info


def headship_chain(leaf: Node, rules: HeadRules = DEFAULT_RULES) -> list[Node]:
    """The preterminal followed by every ancestor that ``leaf`` heads, bottom-up."""
    chain = [leaf]
    node = leaf
    while node.parent is not None and head_child(node.parent, rules) is node:
        node = node.parent
        chain.append(node)
    return chain
