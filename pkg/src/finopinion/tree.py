"""Penn-style bracketed constituency trees with token-aligned leaves."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache


class MalformedTree(ValueError):
    pass


@dataclass(eq=False)
class Node:
    label: str
    children: list["Node"] = field(default_factory=list)
    word: str | None = None
    parent: "Node | None" = field(default=None, repr=False)
    start: int = -1
    end: int = -1

    @property
    def is_preterminal(self) -> bool:
        return self.word is not None

    @property
    def category(self) -> str:
        # strip function tags / indices: NP-SBJ-1 -> NP, but keep -NONE- and -LRB-
        if self.label.startswith("-"):
            return self.label
        return re.split(r"[-=]", self.label, maxsplit=1)[0] or self.label

    def ancestors(self):
        node = self.parent
        while node is not None:
            yield node
            node = node.parent

    def to_string(self) -> str:
        if self.is_preterminal:
            return f"({self.label} {self.word})"
        return "(" + self.label + " " + " ".join(c.to_string() for c in self.children) + ")"


_TOKEN_RE = re.compile(r"\(|\)|[^\s()]+")


class ConstituencyTree:
    """A parsed tree; ``leaves[i]`` is the preterminal node of token ``i``."""

    def __init__(self, root: Node):
        self.root = root
        self.leaves: list[Node] = []
        self._index(root)

    def _index(self, node: Node) -> None:
        if node.is_preterminal:
            node.start = len(self.leaves)
            node.end = node.start + 1
            self.leaves.append(node)
            return
        for child in node.children:
            child.parent = node
            self._index(child)
        node.start = node.children[0].start
        node.end = node.children[-1].end

    def __len__(self) -> int:
        return len(self.leaves)

    @property
    def words(self) -> list[str]:
        return [leaf.word for leaf in self.leaves]

    @property
    def tags(self) -> list[str]:
        return [leaf.label for leaf in self.leaves]

    def nodes(self):
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def lowest_common_ancestor(self, a: Node, b: Node) -> Node:
        seen = {id(a)}
        seen.update(id(n) for n in a.ancestors())
        if id(b) in seen:
            return b
        for node in b.ancestors():
            if id(node) in seen:
                return node
        raise MalformedTree("nodes do not share a root")

    def to_string(self) -> str:
        return self.root.to_string()


def _parse_tokens(tokens: list[str], pos: int) -> tuple[Node, int]:
    if tokens[pos] != "(":
        raise MalformedTree(f"expected '(' at token {pos}")
    pos += 1
    if pos >= len(tokens):
        raise MalformedTree("unexpected end of tree")
    label = ""
    if tokens[pos] not in "()":
        label = tokens[pos]
        pos += 1
    if pos < len(tokens) and tokens[pos] not in "()":
        word = tokens[pos]
        pos += 1
        if pos >= len(tokens) or tokens[pos] != ")":
            raise MalformedTree(f"preterminal {label!r} has more than one word")
        if not label:
            raise MalformedTree("preterminal without a tag")
        return Node(label=label, word=word), pos + 1
    children = []
    while pos < len(tokens) and tokens[pos] == "(":
        child, pos = _parse_tokens(tokens, pos)
        children.append(child)
    if pos >= len(tokens) or tokens[pos] != ")":
        raise MalformedTree("unbalanced brackets")
    if not children:
        raise MalformedTree(f"empty constituent {label!r}")
    if not label:
        # "( (S ...))" wrapper as emitted by some treebank dumps
        if len(children) == 1:
            return children[0], pos + 1
        label = "ROOT"
    return Node(label=label, children=children), pos + 1


@lru_cache(maxsize=4096)
def parse_tree(text: str) -> ConstituencyTree:
    """Parse a bracketed string. Cached: callers must treat the result as read-only."""
    tokens = _TOKEN_RE.findall(text)
    if not tokens:
        raise MalformedTree("empty tree string")
    root, pos = _parse_tokens(tokens, 0)
    if pos != len(tokens):
        raise MalformedTree("trailing material after tree")
    return ConstituencyTree(root)
