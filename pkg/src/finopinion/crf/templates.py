"""Feature templates: conjunctions of (attribute, offset) instantiated per position."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from ..features import AttributeMatrix

BOS = "__BOS__"
EOS = "__EOS__"
WILDCARD = "*"


class UnknownAttribute(KeyError):
    pass


@dataclass(frozen=True)
class FeatureTemplate:
    """Conjuncts of ``(attribute, offset)``.

    An attribute name matches itself and any ``name.sub`` attribute, so
    ``"f3"`` covers ``f3.initcap`` and ``f3.allcaps``; ``"*"`` matches every
    attribute in the matrix.
    """

    conjuncts: tuple[tuple[str, int], ...]

    def __post_init__(self):
        if not self.conjuncts:
            raise ValueError("a template needs at least one conjunct")
        object.__setattr__(self, "conjuncts", tuple((str(n), int(o)) for n, o in self.conjuncts))

    def to_json(self) -> list:
        return [[n, o] for n, o in self.conjuncts]

    @classmethod
    def from_json(cls, obj) -> "FeatureTemplate":
        return cls(tuple((n, o) for n, o in obj))


def default_templates(window: int = 2) -> list[FeatureTemplate]:
    """Every attribute at every offset in ``-window..+window``."""
    return [FeatureTemplate(((WILDCARD, k),)) for k in range(-window, window + 1)]


def _resolve(name: str, names: Sequence[str]) -> list[str]:
    if name == WILDCARD:
        return list(names)
    return [n for n in names if n == name or n.startswith(name + ".")]


def compile_features(
    matrix: AttributeMatrix, templates: Sequence[FeatureTemplate], window: int | None = 2
) -> list[list[str]]:
    """Instantiated feature strings per position, deduplicated in first-seen order.

    Offsets that fall outside the sentence produce a boundary value
    (``__BOS__`` / ``__EOS__``) for that conjunct.
    """
    n = len(matrix)
    if n < 1:
        raise ValueError("cannot compile an empty sentence")
    resolved = []
    for tpl in templates:
        options = []
        for name, offset in tpl.conjuncts:
            if window is not None and abs(offset) > window:
                raise ValueError(f"offset {offset} outside window {window}")
            names = _resolve(name, matrix.names)
            if not names:
                raise UnknownAttribute(f"template attribute {name!r} not in matrix {matrix.names}")
            options.append([(nm, offset) for nm in names])
        resolved.append(options)

    table = []
    for row in matrix.rows:
        values: dict[str, list[str]] = {}
        for name, value in row:
            values.setdefault(name, []).append(value)
        table.append(values)

    out = []
    for t in range(n):
        seen: dict[str, None] = {}
        for options in resolved:
            for combo in product(*options):
                parts = []
                for name, offset in combo:
                    u = t + offset
                    if u < 0:
                        vals = [BOS]
                    elif u >= n:
                        vals = [EOS]
                    else:
                        vals = table[u].get(name, [])
                    parts.append([f"{name}[{offset}]={v}" for v in vals])
                for pieces in product(*parts):
                    seen.setdefault("|".join(pieces), None)
        out.append(list(seen))
    return out
