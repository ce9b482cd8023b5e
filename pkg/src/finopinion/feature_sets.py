"""Named feature sets A..W: the ablation grid of the agent-identification experiments."""

from __future__ import annotations

from .features import FeatureConfig


def _fam(*items) -> frozenset[str]:
    out = set()
    for item in items:
        if isinstance(item, range):
            out.update(f"f{i}" for i in item)
        else:
            out.add(item)
    return frozenset(out)


_FULL = _fam("f1", "f2", range(6, 20))

FEATURE_SETS: dict[str, frozenset[str]] = {
    "A": _fam("f1", "f2"),
    "B": _fam("f1", range(3, 6)),
    "C": _fam("f1", "pos"),
    "D": _fam("f1", "pos", "f16"),
    "E": _fam("f1", "pos", "f15"),
    "F": _fam("f1", "f13"),
    "G": _fam("f1", "f2", "pos", "f13", range(15, 18)),
    "H": _fam(range(1, 6), "pos", "f13", range(15, 18)),
    "I": _fam("f1", "f2", "pos", "f13", range(14, 18)),
    "J": _fam("f1", "f11"),
    "K": _fam("f1", "f10"),
    "L": _fam("f1", "f11", "f12"),
    "M": _fam("f1", "f12"),
    "N": _fam("f1", "f10", "f12"),
    "O": _fam("f1", "f10", "f11"),
    "P": _FULL - {"f15"},
    "Q": _FULL - {"f16"},
    "R": _FULL - {"f12"},
    "S": _FULL - {"f10"},
    "T": _fam("f1", "f2", range(10, 18)),
    "U": _FULL - {"f12", "f15"},
    "V": _FULL,
    "W": _FULL,
}

# W is V trained and evaluated with "target" spans relabelled O
DROPS_TARGET = frozenset({"W"})


def feature_config(name_or_families, srl_fallback: bool = True, strict: bool = False) -> FeatureConfig:
    """A config from a set letter (``"W"``) or an explicit family list (``["f1", "pos"]``)."""
    if isinstance(name_or_families, str):
        if "," in name_or_families:
            return feature_config([f.strip() for f in name_or_families.split(",")], srl_fallback, strict)
        key = name_or_families.upper()
        if key not in FEATURE_SETS:
            raise KeyError(f"unknown feature set {name_or_families!r}; known: {', '.join(FEATURE_SETS)}")
        return FeatureConfig(FEATURE_SETS[key], key, srl_fallback, strict, key in DROPS_TARGET)
    families = frozenset(name_or_families)
    return FeatureConfig(families, "+".join(sorted(families)), srl_fallback, strict)
