"""Five-level discriminative rank from the sign and significance of the two logit equations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .mlogit import MlogitFit, wald_p

POS, NEG, NSS = "+", "-", "NSS"
RANKS = ("1st", "2nd", "3rd", "4th", "5th")

# (sign in the Y=-1 equation, sign in the Y=+1 equation) -> rank
RANK_TABLE: dict[tuple[str, str], str] = {
    (POS, NEG): "1st", (NEG, POS): "1st",
    (POS, NSS): "2nd", (NSS, POS): "2nd",
    (NEG, NSS): "3rd", (NSS, NEG): "3rd",
    (POS, POS): "4th", (NEG, NEG): "4th",
    (NSS, NSS): "5th",
}


def significance(coef: float, p: float, sig_level: float = 0.05) -> str:
    if p < sig_level:
        return POS if coef > 0 else NEG
    return NSS


def rank_mwe(coef_neg: float, p_neg: float, coef_pos: float, p_pos: float, sig_level: float = 0.05) -> str:
    key = (significance(coef_neg, p_neg, sig_level), significance(coef_pos, p_pos, sig_level))
    return RANK_TABLE[key]


@dataclass(frozen=True)
class RankResult:
    name: str
    coef_neg: float
    p_neg: float
    coef_pos: float
    p_pos: float
    rank: str


def rank_fit(
    fit: MlogitFit, sig_level: float = 0.05, flavor: str = "model", names: Sequence[str] | None = None,
) -> list[RankResult]:
    """One row per column of the fit; ``names`` restricts the rows (intercept included only on request)."""
    p = wald_p(fit, flavor)
    out = []
    for k, col in enumerate(fit.columns):
        if names is not None and col not in names:
            continue
        cn, cp = float(fit.params[k, 0]), float(fit.params[k, 1])
        pn, pp = float(p[k, 0]), float(p[k, 1])
        out.append(RankResult(col, cn, pn, cp, pp, rank_mwe(cn, pn, cp, pp, sig_level)))
    return out


def report_rows(results: Sequence[RankResult], polarity: Mapping[str, str] | None = None) -> list[list[str]]:
    """Header plus one row per variable; a polarity column is appended when a lexicon is given."""
    header = ["name", "coef_neg", "p_neg", "coef_pos", "p_pos", "R(w)"]
    if polarity is not None:
        header.append("polarity")
    rows = [header]
    for r in results:
        row = [r.name, f"{r.coef_neg:.6g}", f"{r.p_neg:.6g}", f"{r.coef_pos:.6g}", f"{r.p_pos:.6g}", r.rank]
        if polarity is not None:
            row.append(polarity.get(r.name, ""))
        rows.append(row)
    return rows
