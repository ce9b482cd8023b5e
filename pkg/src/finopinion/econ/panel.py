"""Earnings ingestion, firm-year merge and regression design."""

from __future__ import annotations

import csv
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .sue import DegenerateSeries, categorize, compute_sue

CONTROLS = ("lag_sue", "bm", "roe", "accruals", "size", "dividend", "z_score", "asset_growth")
EARNINGS_COLUMNS = ("company_id", "fiscal_year", "earnings", *CONTROLS)


class DuplicateKey(ValueError):
    pass


class AlignmentError(ValueError):
    pass


def doc_id(company_id: str, fiscal_year: int) -> str:
    return f"{company_id}_{fiscal_year}"


@dataclass(frozen=True)
class EarningsRow:
    company_id: str
    fiscal_year: int
    earnings: float | None
    controls: dict[str, float | None]


def _num(text: str | None) -> float | None:
    if text is None or text.strip() == "":
        return None
    value = float(text)
    return value if math.isfinite(value) else None


def read_earnings(path) -> list[EarningsRow]:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        missing = [c for c in ("company_id", "fiscal_year", "earnings") if c not in (reader.fieldnames or ())]
        if missing:
            raise ValueError(f"{path}: earnings file lacks columns {missing}")
        rows = [
            EarningsRow(
                r["company_id"], int(r["fiscal_year"]), _num(r["earnings"]),
                {c: _num(r.get(c)) for c in CONTROLS},
            )
            for r in reader
        ]
    check_unique(rows)
    return rows


def write_earnings(path, rows: Iterable[EarningsRow]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(EARNINGS_COLUMNS)
        for r in rows:
            vals = [r.earnings, *(r.controls.get(c) for c in CONTROLS)]
            w.writerow([r.company_id, r.fiscal_year, *("" if v is None else repr(float(v)) for v in vals)])


def check_unique(rows: Iterable[EarningsRow]) -> None:
    seen = set()
    for r in rows:
        key = (r.company_id, r.fiscal_year)
        if key in seen:
            raise DuplicateKey(f"duplicate earnings row for {key}")
        seen.add(key)


def firm_sue(rows: Sequence[EarningsRow]) -> dict[tuple[str, int], float]:
    """SUE keyed by (company, year); firms with degenerate histories are left out."""
    by_firm: dict[str, list[EarningsRow]] = defaultdict(list)
    for r in rows:
        by_firm[r.company_id].append(r)
    out = {}
    for cid in sorted(by_firm):
        hist = sorted(by_firm[cid], key=lambda r: r.fiscal_year)
        e = [np.nan if r.earnings is None else r.earnings for r in hist]
        try:
            sue = compute_sue(e, [r.fiscal_year for r in hist])
        except DegenerateSeries:
            continue
        for r, s in zip(hist, sue):
            if math.isfinite(s):
                out[(cid, r.fiscal_year)] = float(s)
    return out


@dataclass(frozen=True)
class FirmYear:
    company_id: str
    fiscal_year: int
    earnings: float
    controls: dict[str, float]
    sue: float
    y: int

    @property
    def doc_id(self) -> str:
        return doc_id(self.company_id, self.fiscal_year)


@dataclass
class MergeReport:
    filings: int = 0
    earnings_rows: int = 0
    joined: int = 0
    kept: int = 0
    dropped: dict[str, int] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"filings": self.filings, "earnings_rows": self.earnings_rows, "joined": self.joined,
                "kept": self.kept, "dropped": dict(sorted(self.dropped.items()))}


def merge_firm_years(
    filing_keys: Iterable[tuple[str, int]],
    earnings: Sequence[EarningsRow],
    tau: float,
    controls: Sequence[str] = CONTROLS,
) -> tuple[list[FirmYear], MergeReport]:
    """Inner join of filings with earnings on (company, year), dropping incomplete rows.

    SUE uses each firm's whole earnings history, including years without a filing.
    """
    check_unique(earnings)
    keys = sorted(set((str(c), int(y)) for c, y in filing_keys))
    report = MergeReport(filings=len(keys), earnings_rows=len(earnings))
    sue = firm_sue(earnings)
    index = {(r.company_id, r.fiscal_year): r for r in earnings}
    panel = []

    def drop(reason):
        report.dropped[reason] = report.dropped.get(reason, 0) + 1

    for key in keys:
        row = index.get(key)
        if row is None:
            drop("no_earnings")
            continue
        report.joined += 1
        if key not in sue:
            drop("sue")
            continue
        missing = [c for c in controls if row.controls.get(c) is None]
        if missing:
            drop(missing[0])
            continue
        s = sue[key]
        panel.append(FirmYear(row.company_id, row.fiscal_year, row.earnings,
                              {c: row.controls[c] for c in controls}, s, categorize(s, tau)))
    report.kept = len(panel)
    return panel, report


@dataclass(frozen=True)
class Design:
    X: np.ndarray
    y: np.ndarray
    columns: tuple[str, ...]
    doc_ids: tuple[str, ...]


def design_matrix(
    panel: Sequence[FirmYear],
    weight_docs: Sequence[str],
    W: np.ndarray,
    weight_names: Sequence[str],
    selected: Sequence[str] = (),
    controls: Sequence[str] = CONTROLS,
) -> Design:
    """Controls followed by the weights of ``selected`` expressions; the fitter adds the intercept."""
    row_of: Mapping[str, int] = {d: i for i, d in enumerate(weight_docs)}
    col_of: Mapping[str, int] = {n: j for j, n in enumerate(weight_names)}
    unknown = [s for s in selected if s not in col_of]
    if unknown:
        raise AlignmentError(f"selected expressions missing from the weight matrix: {unknown}")
    X = np.zeros((len(panel), len(controls) + len(selected)))
    for i, fy in enumerate(panel):
        X[i, : len(controls)] = [fy.controls[c] for c in controls]
        if selected:
            if fy.doc_id not in row_of:
                raise AlignmentError(f"document {fy.doc_id} absent from the weight matrix")
            r = row_of[fy.doc_id]
            X[i, len(controls):] = [W[r, col_of[s]] for s in selected]
    y = np.array([fy.y for fy in panel], dtype=int)
    return Design(X, y, tuple(controls) + tuple(selected), tuple(fy.doc_id for fy in panel))
