"""Standardized unexpected earnings and the three-way outcome."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np


class DegenerateSeries(ValueError):
    pass


class MissingSue(ValueError):
    pass


def unexpected_earnings(earnings: Sequence[float], years: Sequence[int] | None = None) -> np.ndarray:
    """``E_t - E_{t-1}``; NaN for the first year, after a gap in ``years``, or next to a missing value."""
    e = np.asarray(earnings, dtype=float)
    ue = np.full(e.shape, np.nan)
    if e.size > 1:
        ue[1:] = e[1:] - e[:-1]
        if years is not None:
            yrs = np.asarray(years)
            ue[1:][np.diff(yrs) != 1] = np.nan
    return ue


def compute_sue(earnings: Sequence[float], years: Sequence[int] | None = None) -> np.ndarray:
    """SUE per year of one firm's earnings history (NaN where no change is defined).

    Unexpected earnings are standardized by the mean and the sample (n-1)
    standard deviation of all the firm's available changes.
    """
    ue = unexpected_earnings(earnings, years)
    ok = np.isfinite(ue)
    if ok.sum() < 2:
        raise DegenerateSeries(f"need at least 2 earnings changes, have {int(ok.sum())}")
    mu = ue[ok].mean()
    sd = ue[ok].std(ddof=1)
    if not sd > 1e-12 * max(1.0, abs(mu)):
        raise DegenerateSeries("earnings changes have zero variance")
    return (ue - mu) / sd


def categorize(sue: float, tau: float) -> int:
    """+1 above ``tau``, -1 below ``-tau``, 0 otherwise (the boundary itself is 0)."""
    if not tau > 0:
        raise ValueError("tau must be positive")
    if sue is None or not math.isfinite(sue):
        raise MissingSue("SUE is missing")
    if sue > tau:
        return 1
    if sue < -tau:
        return -1
    return 0
