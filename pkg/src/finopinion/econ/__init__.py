from .mlogit import MlogitFit, RankDeficient, Separation, SingularInformation, fit_mlogit, sandwich_cov, wald_p
from .panel import (
    CONTROLS, AlignmentError, Design, DuplicateKey, EarningsRow, FirmYear, MergeReport, design_matrix,
    merge_firm_years, read_earnings, write_earnings,
)
from .rank import RANK_TABLE, RankResult, rank_fit, rank_mwe
from .sue import DegenerateSeries, MissingSue, categorize, compute_sue

__all__ = [
    "CONTROLS", "RANK_TABLE", "AlignmentError", "DegenerateSeries", "Design", "DuplicateKey", "EarningsRow",
    "FirmYear", "MergeReport", "MissingSue", "MlogitFit", "RankDeficient", "RankResult", "Separation",
    "SingularInformation", "categorize", "compute_sue", "design_matrix", "fit_mlogit", "merge_firm_years",
    "rank_fit", "rank_mwe", "read_earnings", "sandwich_cov", "wald_p", "write_earnings",
]
