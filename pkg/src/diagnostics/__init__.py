"""Comparison tables, rate fits and closeness checks."""
from src.diagnostics.models import ClosenessRow, ComparisonRow, SlopeSummary, SweepRow
from src.diagnostics.report import write_table
from src.diagnostics.service import (
    SpectrumService,
    bari_closeness,
    compare,
    compute_records,
    enclosure_violations,
    slope_fit,
    summarize,
)

__all__ = [
    "ClosenessRow",
    "ComparisonRow",
    "SlopeSummary",
    "SweepRow",
    "write_table",
    "SpectrumService",
    "bari_closeness",
    "compare",
    "compute_records",
    "enclosure_violations",
    "slope_fit",
    "summarize",
]
