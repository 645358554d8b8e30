"""
Pydantic schemas for notebooks, scans, metrics and reports
"""

from .findings import Finding, Severity, FailSeverity, LintCategory, StripReason
from .notebook import Cell, CellKind, CellStatus, Notebook, OutputKind
from .script import (
    ExtractedScript, MapEntry, StrippedRecord,
    ImportRecord, DefRecord, DefKind, ImportOrigin, LintFinding,
)
from .metrics import Heading, NotebookMetrics, StatusPosition
from .registry import RegistryEntry, Theme
from .corpus import CorpusIndex, CorpusRun
from .summary import CorpusSummary, FiveNumber, Histogram, Measure, Rate
from .report import NotebookResult, RunReport, DedupEntry, ReportHeader
from .api import NotebookPayload, StatsRequest, StatsResponse, ExtractResponse

__all__ = [
    "Finding", "Severity", "FailSeverity", "LintCategory", "StripReason",
    "Cell", "CellKind", "CellStatus", "Notebook", "OutputKind",
    "ExtractedScript", "MapEntry", "StrippedRecord",
    "ImportRecord", "DefRecord", "DefKind", "ImportOrigin", "LintFinding",
    "Heading", "NotebookMetrics", "StatusPosition",
    "RegistryEntry", "Theme", "CorpusIndex", "CorpusRun",
    "CorpusSummary", "FiveNumber", "Histogram", "Measure", "Rate",
    "NotebookResult", "RunReport", "DedupEntry", "ReportHeader",
    "NotebookPayload", "StatsRequest", "StatsResponse", "ExtractResponse",
]
