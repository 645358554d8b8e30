"""
Run report schemas
"""

from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from nbpractice.schemas.findings import Finding
from nbpractice.schemas.metrics import NotebookMetrics
from nbpractice.schemas.summary import CorpusSummary

SCHEMA_VERSION = 1

# Bumped whenever the markdown stripping rule list changes
MARKDOWN_RULES_VERSION = 1

QUARTILE_METHOD = "linear interpolation at rank (n-1)p"


class NotebookErrorInfo(BaseModel):
    """Why a notebook produced no metrics"""
    type: str
    message: str


class NotebookResult(BaseModel):
    """Outcome of analysing one notebook"""
    path: str
    content_hash: Optional[str] = None
    metrics: Optional[NotebookMetrics] = None
    findings: List[Finding] = Field(default_factory=list)
    error: Optional[NotebookErrorInfo] = None


class DedupEntry(BaseModel):
    """A notebook dropped because an identical file was kept"""
    dropped: str
    kept: str
    content_hash: str


class ReportHeader(BaseModel):
    """Conventions a reader needs to compare two reports"""
    schema_version: int = SCHEMA_VERSION
    tool_version: str
    config_digest: str
    test_profile: str
    quartile_method: str = QUARTILE_METHOD
    markdown_rules_version: int = MARKDOWN_RULES_VERSION
    histogram_bins: str = "10 equal-width bins over [0,1], last bin right-closed"


class RunReport(BaseModel):
    """Everything one run produced"""
    header: ReportHeader
    notebooks: List[NotebookResult] = Field(default_factory=list)
    summaries: List[CorpusSummary] = Field(default_factory=list)
    dedup_log: List[DedupEntry] = Field(default_factory=list)
    timing: Optional[Dict[str, float]] = None

    @property
    def failed(self) -> List[NotebookResult]:
        return [result for result in self.notebooks if result.error is not None]
