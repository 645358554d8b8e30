"""
Corpus index and ingestion run schemas
"""

from typing import Dict, FrozenSet, List

from pydantic import BaseModel, ConfigDict, Field

from nbpractice.schemas.metrics import NotebookMetrics
from nbpractice.schemas.report import DedupEntry, NotebookResult


class CorpusIndex(BaseModel):
    """
    Python source files found next to the ingested notebooks

    `files` holds posix paths of every `.py` file (package markers appear
    as `<dir>/__init__.py`). Without file-system context, import origins
    cannot be resolved.
    """
    files: FrozenSet[str] = Field(default_factory=frozenset)
    has_context: bool = False

    model_config = ConfigDict(frozen=True)

    @classmethod
    def without_context(cls) -> "CorpusIndex":
        return cls(files=frozenset(), has_context=False)


class CorpusRun(BaseModel):
    """Per-notebook results of one ingestion, sorted by path"""
    results: List[NotebookResult] = Field(default_factory=list)
    dedup_log: List[DedupEntry] = Field(default_factory=list)
    timing: Dict[str, float] = Field(default_factory=dict)

    @property
    def metrics(self) -> List[NotebookMetrics]:
        return [result.metrics for result in self.results if result.metrics is not None]
