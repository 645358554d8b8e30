"""
Diagnostic schemas shared by the check engine and the report
"""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field


class Severity(str, Enum):
    """Finding severities, lowest first"""
    INFO = "info"
    WARNING = "warning"
    ERROR = "error"

    @property
    def rank(self) -> int:
        return _SEVERITY_RANK[self.value]


class FailSeverity(str, Enum):
    """Lowest severity that fails a run (`none` never fails)"""
    INFO = "info"
    WARNING = "warning"
    ERROR = "error"
    NONE = "none"


_SEVERITY_RANK = {"info": 0, "warning": 1, "error": 2}


class LintCategory(str, Enum):
    """Lint check categories; the bridge folds fatal into error"""
    CONVENTION = "convention"
    WARNING = "warning"
    ERROR = "error"
    REFACTOR = "refactor"


class StripReason(str, Enum):
    """Notebook-specific rewrites applied during extraction"""
    LINE_MAGIC = "line_magic"
    CELL_MAGIC = "cell_magic"
    SHELL_ESCAPE = "shell_escape"
    SHELL_ASSIGNMENT = "shell_assignment"
    INTROSPECTION = "introspection"


class Finding(BaseModel):
    """One diagnostic located at a notebook cell line (or the whole notebook)"""
    check_id: str = Field(..., description="Check identifier, e.g. trailing-whitespace")
    bp_id: str = Field(..., description="Best practice the check belongs to")
    severity: Severity
    cell_index: Optional[int] = Field(default=None, ge=0, description="Notebook cell, None for notebook-level")
    cell_line: Optional[int] = Field(default=None, ge=0, description="0-based line inside the cell")
    message: str

    model_config = ConfigDict(frozen=True)

    def sort_key(self):
        return (
            -1 if self.cell_index is None else self.cell_index,
            -1 if self.cell_line is None else self.cell_line,
            self.check_id,
            self.message,
        )
