"""
Notebook document schemas
Cells, their kinds and execution status
"""

from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class CellKind(str, Enum):
    """nbformat cell types"""
    CODE = "code"
    MARKDOWN = "markdown"
    RAW = "raw"


class CellStatus(str, Enum):
    """Execution status of a code cell"""
    EXECUTED = "executed"
    NON_EXECUTED = "non_executed"
    EMPTY = "empty"


class OutputKind(str, Enum):
    """Code cell output types"""
    STREAM = "stream"
    DISPLAY = "display"
    EXECUTE_RESULT = "execute_result"
    ERROR = "error"


class Cell(BaseModel):
    """A single notebook cell with normalized source lines"""
    kind: CellKind
    source_lines: List[str] = Field(default_factory=list)
    execution_count: Optional[int] = Field(default=None, ge=0)
    output_kinds: List[OutputKind] = Field(default_factory=list)
    index: int = Field(..., ge=0, description="0-based document position")

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_code_only_fields(self):
        if self.kind != CellKind.CODE and self.execution_count is not None:
            raise ValueError(f"{self.kind.value} cell {self.index} cannot carry an execution count")
        return self

    @property
    def is_code(self) -> bool:
        return self.kind == CellKind.CODE

    @property
    def is_blank(self) -> bool:
        """No source, or whitespace-only source"""
        return all(not line.strip() for line in self.source_lines)


class Notebook(BaseModel):
    """Parsed nbformat-4 document"""
    path: str
    nbformat_major: int = Field(..., ge=4)
    kernel_language: Optional[str] = None
    cells: List[Cell] = Field(default_factory=list)
    content_hash: str = Field(..., min_length=16, description="sha256 of the raw file bytes")
    raw: Dict[str, Any] = Field(default_factory=dict, exclude=True, repr=False)

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_cell_indices(self):
        for position, cell in enumerate(self.cells):
            if cell.index != position:
                raise ValueError(f"Cell index {cell.index} at position {position}")
        return self

    @property
    def code_cells(self) -> List[Cell]:
        return [cell for cell in self.cells if cell.kind == CellKind.CODE]

    @property
    def markdown_cells(self) -> List[Cell]:
        return [cell for cell in self.cells if cell.kind == CellKind.MARKDOWN]

    @property
    def is_python(self) -> bool:
        """Unknown kernels are treated as Python"""
        return self.kernel_language is None or self.kernel_language.lower().startswith("python")

    @property
    def outputs_without_counter(self) -> bool:
        """Some code cell shows outputs but has no execution counter"""
        return any(
            cell.output_kinds and cell.execution_count is None for cell in self.code_cells
        )
