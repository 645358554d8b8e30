"""
Per-notebook measurement schemas
"""

from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from nbpractice.schemas.notebook import CellStatus


class Heading(BaseModel):
    """A markdown heading"""
    level: int = Field(..., ge=1, le=6)
    text: str
    cell_index: int = Field(..., ge=0)

    model_config = ConfigDict(frozen=True)


class StatusPosition(BaseModel):
    """Position of a code cell together with its execution status"""
    fraction: float = Field(..., ge=0.0, le=1.0)
    status: CellStatus

    model_config = ConfigDict(frozen=True)


class NotebookMetrics(BaseModel):
    """
    Every per-notebook measure the corpus summary aggregates.

    Fields owned by a disabled or inapplicable best practice stay None and
    the practice id is listed in `skipped`.
    """
    path: str
    kernel_language: Optional[str] = None

    # Cell inventory
    code_cells: int = Field(..., ge=0)
    md_cells: int = Field(..., ge=0)
    raw_cells: int = Field(..., ge=0)
    executed: bool
    outputs_without_counter: bool = False

    # BP4
    import_positions: Optional[List[float]] = None
    imports_first_third_fraction: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    bp4_compliant: Optional[bool] = None

    # BP5
    top_to_bottom: Optional[bool] = None

    # BP6
    has_function_def: Optional[bool] = None
    has_class_def: Optional[bool] = None
    has_local_import: Optional[bool] = Field(default=None, description="None without file-system context")

    # BP7
    has_test_import: Optional[bool] = None

    # BP9
    lint_category_failed: Optional[Dict[str, bool]] = None
    lint_counts: Optional[Dict[str, int]] = None

    # BP11
    has_markdown: Optional[bool] = None
    meaningful_md_words: Optional[int] = Field(default=None, ge=0)
    meaningful_md_lines: Optional[int] = Field(default=None, ge=0)
    md_cell_positions: Optional[List[float]] = None
    code_cell_positions: Optional[List[float]] = None

    # BP12
    md_heading_count: Optional[int] = Field(default=None, ge=0)
    md_heading_words: Optional[int] = Field(default=None, ge=0)
    heading_word_counts: Optional[List[int]] = None

    # BP13
    empty_cells: Optional[int] = Field(default=None, ge=0)
    non_executed_cells: Optional[int] = Field(default=None, ge=0)
    cell_status_positions: Optional[List[StatusPosition]] = None

    # BP14
    total_lines: Optional[int] = Field(default=None, ge=0)
    code_lines: Optional[int] = Field(default=None, ge=0)
    lines_per_cell: Optional[List[int]] = None
    lines_per_code_cell: Optional[List[int]] = None
    lines_per_md_cell: Optional[List[int]] = None

    skipped: List[str] = Field(default_factory=list)

    model_config = ConfigDict(frozen=True)

    @property
    def cells(self) -> int:
        return self.code_cells + self.md_cells + self.raw_cells
