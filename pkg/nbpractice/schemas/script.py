"""
Extracted script and lexical scan schemas
"""

from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from nbpractice.schemas.findings import LintCategory, StripReason


class StrippedRecord(BaseModel):
    """A notebook-specific line blanked during extraction"""
    cell_index: int = Field(..., ge=0)
    cell_line: int = Field(..., ge=0)
    reason: StripReason

    model_config = ConfigDict(frozen=True)


class MapEntry(BaseModel):
    """Script line -> (cell, in-cell line)"""
    script_line: int = Field(..., ge=0)
    cell_index: int = Field(..., ge=0)
    cell_line: int = Field(..., ge=0)

    model_config = ConfigDict(frozen=True)


class ExtractedScript(BaseModel):
    """Code-cell source concatenated into one script, with its source map"""
    text_lines: List[str] = Field(default_factory=list)
    map_entries: List[MapEntry] = Field(default_factory=list)
    stripped: List[StrippedRecord] = Field(default_factory=list)

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_monotonic_map(self):
        previous = None
        for entry in self.map_entries:
            if entry.script_line >= len(self.text_lines):
                raise ValueError(f"Map entry past end of script: {entry.script_line}")
            if previous is not None:
                if entry.script_line <= previous.script_line:
                    raise ValueError("Map entries must increase in script_line")
                if (entry.cell_index, entry.cell_line) <= (previous.cell_index, previous.cell_line):
                    raise ValueError("Map entries must increase in (cell_index, cell_line)")
            previous = entry
        return self

    @property
    def mapped_lines(self) -> List[int]:
        return [entry.script_line for entry in self.map_entries]


class ImportRecord(BaseModel):
    """One imported module of one import statement"""
    module_path: str = Field(..., min_length=1)
    imported_names: List[str] = Field(default_factory=list)
    is_wildcard: bool = False
    script_line: int = Field(..., ge=0)
    end_line: Optional[int] = Field(default=None, description="Last script line of the statement")
    bound_names: List[str] = Field(default_factory=list, description="Names the statement binds")
    segment: int = Field(default=0, ge=0, description="Index of the statement's top-level ;-separated part")

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_wildcard(self):
        if self.is_wildcard and self.imported_names:
            raise ValueError("Wildcard import cannot list names")
        return self

    @property
    def last_line(self) -> int:
        return self.script_line if self.end_line is None else self.end_line

    @property
    def top_level(self) -> str:
        """First dotted segment, relative dots removed"""
        return self.module_path.lstrip(".").split(".")[0]


class DefKind(str, Enum):
    FUNCTION = "function"
    CLASS = "class"


class DefRecord(BaseModel):
    """A function or class definition line"""
    kind: DefKind
    name: str = Field(..., min_length=1)
    script_line: int = Field(..., ge=0)
    indent: int = Field(..., ge=0)

    model_config = ConfigDict(frozen=True)

    @field_validator("name")
    @classmethod
    def check_identifier(cls, v: str) -> str:
        if not v.isidentifier():
            raise ValueError(f"Not an identifier: {v!r}")
        return v


class ImportOrigin(str, Enum):
    """Where an imported module comes from"""
    LOCAL = "local"
    EXTERNAL_OR_STDLIB = "external_or_stdlib"
    UNKNOWN = "unknown"


class LintFinding(BaseModel):
    """A lint diagnostic on a script line"""
    check_id: str = Field(..., description="Native check id, or ext:<code> from the bridge")
    category: LintCategory
    script_line: Optional[int] = Field(default=None, ge=0, description="None when not tied to a line")
    message: str

    model_config = ConfigDict(frozen=True)

    def sort_key(self):
        return (-1 if self.script_line is None else self.script_line, self.check_id, self.message)
