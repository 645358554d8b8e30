"""
Code extraction: concatenate code cells into one script and map it back
"""

import bisect
import logging
import re
from typing import Iterable, List, Optional, Set, Tuple

from nbpractice.core.exceptions import UnmappedLine
from nbpractice.schemas.findings import StripReason
from nbpractice.schemas.notebook import Notebook
from nbpractice.schemas.script import ExtractedScript, MapEntry, StrippedRecord
from nbpractice.utils.linescan import mask_line

logger = logging.getLogger(__name__)

ALL_RULES: Set[StripReason] = set(StripReason)

_SHELL_ASSIGNMENT = re.compile(r"^\s*[A-Za-z_][\w.]*(\s*,\s*[A-Za-z_][\w.]*)*\s*=\s*!")
_MAGIC_ASSIGNMENT = re.compile(r"^\s*[A-Za-z_][\w.]*(\s*,\s*[A-Za-z_][\w.]*)*\s*=\s*%")
_INTROSPECTION = re.compile(r"(?:^|[^\w.])[A-Za-z_][\w.]*\?{1,2}$")


def _classify_line(line: str, masked: str, rules: Set[StripReason]) -> Optional[StripReason]:
    stripped = line.lstrip()
    if stripped.startswith("%"):
        return StripReason.LINE_MAGIC if StripReason.LINE_MAGIC in rules else None
    if stripped.startswith("!"):
        return StripReason.SHELL_ESCAPE if StripReason.SHELL_ESCAPE in rules else None
    if StripReason.SHELL_ASSIGNMENT in rules and _SHELL_ASSIGNMENT.match(masked):
        return StripReason.SHELL_ASSIGNMENT
    if StripReason.LINE_MAGIC in rules and _MAGIC_ASSIGNMENT.match(masked):
        return StripReason.LINE_MAGIC
    if StripReason.INTROSPECTION in rules and _INTROSPECTION.search(masked.rstrip()):
        return StripReason.INTROSPECTION
    return None


def strip_cell(
    lines: List[str],
    cell_index: int = 0,
    rules: Optional[Iterable[StripReason]] = None,
) -> Tuple[List[str], List[StrippedRecord]]:
    """
    Blank notebook-specific statements in one code cell

    Line count is preserved: a rewritten line becomes an empty line.

    Args:
        lines: cell source lines
        cell_index: notebook index of the cell, carried into the records
        rules: enabled rewrite rules (default: all)
    """
    enabled = ALL_RULES if rules is None else set(rules)
    records: List[StrippedRecord] = []

    if lines and StripReason.CELL_MAGIC in enabled and lines[0].lstrip().startswith("%%"):
        records = [
            StrippedRecord(cell_index=cell_index, cell_line=i, reason=StripReason.CELL_MAGIC)
            for i in range(len(lines))
        ]
        return [""] * len(lines), records

    cleaned: List[str] = []
    state: Optional[str] = None
    for i, line in enumerate(lines):
        starts_in_string = state is not None
        masked, state = mask_line(line, state)
        reason = None if starts_in_string else _classify_line(line, masked, enabled)
        if reason is None:
            cleaned.append(line)
        else:
            cleaned.append("")
            records.append(StrippedRecord(cell_index=cell_index, cell_line=i, reason=reason))
    return cleaned, records


def extract_script(nb: Notebook, rules: Optional[Iterable[StripReason]] = None) -> ExtractedScript:
    """
    Concatenate stripped code cells, one blank separator line between cells

    Separator lines and blanked lines get no map entry.
    """
    enabled = ALL_RULES if rules is None else set(rules)
    text_lines: List[str] = []
    entries: List[MapEntry] = []
    stripped: List[StrippedRecord] = []

    for ordinal, cell in enumerate(nb.code_cells):
        if ordinal > 0:
            text_lines.append("")
        cleaned, records = strip_cell(cell.source_lines, cell.index, enabled)
        blanked = {record.cell_line for record in records}
        for cell_line, text in enumerate(cleaned):
            if cell_line not in blanked:
                entries.append(
                    MapEntry(script_line=len(text_lines), cell_index=cell.index, cell_line=cell_line)
                )
            text_lines.append(text)
        stripped.extend(records)

    if stripped:
        logger.debug(f"{nb.path}: blanked {len(stripped)} notebook-specific lines")
    return ExtractedScript(text_lines=text_lines, map_entries=entries, stripped=stripped)


def map_line(script: ExtractedScript, script_line: int) -> Tuple[int, int]:
    """(cell_index, cell_line) of a script line"""
    lines = script.mapped_lines
    position = bisect.bisect_left(lines, script_line)
    if position == len(lines) or lines[position] != script_line:
        raise UnmappedLine(script_line)
    entry = script.map_entries[position]
    return entry.cell_index, entry.cell_line


def is_mapped(script: ExtractedScript, script_line: int) -> bool:
    try:
        map_line(script, script_line)
    except UnmappedLine:
        return False
    return True
