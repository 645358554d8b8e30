"""
Notebook parsing and cell classification
"""

import copy
import hashlib
import json
import logging
from typing import Any, Dict, List, Optional, Union

from nbformat.reader import NotJSONError, parse_json

from nbpractice.core.exceptions import (
    IndexOutOfRange,
    MalformedJson,
    NotACodeCell,
    NotANotebook,
    UnsupportedFormat,
)
from nbpractice.schemas.notebook import Cell, CellKind, CellStatus, Notebook, OutputKind

logger = logging.getLogger(__name__)

MIN_NBFORMAT = 4

_OUTPUT_KINDS = {
    "stream": OutputKind.STREAM,
    "display_data": OutputKind.DISPLAY,
    "update_display_data": OutputKind.DISPLAY,
    "execute_result": OutputKind.EXECUTE_RESULT,
    "error": OutputKind.ERROR,
}


def normalize_source(source: Union[str, List[str], None]) -> List[str]:
    """Split an nbformat source (string or list of strings) into lines without newlines"""
    if source is None:
        return []
    text = source if isinstance(source, str) else "".join(source)
    if not text:
        return []
    lines = text.split("\n")
    if lines[-1] == "":
        lines.pop()
    return [line.rstrip("\r") for line in lines]


def join_source(lines: List[str]) -> List[str]:
    """Inverse of normalize_source, in nbformat's list-of-lines form"""
    text = "\n".join(lines)
    if lines and lines[-1] == "":
        text += "\n"
    parts = text.split("\n")
    joined = [part + "\n" for part in parts[:-1]]
    if parts[-1]:
        joined.append(parts[-1])
    return joined


def content_hash(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _kernel_language(metadata: Any) -> Optional[str]:
    if not isinstance(metadata, dict):
        return None
    kernelspec = metadata.get("kernelspec")
    if isinstance(kernelspec, dict) and isinstance(kernelspec.get("language"), str):
        return kernelspec["language"]
    language_info = metadata.get("language_info")
    if isinstance(language_info, dict) and isinstance(language_info.get("name"), str):
        return language_info["name"]
    return None


def _parse_cell(raw_cell: Any, index: int, path: str) -> Cell:
    if not isinstance(raw_cell, dict):
        raise NotANotebook(path, f"cell {index} is not an object")

    cell_type = raw_cell.get("cell_type")
    try:
        kind = CellKind(cell_type)
    except ValueError:
        raise NotANotebook(path, f"cell {index} has invalid cell_type {cell_type!r}")

    source = raw_cell.get("source", "")
    if not isinstance(source, (str, list)) or (
        isinstance(source, list) and not all(isinstance(part, str) for part in source)
    ):
        raise NotANotebook(path, f"cell {index} has a malformed source")

    execution_count = None
    output_kinds: List[OutputKind] = []
    if kind == CellKind.CODE:
        execution_count = raw_cell.get("execution_count")
        if execution_count is not None and (
            isinstance(execution_count, bool) or not isinstance(execution_count, int) or execution_count < 0
        ):
            raise NotANotebook(path, f"cell {index} has invalid execution_count {execution_count!r}")
        outputs = raw_cell.get("outputs") or []
        if isinstance(outputs, list):
            for output in outputs:
                if isinstance(output, dict) and output.get("output_type") in _OUTPUT_KINDS:
                    output_kinds.append(_OUTPUT_KINDS[output["output_type"]])

    return Cell(
        kind=kind,
        source_lines=normalize_source(source),
        execution_count=execution_count,
        output_kinds=output_kinds,
        index=index,
    )


def parse_notebook(data: bytes, path: str) -> Notebook:
    """
    Parse raw `.ipynb` bytes into a Notebook

    Raises:
        MalformedJson: content is not UTF-8 JSON
        UnsupportedFormat: nbformat missing or older than 4
        NotANotebook: no cells array, or a cell that cannot be read
    """
    try:
        text = data.decode("utf-8")
        nb_dict = parse_json(text)
    except (UnicodeDecodeError, NotJSONError) as e:
        raise MalformedJson(path, f"not valid UTF-8 JSON ({e.__class__.__name__})") from e

    if not isinstance(nb_dict, dict):
        raise NotANotebook(path, "top-level JSON value is not an object")

    major = nb_dict.get("nbformat")
    if isinstance(major, bool) or not isinstance(major, int):
        raise UnsupportedFormat(path, "missing nbformat version")
    if major < MIN_NBFORMAT:
        raise UnsupportedFormat(path, f"nbformat {major} is older than {MIN_NBFORMAT}")

    raw_cells = nb_dict.get("cells")
    if not isinstance(raw_cells, list):
        raise NotANotebook(path, "no cells array")

    cells = [_parse_cell(raw_cell, index, path) for index, raw_cell in enumerate(raw_cells)]
    logger.debug(f"Parsed {path}: {len(cells)} cells")

    return Notebook(
        path=path,
        nbformat_major=major,
        kernel_language=_kernel_language(nb_dict.get("metadata")),
        cells=cells,
        content_hash=content_hash(data),
        raw=nb_dict,
    )


def serialize_notebook(nb: Notebook) -> str:
    """Write normalized cells back into the original JSON, other fields untouched"""
    document: Dict[str, Any] = copy.deepcopy(nb.raw) if nb.raw else {"nbformat": nb.nbformat_major}
    raw_cells = document.get("cells") if isinstance(document.get("cells"), list) else []
    cells = []
    for position, cell in enumerate(nb.cells):
        raw_cell = raw_cells[position] if position < len(raw_cells) else {}
        raw_cell = dict(raw_cell)
        raw_cell["cell_type"] = cell.kind.value
        raw_cell["source"] = join_source(cell.source_lines)
        if cell.kind == CellKind.CODE:
            raw_cell["execution_count"] = cell.execution_count
        cells.append(raw_cell)
    document["cells"] = cells
    return json.dumps(document, indent=1, sort_keys=True, ensure_ascii=False) + "\n"


def cell_status(cell: Cell) -> CellStatus:
    """Executed, non-executed or empty; whitespace-only source counts as empty"""
    if cell.kind != CellKind.CODE:
        raise NotACodeCell(f"Cell {cell.index} is a {cell.kind.value} cell")
    if cell.is_blank:
        return CellStatus.EMPTY
    if cell.execution_count is not None:
        return CellStatus.EXECUTED
    return CellStatus.NON_EXECUTED


def execution_sequence(nb: Notebook) -> List[Optional[int]]:
    """Execution counters of non-empty code cells in document order"""
    return [cell.execution_count for cell in nb.code_cells if not cell.is_blank]


def cell_position_fraction(index: int, n_code_cells: int) -> float:
    """Relative position of a cell: 0.0 first, 1.0 last"""
    if not 0 <= index < n_code_cells:
        raise IndexOutOfRange(f"Index {index} outside 0..{n_code_cells - 1}")
    if n_code_cells > 1:
        return index / (n_code_cells - 1)
    return 0.0
