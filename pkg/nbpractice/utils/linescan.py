"""
Line-oriented quote-state scanning

`mask_line` blanks string interiors (with `x`) and comments (with spaces),
keeping column positions, so that regex checks only see code.
"""

import keyword
import re
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

STRING_FILLER = "x"

_OPENERS = {"(": ")", "[": "]", "{": "}"}
_CLOSERS = {")", "]", "}"}


def mask_line(line: str, open_quote: Optional[str] = None) -> Tuple[str, Optional[str]]:
    """
    Mask string contents and comments on one line

    Args:
        line: raw source line
        open_quote: triple quote still open from a previous line, if any

    Returns:
        (masked line of equal length, triple quote left open at line end)
    """
    out: List[str] = []
    quote = open_quote
    i = 0
    n = len(line)
    while i < n:
        ch = line[i]
        if quote:
            if ch == "\\":
                step = min(2, n - i)
                out.append(STRING_FILLER * step)
                i += step
            elif line.startswith(quote, i):
                out.append(quote)
                i += len(quote)
                quote = None
            else:
                out.append(STRING_FILLER)
                i += 1
            continue
        if ch == "#":
            out.append(" " * (n - i))
            break
        if ch in "\"'":
            triple = ch * 3
            quote = triple if line.startswith(triple, i) else ch
            out.append(quote)
            i += len(quote)
            continue
        out.append(ch)
        i += 1
    # single-quoted strings cannot continue past a plain line end
    if quote is not None and len(quote) == 1:
        quote = None
    return "".join(out), quote


def mask_lines(lines: List[str]) -> List[str]:
    """Mask a block of lines, carrying triple-quote state across them"""
    masked = []
    state: Optional[str] = None
    for line in lines:
        text, state = mask_line(line, state)
        masked.append(text)
    return masked


def bracket_depth_after(masked: str, depth: int = 0) -> int:
    """Net bracket depth after a masked line"""
    for ch in masked:
        if ch in _OPENERS:
            depth += 1
        elif ch in _CLOSERS and depth > 0:
            depth -= 1
    return depth


def top_level_indices(masked: str, target: str) -> List[int]:
    """Positions of `target` outside any bracket"""
    positions = []
    depth = 0
    for i, ch in enumerate(masked):
        if ch in _OPENERS:
            depth += 1
        elif ch in _CLOSERS and depth > 0:
            depth -= 1
        elif ch == target and depth == 0:
            positions.append(i)
    return positions


def split_top_level(lines: List[str], target: str = ";") -> List[str]:
    """
    Raw text of a statement split at `target` outside brackets and strings

    The statement may span several lines; pieces keep their line breaks.
    """
    pieces: List[List[str]] = [[]]
    depth = 0
    for raw, masked in zip(lines, mask_lines(lines)):
        for raw_ch, ch in zip(raw, masked):
            if ch in _OPENERS:
                depth += 1
            elif ch in _CLOSERS and depth > 0:
                depth -= 1
            elif ch == target and depth == 0:
                pieces.append([])
                continue
            pieces[-1].append(raw_ch)
        pieces[-1].append("\n")
    return ["".join(piece) for piece in pieces]


def enclosing_openers(masked: str) -> List[Optional[int]]:
    """Column of the innermost open bracket at every column (None at top level)"""
    stack: List[int] = []
    result: List[Optional[int]] = []
    for i, ch in enumerate(masked):
        if ch in _CLOSERS and stack:
            stack.pop()
        result.append(stack[-1] if stack else None)
        if ch in _OPENERS:
            stack.append(i)
    return result


def is_subscript(masked: str, column: int) -> bool:
    """A `[` right after a name, `)` or `]` opens a subscript, not a list"""
    if masked[column] != "[":
        return False
    before = masked[:column].rstrip()
    if not before:
        return False
    last = before[-1]
    if last in ")]":
        return True
    if not (last.isalnum() or last == "_"):
        return False
    word = re.search(r"\w+$", before).group(0)
    return not keyword.iskeyword(word)


def word_pattern(name: str) -> "re.Pattern[str]":
    return re.compile(rf"\b{re.escape(name)}\b")


@dataclass(frozen=True)
class CodeLine:
    """A mapped script line with its masked form"""
    script_line: int
    cell_index: int
    raw: str
    masked: str


def iter_code_lines(text_lines: List[str], entries) -> Iterator[CodeLine]:
    """
    Yield every mapped script line with its masked text

    Quote state resets at each cell boundary; separator and blanked lines
    are never yielded.
    """
    state: Optional[str] = None
    current_cell: Optional[int] = None
    for entry in entries:
        if entry.cell_index != current_cell:
            state = None
            current_cell = entry.cell_index
        raw = text_lines[entry.script_line]
        masked, state = mask_line(raw, state)
        yield CodeLine(entry.script_line, entry.cell_index, raw, masked)
