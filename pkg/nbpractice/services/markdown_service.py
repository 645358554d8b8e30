"""
Markdown measurements: meaningful words/lines and headings

Stripping rules, applied in this order (MARKDOWN_RULES_VERSION in the
report header tracks changes to this list):
  1. fenced code blocks (``` or ~~~) removed with their content
  2. HTML tags
  3. images, entirely
  4. links, keeping the link text
  5. heading markers (ATX hashes, setext underlines, horizontal rules)
  6. emphasis / strong / strikethrough markers
  7. list bullets and ordered-list numerals
  8. blockquote markers
  9. inline-code backticks (content kept)
 10. table pipes and alignment rows
"""

import re
from typing import List, Optional, Tuple

from nbpractice.schemas.metrics import Heading
from nbpractice.schemas.notebook import Cell

_FENCE = re.compile(r"^\s{0,3}(`{3,}|~{3,})")
_HTML_TAG = re.compile(r"<[^<>]*>")
_IMAGE = re.compile(r"!\[[^\]]*\](?:\([^)]*\)|\[[^\]]*\])")
_LINK = re.compile(r"\[([^\]]*)\](?:\([^)]*\)|\[[^\]]*\])")
_QUOTE_PREFIX = r"^(\s*(?:>\s*)*)"
_ATX_MARKER = re.compile(_QUOTE_PREFIX + r"#{1,6}(?:\s+|$)")
_ATX_CLOSING = re.compile(r"\s+#+\s*$")
_RULE_LINE = re.compile(r"^\s*(?:>\s*)*(?:=+|-+|(?:[-*_]\s*){3,})\s*$")
_OPEN_EMPHASIS = re.compile(r"(?<!\w)[*_~]+(?=\S)")
_CLOSE_EMPHASIS = re.compile(r"(?<=\S)[*_~]+(?!\w)")
_LIST_MARKER = re.compile(_QUOTE_PREFIX + r"(?:[-*+]|\d+[.)])\s+")
_BLOCKQUOTE = re.compile(r"^\s*(?:>\s?)+")
_TABLE_RULE = re.compile(r"^[\s|:\-]+$")

_ATX_HEADING = re.compile(r"^\s{0,3}(#{1,6})\s+(.*?)\s*$")
_SETEXT_UNDERLINE = re.compile(r"^\s{0,3}(=+|-+)\s*$")
_BULLET_LINE = re.compile(r"^\s*(?:[-*+]|\d+[.)])\s+")


def _strip_inline(line: str) -> str:
    line = _HTML_TAG.sub("", line)
    line = _IMAGE.sub("", line)
    line = _LINK.sub(r"\1", line)
    if _RULE_LINE.match(line):
        return ""
    line = _ATX_MARKER.sub(r"\1", line)
    line = _ATX_CLOSING.sub("", line)
    line = _OPEN_EMPHASIS.sub("", line)
    line = _CLOSE_EMPHASIS.sub("", line)
    line = _LIST_MARKER.sub(r"\1", line)
    line = _BLOCKQUOTE.sub("", line)
    line = line.replace("`", "")
    if "|" in line and _TABLE_RULE.match(line):
        return ""
    return line.replace("|", " ")


def strip_markdown(md_lines: List[str]) -> List[str]:
    """Apply every stripping rule; fenced lines become empty"""
    result: List[str] = []
    fence: Optional[str] = None
    for line in md_lines:
        match = _FENCE.match(line)
        if fence is not None:
            if match and match.group(1)[0] == fence[0] and len(match.group(1)) >= len(fence) \
                    and not line.strip()[len(match.group(1)):].strip():
                fence = None
            result.append("")
            continue
        if match:
            fence = match.group(1)
            result.append("")
            continue
        result.append(_strip_inline(line))
    return result


def meaningful_md_tokens(md_lines: List[str]) -> Tuple[int, int]:
    """(meaningful words, lines holding at least one meaningful word)"""
    words = 0
    lines = 0
    for line in strip_markdown(md_lines):
        count = len(line.split())
        words += count
        lines += 1 if count else 0
    return words, lines


def _is_marker_line(line: str) -> bool:
    return bool(
        _ATX_HEADING.match(line)
        or _SETEXT_UNDERLINE.match(line)
        or _BULLET_LINE.match(line)
        or line.lstrip().startswith(">")
        or _FENCE.match(line)
    )


def detect_headings(md_cells: List[Cell]) -> List[Heading]:
    """ATX and setext headings outside fenced blocks, in document order"""
    headings: List[Heading] = []
    for cell in md_cells:
        fence: Optional[str] = None
        previous: Optional[str] = None
        for line in cell.source_lines:
            match = _FENCE.match(line)
            if fence is not None:
                if match and match.group(1)[0] == fence[0]:
                    fence = None
                previous = None
                continue
            if match:
                fence = match.group(1)
                previous = None
                continue

            atx = _ATX_HEADING.match(line)
            if atx:
                text = _ATX_CLOSING.sub("", atx.group(2)).strip()
                headings.append(Heading(level=len(atx.group(1)), text=text, cell_index=cell.index))
            else:
                underline = _SETEXT_UNDERLINE.match(line)
                if underline and previous is not None and previous.strip() and not _is_marker_line(previous):
                    level = 1 if underline.group(1).startswith("=") else 2
                    headings.append(Heading(level=level, text=previous.strip(), cell_index=cell.index))
            previous = line
    return headings


def heading_words(heading: Heading) -> int:
    return meaningful_md_tokens([heading.text])[0]
