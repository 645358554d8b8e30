"""
Lexical scanning of extracted scripts
Import and definition records, test-library detection, import origins
and the native lint subset
"""

import logging
import re
from collections import Counter
from pathlib import PurePosixPath
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from nbpractice.schemas.corpus import CorpusIndex
from nbpractice.schemas.findings import LintCategory
from nbpractice.schemas.script import (
    DefKind,
    DefRecord,
    ExtractedScript,
    ImportOrigin,
    ImportRecord,
    LintFinding,
)
from nbpractice.utils.linescan import (
    CodeLine,
    bracket_depth_after,
    enclosing_openers,
    is_subscript,
    iter_code_lines,
    split_top_level,
    top_level_indices,
    word_pattern,
)

logger = logging.getLogger(__name__)

NATIVE_CHECKS: Dict[str, LintCategory] = {
    "trailing-whitespace": LintCategory.CONVENTION,
    "line-too-long": LintCategory.CONVENTION,
    "bad-whitespace": LintCategory.CONVENTION,
    "multiple-statements": LintCategory.CONVENTION,
    "invalid-name": LintCategory.CONVENTION,
    "wildcard-import": LintCategory.WARNING,
    "unused-import": LintCategory.WARNING,
}

_NAME = r"[^\W\d]\w*"
_DOTTED = re.compile(rf"^{_NAME}(?:\.{_NAME})*$")
_IDENTIFIER = re.compile(rf"^{_NAME}$")
_IMPORT = re.compile(r"^import\s+(.+)$")
_FROM_IMPORT = re.compile(rf"^from\s+(\.*(?:{_NAME}[\w.]*)?)\s+import\s+(.+)$")
_DEF = re.compile(rf"^([ \t]*)(async\s+def|def|class)\s+({_NAME})")
_SNAKE_CASE = re.compile(r"^[^\W\dA-Z][^\WA-Z]*$")
_PASCAL_CASE = re.compile(r"^_?[A-Z][^\W_]*$")
_SPACE_BEFORE_PUNCT = re.compile(r"\S[ \t]+[,;]")


class TestDetectConfig(BaseModel):
    """Test-library detection rules"""
    __test__ = False

    substrings: List[str] = Field(default_factory=list)
    allowlist: List[str] = Field(default_factory=list)
    denylist: List[str] = Field(default_factory=list)
    scope: str = Field(default="full", pattern="^(full|top)$")

    model_config = ConfigDict(frozen=True)

    @classmethod
    def from_settings(cls, settings) -> "TestDetectConfig":
        return cls(
            substrings=list(settings.test_substrings),
            allowlist=list(settings.test_allowlist),
            denylist=settings.effective_test_denylist(),
            scope=settings.test_match_scope.value,
        )


class LintConfig(BaseModel):
    """Native lint parameters"""
    max_line_len: int = Field(default=79, ge=1)

    model_config = ConfigDict(frozen=True)


def _statements(script: ExtractedScript) -> List[Tuple[int, int, str]]:
    """
    Join continuation lines into logical statements

    Returns (first script line, last script line, masked text) per
    statement; a statement never crosses a cell boundary.
    """
    statements: List[Tuple[int, int, str]] = []
    parts: List[str] = []
    start: Optional[int] = None
    end = 0
    depth = 0
    cell: Optional[int] = None

    def flush():
        if parts:
            statements.append((start, end, " ".join(parts)))

    for line in iter_code_lines(script.text_lines, script.map_entries):
        if line.cell_index != cell:
            flush()
            parts, start, depth, cell = [], None, 0, line.cell_index
        text = line.masked.rstrip()
        continued = text.endswith("\\")
        if continued:
            text = text[:-1]
        if start is None:
            start = line.script_line
        parts.append(text.strip())
        end = line.script_line
        depth = bracket_depth_after(line.masked, depth)
        if depth == 0 and not continued:
            flush()
            parts, start = [], None
    flush()
    return statements


def _segments(masked: str) -> List[str]:
    """Split a logical statement at top-level semicolons"""
    cuts = top_level_indices(masked, ";")
    bounds = [-1] + cuts + [len(masked)]
    return [masked[a + 1:b].strip() for a, b in zip(bounds, bounds[1:])]


def _parse_alias(item: str) -> Tuple[str, Optional[str]]:
    pieces = item.split()
    if len(pieces) == 3 and pieces[1] == "as":
        return pieces[0], pieces[2]
    if len(pieces) == 1:
        return pieces[0], None
    return "", None


def scan_imports(script: ExtractedScript) -> List[ImportRecord]:
    """One record per imported module per import statement"""
    records: List[ImportRecord] = []
    for first, last, masked in _statements(script):
        for index, segment in enumerate(_segments(masked)):
            match = _IMPORT.match(segment)
            if match:
                for item in match.group(1).split(","):
                    module, alias = _parse_alias(item.strip())
                    if not _DOTTED.match(module) or (alias and not _IDENTIFIER.match(alias)):
                        continue
                    records.append(ImportRecord(
                        module_path=module,
                        script_line=first,
                        end_line=last,
                        bound_names=[alias or module.split(".")[0]],
                        segment=index,
                    ))
                continue

            match = _FROM_IMPORT.match(segment)
            if not match or not match.group(1):
                continue
            module = match.group(1)
            names_text = match.group(2).strip().strip("()").strip()
            if names_text == "*":
                records.append(ImportRecord(
                    module_path=module, is_wildcard=True, script_line=first, end_line=last,
                    segment=index,
                ))
                continue
            names, bound = [], []
            for item in names_text.split(","):
                name, alias = _parse_alias(item.strip())
                if not _IDENTIFIER.match(name) or (alias and not _IDENTIFIER.match(alias)):
                    continue
                names.append(name)
                bound.append(alias or name)
            if names:
                records.append(ImportRecord(
                    module_path=module,
                    imported_names=names,
                    script_line=first,
                    end_line=last,
                    bound_names=bound,
                    segment=index,
                ))
    return records


def scan_defs(script: ExtractedScript) -> List[DefRecord]:
    """Function and class definitions, nested ones included"""
    records = []
    for line in iter_code_lines(script.text_lines, script.map_entries):
        match = _DEF.match(line.masked)
        if not match:
            continue
        indent, keyword, name = match.groups()
        records.append(DefRecord(
            kind=DefKind.CLASS if keyword == "class" else DefKind.FUNCTION,
            name=name,
            script_line=line.script_line,
            indent=len(indent.expandtabs(8)),
        ))
    return records


def _scoped_name(record: ImportRecord, scope: str) -> str:
    return record.top_level if scope == "top" else record.module_path


def is_test_import(record: ImportRecord, cfg: TestDetectConfig) -> bool:
    name = _scoped_name(record, cfg.scope)
    if name in cfg.allowlist or record.top_level in cfg.allowlist:
        return True
    for stem in cfg.denylist:
        name = name.replace(stem, "")
    return any(substring in name for substring in cfg.substrings)


def detect_test_imports(imports: List[ImportRecord], cfg: TestDetectConfig) -> List[ImportRecord]:
    """
    Imports of testing libraries

    A record is flagged when its (scoped) module name contains a configured
    substring, or it is an allowlisted package. Denylisted stems are removed
    from the name before the substring match.
    """
    return [record for record in imports if is_test_import(record, cfg)]


def classify_import_origin(
    rec: ImportRecord, notebook_path: str, corpus_index: CorpusIndex
) -> ImportOrigin:
    """Local when the first module segment resolves next to the notebook"""
    if not corpus_index.has_context:
        return ImportOrigin.UNKNOWN
    segment = rec.top_level or (rec.imported_names[0] if rec.imported_names else "")
    if not segment:
        return ImportOrigin.EXTERNAL_OR_STDLIB
    nb_dir = PurePosixPath(notebook_path).parent
    candidates = (nb_dir / f"{segment}.py", nb_dir / segment / "__init__.py")
    if any(candidate.as_posix() in corpus_index.files for candidate in candidates):
        return ImportOrigin.LOCAL
    return ImportOrigin.EXTERNAL_OR_STDLIB


def _bad_whitespace(line: CodeLine) -> Optional[str]:
    masked = line.masked.rstrip()
    if _SPACE_BEFORE_PUNCT.search(masked):
        return "No space allowed before comma or semicolon"
    openers = enclosing_openers(masked)
    for i, ch in enumerate(masked):
        if ch != "," or i == len(masked) - 1:
            continue
        if openers[i] is not None and is_subscript(masked, openers[i]):
            continue
        if masked[i + 1] not in " \t)]}":
            return "Exactly one space required after comma"
    return None


def _multiple_statements(line: CodeLine) -> bool:
    masked = line.masked
    return any(masked[i + 1:].strip() for i in top_level_indices(masked, ";"))


def _invalid_name(record: DefRecord) -> Optional[str]:
    if record.kind == DefKind.FUNCTION and not _SNAKE_CASE.match(record.name):
        return f'Function name "{record.name}" doesn\'t conform to snake_case naming style'
    if record.kind == DefKind.CLASS and not _PASCAL_CASE.match(record.name):
        return f'Class name "{record.name}" doesn\'t conform to PascalCase naming style'
    return None


def _unused_imports(script: ExtractedScript, imports: List[ImportRecord]) -> List[LintFinding]:
    findings = []
    for record in imports:
        if record.module_path == "__future__":
            continue
        own_lines = range(record.script_line, record.last_line + 1)
        # the rest of the script, plus the other ;-separated parts of this statement
        elsewhere = [text for number, text in enumerate(script.text_lines) if number not in own_lines]
        parts = split_top_level(script.text_lines[record.script_line:record.last_line + 1])
        elsewhere.extend(part for index, part in enumerate(parts) if index != record.segment)
        for name in record.bound_names:
            pattern = word_pattern(name)
            if not any(pattern.search(text) for text in elsewhere):
                findings.append(LintFinding(
                    check_id="unused-import",
                    category=NATIVE_CHECKS["unused-import"],
                    script_line=record.script_line,
                    message=f"Unused import {name}",
                ))
    return findings


def lint_native(
    script: ExtractedScript,
    cfg: LintConfig,
    imports: Optional[List[ImportRecord]] = None,
    defs: Optional[List[DefRecord]] = None,
) -> List[LintFinding]:
    """
    Convention and warning checks computable at the lexical level

    Findings are sorted by script line, then check id.
    """
    imports = scan_imports(script) if imports is None else imports
    defs = scan_defs(script) if defs is None else defs
    findings: List[LintFinding] = []

    def add(check_id: str, line_no: int, message: str):
        findings.append(LintFinding(
            check_id=check_id, category=NATIVE_CHECKS[check_id], script_line=line_no, message=message,
        ))

    for line in iter_code_lines(script.text_lines, script.map_entries):
        if line.raw.endswith((" ", "\t")):
            add("trailing-whitespace", line.script_line, "Trailing whitespace")
        if len(line.raw) > cfg.max_line_len:
            add("line-too-long", line.script_line,
                f"Line too long ({len(line.raw)}/{cfg.max_line_len})")
        message = _bad_whitespace(line)
        if message:
            add("bad-whitespace", line.script_line, message)
        if _multiple_statements(line):
            add("multiple-statements", line.script_line, "More than one statement on a single line")

    for record in defs:
        message = _invalid_name(record)
        if message:
            add("invalid-name", record.script_line, message)

    for record in imports:
        if record.is_wildcard:
            add("wildcard-import", record.script_line, f"Wildcard import {record.module_path}")

    findings.extend(_unused_imports(script, imports))
    return sorted(findings, key=LintFinding.sort_key)


def lint_counts(findings: List[LintFinding]) -> Dict[str, int]:
    return dict(sorted(Counter(finding.check_id for finding in findings).items()))
