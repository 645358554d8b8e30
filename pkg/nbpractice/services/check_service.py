"""
Best-practice check engine
Evaluates every enabled, operationalized best practice on one notebook
"""

import logging
from collections import Counter
from typing import Dict, List, Optional, Sequence, Tuple

from nbpractice.core.config import Settings
from nbpractice.core.exceptions import BridgeUnavailable
from nbpractice.schemas.corpus import CorpusIndex
from nbpractice.schemas.findings import Finding, LintCategory
from nbpractice.schemas.metrics import NotebookMetrics, StatusPosition
from nbpractice.schemas.notebook import CellKind, CellStatus, Notebook
from nbpractice.schemas.script import (
    DefKind,
    DefRecord,
    ExtractedScript,
    ImportOrigin,
    ImportRecord,
    LintFinding,
)
from nbpractice.services.extract_service import extract_script, map_line
from nbpractice.services.linter_bridge import BRIDGE_DIAGNOSTICS, BRIDGE_UNAVAILABLE_CHECK, LinterBridge
from nbpractice.services.markdown_service import detect_headings, heading_words, meaningful_md_tokens
from nbpractice.services.notebook_service import (
    cell_position_fraction,
    cell_status,
    execution_sequence,
)
from nbpractice.services.scan_service import (
    LintConfig,
    TestDetectConfig,
    classify_import_origin,
    detect_test_imports,
    lint_counts,
    lint_native,
    scan_defs,
    scan_imports,
)

logger = logging.getLogger(__name__)

# Practices that look at code text; skipped for non-Python kernels
CODE_LEVEL_BPS = ("BP4", "BP6", "BP7", "BP9")

NATIVE_LINT_CATEGORIES = (LintCategory.CONVENTION, LintCategory.WARNING)

FIRST_THIRD = 1 / 3


def check_bp5_top_to_bottom(seq: Sequence[Optional[int]], strict: bool = False) -> bool:
    """Counters run 1, 2, ..., n in document order; strict mode also rejects unexecuted cells"""
    if strict and any(count is None for count in seq):
        return False
    counters = [count for count in seq if count is not None]
    return len(counters) >= 1 and counters == list(range(1, len(counters) + 1))


def _first_out_of_order_cell(nb: Notebook, strict: bool) -> Optional[int]:
    expected = 1
    for cell in nb.code_cells:
        if cell.is_blank:
            continue
        if cell.execution_count is None:
            if strict:
                return cell.index
            continue
        if cell.execution_count != expected:
            return cell.index
        expected += 1
    return None


def check_bp4_import_position(
    records: List[ImportRecord], script: ExtractedScript, nb: Notebook
) -> Tuple[List[float], float]:
    """
    Relative position of the code cell holding each import

    Positions count only non-empty code cells, so trailing or interleaved
    empty cells do not move them.
    """
    if not records:
        return [], 1.0
    ordinals = {cell.index: n for n, cell in enumerate(c for c in nb.code_cells if not c.is_blank)}
    positions = []
    for record in records:
        cell_index, _ = map_line(script, record.script_line)
        positions.append(cell_position_fraction(ordinals[cell_index], len(ordinals)))
    first_third = sum(1 for position in positions if position <= FIRST_THIRD)
    return positions, first_third / len(positions)


def check_bp6_modularization(
    defs: List[DefRecord], imports: List[ImportRecord], origins: List[ImportOrigin]
) -> Tuple[bool, bool, bool]:
    """(function definition, class definition, local module import)"""
    has_function = any(record.kind == DefKind.FUNCTION for record in defs)
    has_class = any(record.kind == DefKind.CLASS for record in defs)
    has_local = any(origin == ImportOrigin.LOCAL for origin in origins)
    return has_function, has_class, has_local


def check_bp13_cleanliness(nb: Notebook) -> Tuple[int, int, List[StatusPosition]]:
    """Empty and non-executed code cells, and every code cell's status by position"""
    code_cells = nb.code_cells
    positions = []
    counts: Counter = Counter()
    for ordinal, cell in enumerate(code_cells):
        status = cell_status(cell)
        counts[status] += 1
        positions.append(StatusPosition(
            fraction=cell_position_fraction(ordinal, len(code_cells)), status=status,
        ))
    return counts[CellStatus.EMPTY], counts[CellStatus.NON_EXECUTED], positions


def check_bp14_conciseness(nb: Notebook) -> Tuple[int, int, List[int], List[int], List[int]]:
    """(total lines, code lines, lines per cell, per code cell, per markdown cell)"""
    per_cell = [len(cell.source_lines) for cell in nb.cells]
    per_code = [len(cell.source_lines) for cell in nb.cells if cell.kind == CellKind.CODE]
    per_md = [len(cell.source_lines) for cell in nb.cells if cell.kind == CellKind.MARKDOWN]
    return sum(per_cell), sum(per_code), per_cell, per_code, per_md


class CheckService:
    """Runs extraction, scanning and the enabled checks on notebooks"""

    def __init__(self, settings: Settings, bridge: Optional[LinterBridge] = None):
        self.settings = settings
        self.test_cfg = TestDetectConfig.from_settings(settings)
        self.lint_cfg = LintConfig(max_line_len=settings.max_line_len)
        if bridge is None and settings.bridge_command:
            bridge = LinterBridge(
                settings.bridge_command,
                ignored_checks=settings.ignored_checks,
                timeout=settings.bridge_timeout,
                max_procs=settings.bridge_max_procs,
            )
        self.bridge = bridge

    def _finding(
        self,
        check_id: str,
        bp_id: str,
        message: str,
        cell_index: Optional[int] = None,
        cell_line: Optional[int] = None,
        category: Optional[str] = None,
    ) -> Finding:
        return Finding(
            check_id=check_id,
            bp_id=bp_id,
            severity=self.settings.severity_for(check_id, bp_id, category),
            cell_index=cell_index,
            cell_line=cell_line,
            message=message,
        )

    def _lint(self, script: ExtractedScript, imports, defs) -> Tuple[List[LintFinding], List[LintCategory]]:
        findings = lint_native(script, self.lint_cfg, imports=imports, defs=defs)
        categories = list(NATIVE_LINT_CATEGORIES)
        if self.bridge is not None:
            try:
                findings = findings + self.bridge.run(script)
                categories = list(LintCategory)
            except BridgeUnavailable as e:
                logger.warning(f"External linter unavailable: {e}")
                findings = findings + [LintFinding(
                    check_id=BRIDGE_UNAVAILABLE_CHECK,
                    category=LintCategory.WARNING,
                    message=str(e),
                )]
        return sorted(findings, key=LintFinding.sort_key), categories

    def analyze_notebook(
        self, nb: Notebook, corpus_index: Optional[CorpusIndex] = None
    ) -> Tuple[NotebookMetrics, List[Finding]]:
        """
        Measure one notebook and collect its findings

        Practices that are disabled, or code-level practices on a non-Python
        kernel (unless allow_any_kernel), leave their fields None and are
        listed in `skipped`.
        """
        settings = self.settings
        corpus_index = corpus_index or CorpusIndex.without_context()
        code_excluded = not nb.is_python and not settings.allow_any_kernel
        if code_excluded:
            logger.info(f"{nb.path}: kernel {nb.kernel_language!r} excluded from code-level checks")

        def runs(bp_id: str) -> bool:
            return settings.is_enabled(bp_id) and not (code_excluded and bp_id in CODE_LEVEL_BPS)

        skipped = [bp for bp in ("BP4", "BP5", "BP6", "BP7", "BP9", "BP11", "BP12", "BP13", "BP14")
                   if not runs(bp)]
        values: Dict[str, object] = {}
        findings: List[Finding] = []

        code_cells = nb.code_cells
        md_cells = nb.markdown_cells
        executed = any(cell.execution_count is not None for cell in code_cells)

        script = extract_script(nb, settings.strip_rules)
        imports = scan_imports(script)
        defs = scan_defs(script)

        if runs("BP4"):
            positions, fraction = check_bp4_import_position(imports, script, nb)
            compliant = fraction >= settings.bp4_threshold
            values.update(import_positions=positions, imports_first_third_fraction=fraction,
                          bp4_compliant=compliant)
            if not compliant:
                for record, position in zip(imports, positions):
                    if position > FIRST_THIRD:
                        cell_index, cell_line = map_line(script, record.script_line)
                        findings.append(self._finding(
                            "import-not-at-beginning", "BP4",
                            f"Import of {record.module_path} placed after the first third of the notebook",
                            cell_index, cell_line,
                        ))

        if runs("BP5"):
            top_to_bottom = check_bp5_top_to_bottom(execution_sequence(nb), settings.strict_bp5)
            values["top_to_bottom"] = top_to_bottom
            if executed and not top_to_bottom:
                findings.append(self._finding(
                    "not-top-to-bottom", "BP5",
                    "Execution counters are not 1..n in document order; re-run the notebook top to bottom",
                    _first_out_of_order_cell(nb, settings.strict_bp5),
                ))

        if runs("BP6"):
            origins = [classify_import_origin(record, nb.path, corpus_index) for record in imports]
            has_function, has_class, has_local = check_bp6_modularization(defs, imports, origins)
            values.update(
                has_function_def=has_function,
                has_class_def=has_class,
                has_local_import=has_local if corpus_index.has_context else None,
            )
            if not (has_function or has_class or has_local):
                findings.append(self._finding(
                    "no-modularization", "BP6",
                    "No function definitions, class definitions or local module imports",
                ))

        if runs("BP7"):
            has_test = bool(detect_test_imports(imports, self.test_cfg))
            values["has_test_import"] = has_test
            if not has_test:
                findings.append(self._finding("no-test-import", "BP7", "No testing library imported"))

        if runs("BP9"):
            lint_findings, categories = self._lint(script, imports, defs)
            failed = {category.value: False for category in categories}
            # bridge diagnostics are reported but say nothing about the script
            counted = [lint for lint in lint_findings if lint.check_id not in BRIDGE_DIAGNOSTICS]
            for lint in counted:
                if lint.category.value in failed:
                    failed[lint.category.value] = True
            for lint in lint_findings:
                cell_index, cell_line = (None, None)
                if lint.script_line is not None:
                    cell_index, cell_line = map_line(script, lint.script_line)
                findings.append(self._finding(
                    lint.check_id, "BP9", lint.message, cell_index, cell_line, lint.category.value,
                ))
            values.update(lint_category_failed=dict(sorted(failed.items())),
                          lint_counts=lint_counts(counted))

        if runs("BP11"):
            words = lines = 0
            for cell in md_cells:
                cell_words, cell_lines = meaningful_md_tokens(cell.source_lines)
                words += cell_words
                lines += cell_lines
            has_markdown = any(not cell.is_blank for cell in md_cells)
            n_cells = len(nb.cells)
            values.update(
                has_markdown=has_markdown,
                meaningful_md_words=words,
                meaningful_md_lines=lines,
                md_cell_positions=[cell_position_fraction(c.index, n_cells) for c in md_cells],
                code_cell_positions=[cell_position_fraction(c.index, n_cells) for c in code_cells],
            )
            if not has_markdown:
                findings.append(self._finding("no-markdown", "BP11", "Notebook has no markdown text"))

        if runs("BP12"):
            headings = detect_headings(md_cells)
            counts = [heading_words(heading) for heading in headings]
            values.update(md_heading_count=len(headings), md_heading_words=sum(counts),
                          heading_word_counts=counts)
            if not headings:
                findings.append(self._finding("no-headings", "BP12", "Notebook has no markdown headings"))

        if runs("BP13"):
            empty, non_executed, status_positions = check_bp13_cleanliness(nb)
            values.update(empty_cells=empty, non_executed_cells=non_executed,
                          cell_status_positions=status_positions)
            for cell in code_cells:
                status = cell_status(cell)
                if status == CellStatus.EMPTY:
                    findings.append(self._finding("empty-cell", "BP13", "Empty code cell", cell.index))
                elif status == CellStatus.NON_EXECUTED and executed:
                    findings.append(self._finding(
                        "non-executed-cell", "BP13", "Code cell left unexecuted in an executed notebook",
                        cell.index,
                    ))

        if runs("BP14"):
            total, code, per_cell, per_code, per_md = check_bp14_conciseness(nb)
            values.update(total_lines=total, code_lines=code, lines_per_cell=per_cell,
                          lines_per_code_cell=per_code, lines_per_md_cell=per_md)
            if settings.max_cell_lines is not None:
                for cell in nb.cells:
                    if len(cell.source_lines) > settings.max_cell_lines:
                        findings.append(self._finding(
                            "long-cell", "BP14",
                            f"Cell has {len(cell.source_lines)} lines (limit {settings.max_cell_lines})",
                            cell.index,
                        ))

        metrics = NotebookMetrics(
            path=nb.path,
            kernel_language=nb.kernel_language,
            code_cells=len(code_cells),
            md_cells=len(md_cells),
            raw_cells=sum(1 for cell in nb.cells if cell.kind == CellKind.RAW),
            executed=executed,
            outputs_without_counter=nb.outputs_without_counter,
            skipped=skipped,
            **values,
        )
        logger.debug(f"{nb.path}: {len(findings)} findings")
        return metrics, sorted(findings, key=Finding.sort_key)


def analyze_notebook(
    nb: Notebook, cfg: Settings, corpus_index: Optional[CorpusIndex] = None
) -> Tuple[NotebookMetrics, List[Finding]]:
    """Analyse one notebook with a throwaway CheckService"""
    return CheckService(cfg).analyze_notebook(nb, corpus_index)
