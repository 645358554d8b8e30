"""
Run report assembly and rendering
JSON report, markdown summary table, human-readable findings and CSV exports
"""

import csv
import io
import json
import logging
from pathlib import Path
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple

from nbpractice import __version__
from nbpractice.core.config import Settings
from nbpractice.core.exceptions import ConfigError
from nbpractice.core.registry import REGISTRY_BY_ID
from nbpractice.schemas.corpus import CorpusRun
from nbpractice.schemas.findings import FailSeverity, Severity
from nbpractice.schemas.report import ReportHeader, RunReport
from nbpractice.schemas.summary import CorpusSummary, Histogram, Measure, Rate

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_CONFIG = 2
EXIT_INPUT_ERRORS = 3


def build_header(settings: Settings) -> ReportHeader:
    return ReportHeader(
        tool_version=__version__,
        config_digest=settings.digest(),
        test_profile=settings.test_profile.value,
    )


def build_report(settings: Settings, run: CorpusRun, summaries: Sequence[CorpusSummary] = ()) -> RunReport:
    """Assemble a report; timing is kept only when asked for"""
    return RunReport(
        header=build_header(settings),
        notebooks=run.results,
        summaries=list(summaries),
        dedup_log=run.dedup_log,
        timing=dict(run.timing) if settings.include_timing else None,
    )


def report_to_json(report: RunReport) -> str:
    """Canonical JSON: sorted keys, fixed indentation, trailing newline"""
    payload = report.model_dump(mode="json", exclude_none=False)
    if report.timing is None:
        payload.pop("timing", None)
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def exit_code(report: RunReport, settings: Settings) -> int:
    """
    0 clean, 1 findings at or above fail_severity, 3 notebooks that could
    not be analysed (takes precedence over 1)
    """
    if report.failed:
        return EXIT_INPUT_ERRORS
    if settings.fail_severity == FailSeverity.NONE:
        return EXIT_OK
    threshold = Severity(settings.fail_severity.value).rank
    for result in report.notebooks:
        if any(finding.severity.rank >= threshold for finding in result.findings):
            return EXIT_FINDINGS
    return EXIT_OK


def format_number(x: float) -> str:
    """Integers without decimals, others with at most two"""
    if float(x).is_integer():
        return str(int(x))
    return f"{x:.2f}".rstrip("0").rstrip(".")


def format_rate(rate: Rate) -> str:
    """e.g. 1,103 (94.35%); undefined rates show their reason"""
    if rate.value is None:
        return f"n/a ({rate.reason or 'undefined'})"
    return f"{rate.count:,} ({rate.value * 100:.2f}%)"


def format_five(measure: Optional[Measure]) -> str:
    if measure is None or measure.five is None:
        reason = measure.reason if measure is not None else "not measured"
        return f"n/a ({reason})"
    return "[" + ", ".join(format_number(value) for value in measure.five.as_list()) + "]"


THIRDS = "(first / middle / last third)"

LINT_LABELS = {
    "convention": "Convention",
    "warning": "Warning",
    "error": "Error",
    "refactor": "Refactor",
}


def format_thirds(histogram: Optional[Histogram]) -> str:
    if histogram is None:
        return "n/a"
    return " / ".join(str(count) for count in histogram.thirds)


def _thirds(*parts: Tuple[str, str]) -> Callable[[CorpusSummary], str]:
    def cell(summary: CorpusSummary) -> str:
        texts = [format_thirds(summary.histograms.get(key)) for _, key in parts]
        if len(parts) == 1:
            return texts[0]
        return "; ".join(f"{name} {text}" for (name, _), text in zip(parts, texts))
    return cell


def _rate(field: str) -> Callable[[CorpusSummary], str]:
    return lambda summary: format_rate(getattr(summary, field))


def _lint(category: str) -> Callable[[CorpusSummary], str]:
    def cell(summary: CorpusSummary) -> str:
        rate = summary.lint_category_rates.get(category)
        return format_rate(rate) if rate is not None else "n/a (not measured)"
    return cell


def _five(key: str) -> Callable[[CorpusSummary], str]:
    return lambda summary: format_five(summary.fives.get(key))


class SummaryRow(NamedTuple):
    bp_id: str
    operationalization: str
    result: Callable[[CorpusSummary], str]


# Rows of the summary table, grouped by practice in catalog order
SUMMARY_ROWS: List[SummaryRow] = [
    SummaryRow("BP4", f"Distribution of import statements in notebooks {THIRDS}",
               _thirds(("imports", "import_positions"))),
    SummaryRow("BP4", "Notebooks with every import in the first third", _rate("rate_bp4_compliant")),
    SummaryRow("BP5", "Notebooks executed top to bottom", _rate("rate_top_to_bottom")),
    SummaryRow("BP6", "Notebooks with local module imports", _rate("rate_local_import")),
    SummaryRow("BP6", "Notebooks with function definitions", _rate("rate_function_def")),
    SummaryRow("BP6", "Notebooks with class definitions", _rate("rate_class_def")),
    SummaryRow("BP7", "Notebooks with test modules", _rate("rate_test_import")),
    *[
        SummaryRow("BP9", f"Notebooks with failing '{label}' checks", _lint(category))
        for category, label in LINT_LABELS.items()
    ],
    SummaryRow("BP11", f"Distribution of markdown cells and code cells in notebooks {THIRDS}",
               _thirds(("markdown", "md_cell_positions"), ("code", "code_cell_positions"))),
    SummaryRow("BP11", "Notebooks with markdown", _rate("rate_md")),
    SummaryRow("BP11", "Code cells in notebooks", _five("code_cells")),
    SummaryRow("BP11", "MD cells in notebooks", _five("md_cells")),
    SummaryRow("BP11", "Meaningful MD words", _five("meaningful_md_words")),
    SummaryRow("BP11", "Meaningful MD lines", _five("meaningful_md_lines")),
    SummaryRow("BP12", "Notebooks with MD headers", _rate("rate_md_headings")),
    SummaryRow("BP12", "MD header words per notebook", _five("md_heading_words")),
    SummaryRow("BP12", "MD header size per heading (words)", _five("heading_words_per_heading")),
    SummaryRow("BP13", f"Distribution of executed, non-executed and empty cells in notebooks {THIRDS}",
               _thirds(("executed", "executed_cell_positions"),
                       ("non-executed", "non_executed_cell_positions"),
                       ("empty", "empty_cell_positions"))),
    SummaryRow("BP13", "Empty cells in notebooks", _five("empty_cells")),
    SummaryRow("BP14", "Number of cells per notebook", _five("cells_per_notebook")),
    SummaryRow("BP14", "Number of lines in cells", _five("lines_per_cell")),
    SummaryRow("BP14", "Number of lines in code cells", _five("lines_per_code_cell")),
    SummaryRow("BP14", "Number of lines in markdown cells", _five("lines_per_md_cell")),
    SummaryRow("BP14", "Number of lines in notebooks", _five("lines_per_notebook")),
    SummaryRow("BP14", "Number of Python lines in notebooks", _five("code_lines_per_notebook")),
]


def render_markdown_summary(summaries: Sequence[CorpusSummary]) -> str:
    """
    The results table: one row per measure, one result column per summary

    Theme and practice are printed on the first row of their group only.
    Five-number summaries read [min, q1, median, q3, max]; distributions
    give the number of positions in each third of the notebook.
    """
    if not summaries:
        raise ValueError("Nothing to render")
    result_headers = ["Result"] if len(summaries) == 1 else [s.label for s in summaries]
    headers = ["Theme", "Best practice", "Operationalization"] + result_headers
    lines = [
        "| " + " | ".join(headers) + " |",
        "|" + "|".join("---" for _ in headers) + "|",
    ]
    theme = bp_id = None
    for row in SUMMARY_ROWS:
        entry = REGISTRY_BY_ID[row.bp_id]
        theme_cell = entry.theme.value if entry.theme != theme else ""
        bp_cell = f"{entry.bp_id} {entry.title}" if entry.bp_id != bp_id else ""
        theme, bp_id = entry.theme, entry.bp_id
        cells = [theme_cell, bp_cell, row.operationalization] + [row.result(s) for s in summaries]
        lines.append("| " + " | ".join(cells) + " |")

    lines.append("")
    for summary in summaries:
        lines.append(f"{summary.label}: {summary.n_notebooks:,} notebooks, {summary.n_executed:,} executed")
    return "\n".join(lines) + "\n"


def render_findings(report: RunReport) -> str:
    """`path:cell:line: severity check [BP] message`, cells and lines 1-based"""
    out = []
    for result in report.notebooks:
        if result.error is not None:
            out.append(f"{result.path}: error {result.error.type}: {result.error.message}")
            continue
        for finding in result.findings:
            cell = "-" if finding.cell_index is None else str(finding.cell_index + 1)
            line = "-" if finding.cell_line is None else str(finding.cell_line + 1)
            out.append(f"{result.path}:{cell}:{line}: {finding.severity.value} "
                       f"{finding.check_id} [{finding.bp_id}] {finding.message}")
    return "\n".join(out) + ("\n" if out else "")


def histogram_csv(histogram: Histogram) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["bin_lo", "bin_hi", "count"])
    edges = histogram.bin_edges
    for i, count in enumerate(histogram.counts):
        writer.writerow([format_number(edges[i]), format_number(edges[i + 1]), count])
    return buffer.getvalue()


def write_histograms(summaries: Sequence[CorpusSummary], out_dir: Path) -> List[Path]:
    """One CSV per summary and histogram: `<label>_<measure>.csv`"""
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for summary in summaries:
        for name, histogram in summary.histograms.items():
            target = out_dir / f"{summary.label}_{name}.csv"
            target.write_text(histogram_csv(histogram), encoding="utf-8")
            written.append(target)
    logger.info(f"Wrote {len(written)} histogram files to {out_dir}")
    return written


def load_scores(path: Path) -> Dict[str, float]:
    """
    Read a `path,score` CSV (header required)

    Raises:
        ConfigError: unreadable file, missing columns or a non-numeric score
    """
    try:
        with path.open(newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            if not reader.fieldnames or not {"path", "score"} <= set(reader.fieldnames):
                raise ConfigError(f"{path}: scores file needs a 'path,score' header")
            scores = {}
            for row in reader:
                try:
                    scores[Path(row["path"]).as_posix()] = float(row["score"])
                except (TypeError, ValueError) as e:
                    raise ConfigError(f"{path}: bad score for {row.get('path')!r}") from e
    except OSError as e:
        raise ConfigError(f"Cannot read scores file {path}: {e}") from e
    logger.info(f"Loaded {len(scores)} scores from {path}")
    return scores
