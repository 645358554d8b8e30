"""
Corpus statistics: rates, five-number summaries, position histograms

Aggregation goes through a mergeable accumulator holding raw counts and
value multisets, so shards can be summarised independently and merged in
any order.
"""

import logging
from typing import Dict, Iterable, List, Mapping, Optional, Sequence

import numpy as np
from pydantic import BaseModel, Field

from nbpractice.core.exceptions import ConfigMismatch, EmptyInput, NoScores, OutOfRange
from nbpractice.schemas.findings import LintCategory
from nbpractice.schemas.metrics import NotebookMetrics
from nbpractice.schemas.notebook import CellStatus
from nbpractice.schemas.summary import (
    HISTOGRAM_BINS,
    CorpusSummary,
    FiveNumber,
    Histogram,
    Measure,
    Rate,
)

logger = logging.getLogger(__name__)

QUARTILES = [0.0, 0.25, 0.5, 0.75, 1.0]

RATE_KEYS = [
    "executed", "top_to_bottom", "function_def", "class_def", "local_import",
    "test_import", "md", "md_headings", "bp4_compliant", "outputs_without_counter",
]

# Measures restricted to markdown-bearing notebooks under md_denominator=md-only
MD_DENOMINATED = {"code_cells", "md_cells", "meaningful_md_words", "meaningful_md_lines"}

FIVE_MEASURES = [
    "code_cells", "md_cells", "meaningful_md_words", "meaningful_md_lines",
    "md_heading_words", "heading_words_per_heading", "empty_cells",
    "cells_per_notebook", "lines_per_cell", "lines_per_code_cell", "lines_per_md_cell",
    "lines_per_notebook", "code_lines_per_notebook",
]

HISTOGRAM_MEASURES = [
    "import_positions", "md_cell_positions", "code_cell_positions", "cell_status_positions",
    "executed_cell_positions", "non_executed_cell_positions", "empty_cell_positions",
]

_STATUS_HISTOGRAMS = {
    CellStatus.EXECUTED: "executed_cell_positions",
    CellStatus.NON_EXECUTED: "non_executed_cell_positions",
    CellStatus.EMPTY: "empty_cell_positions",
}


def five_number_summary(values: Sequence[float]) -> FiveNumber:
    """
    min, q1, median, q3, max with linear interpolation at rank (n-1)p

    Raises:
        EmptyInput: no values
    """
    if len(values) == 0:
        raise EmptyInput("Five-number summary of an empty list")
    qs = np.quantile(np.asarray(values, dtype=float), QUARTILES)
    qs = np.maximum.accumulate(qs)
    return FiveNumber(**{name: float(q) for name, q in zip(["min", "q1", "median", "q3", "max"], qs)})


def position_histogram(fractions: Sequence[float]) -> Histogram:
    """
    Ten equal-width bins over [0, 1]; 1.0 falls in the last bin

    Raises:
        OutOfRange: a value outside [0, 1]
    """
    data = np.asarray(fractions, dtype=float)
    if data.size and (np.isnan(data).any() or data.min() < 0.0 or data.max() > 1.0):
        raise OutOfRange("Position fractions must lie in [0, 1]")
    edges = np.arange(HISTOGRAM_BINS + 1) / HISTOGRAM_BINS
    counts, _ = np.histogram(data, bins=edges)
    first = int(np.count_nonzero(data <= 1 / 3))
    last = int(np.count_nonzero(data > 2 / 3))
    return Histogram(
        bin_edges=[float(edge) for edge in edges],
        counts=[int(count) for count in counts],
        thirds=[first, int(data.size) - first - last, last],
    )


def _rate(count: int, denominator: int, reason: str) -> Rate:
    if denominator == 0:
        return Rate(count=count, denominator=0, value=None, reason=reason)
    return Rate(count=count, denominator=denominator, value=count / denominator)


class StatsAccumulator(BaseModel):
    """Raw counts and value multisets; merge is associative and commutative"""
    config_version: str
    n_notebooks: int = 0
    n_executed: int = 0
    rate_counts: Dict[str, int] = Field(default_factory=dict)
    rate_denominators: Dict[str, int] = Field(default_factory=dict)
    lint_failed: Dict[str, int] = Field(default_factory=dict)
    lint_checked: Dict[str, int] = Field(default_factory=dict)
    lint_hits: Dict[str, int] = Field(default_factory=dict)
    values: Dict[str, List[float]] = Field(default_factory=dict)
    positions: Dict[str, List[float]] = Field(default_factory=dict)
    md_only: bool = False

    @classmethod
    def empty(cls, config_version: str, md_only: bool = False) -> "StatsAccumulator":
        return cls(config_version=config_version, md_only=md_only)

    def _count(self, key: str, flag: Optional[bool]) -> None:
        if flag is None:
            return
        self.rate_denominators[key] = self.rate_denominators.get(key, 0) + 1
        self.rate_counts[key] = self.rate_counts.get(key, 0) + (1 if flag else 0)

    def _extend(self, target: Dict[str, List[float]], key: str, items: Optional[Iterable[float]]) -> None:
        if items is None:
            return
        target.setdefault(key, []).extend(float(item) for item in items)

    def add(self, m: NotebookMetrics) -> "StatsAccumulator":
        self.n_notebooks += 1
        self.n_executed += 1 if m.executed else 0

        self._count("executed", m.executed)
        self._count("top_to_bottom", m.top_to_bottom if m.executed else None)
        self._count("function_def", m.has_function_def)
        self._count("class_def", m.has_class_def)
        self._count("local_import", m.has_local_import)
        self._count("test_import", m.has_test_import)
        self._count("md", m.has_markdown)
        self._count("md_headings", None if m.md_heading_count is None else m.md_heading_count > 0)
        self._count("bp4_compliant", m.bp4_compliant)
        self._count("outputs_without_counter", m.outputs_without_counter)

        for category, failed in (m.lint_category_failed or {}).items():
            self.lint_checked[category] = self.lint_checked.get(category, 0) + 1
            self.lint_failed[category] = self.lint_failed.get(category, 0) + (1 if failed else 0)
        for check_id, hits in (m.lint_counts or {}).items():
            self.lint_hits[check_id] = self.lint_hits.get(check_id, 0) + hits

        in_md_subset = not self.md_only or m.md_cells > 0
        scalars = {
            "code_cells": m.code_cells,
            "md_cells": m.md_cells,
            "meaningful_md_words": m.meaningful_md_words,
            "meaningful_md_lines": m.meaningful_md_lines,
            "md_heading_words": m.md_heading_words,
            "empty_cells": m.empty_cells,
            "cells_per_notebook": m.cells,
            "lines_per_notebook": m.total_lines,
            "code_lines_per_notebook": m.code_lines,
        }
        for key, value in scalars.items():
            if value is None or (key in MD_DENOMINATED and not in_md_subset):
                continue
            self._extend(self.values, key, [value])
        self._extend(self.values, "heading_words_per_heading", m.heading_word_counts)
        self._extend(self.values, "lines_per_cell", m.lines_per_cell)
        self._extend(self.values, "lines_per_code_cell", m.lines_per_code_cell)
        self._extend(self.values, "lines_per_md_cell", m.lines_per_md_cell)

        self._extend(self.positions, "import_positions", m.import_positions)
        self._extend(self.positions, "md_cell_positions", m.md_cell_positions)
        self._extend(self.positions, "code_cell_positions", m.code_cell_positions)
        if m.cell_status_positions is not None:
            self._extend(self.positions, "cell_status_positions",
                         [p.fraction for p in m.cell_status_positions])
            for status, key in _STATUS_HISTOGRAMS.items():
                self._extend(self.positions, key,
                             [p.fraction for p in m.cell_status_positions if p.status == status])
        return self

    def finalize(self, label: str = "ALL") -> CorpusSummary:
        """Deterministic summary; independent of the order notebooks were added"""
        rates = {}
        for key in RATE_KEYS:
            reason = "no executed notebooks" if key == "top_to_bottom" else "no notebooks with this measure"
            rates[key] = _rate(self.rate_counts.get(key, 0), self.rate_denominators.get(key, 0), reason)

        lint_rates = {
            category.value: _rate(
                self.lint_failed.get(category.value, 0),
                self.lint_checked.get(category.value, 0),
                "category not checked (needs the external linter bridge)",
            )
            for category in LintCategory
        }

        fives = {}
        for key in FIVE_MEASURES:
            observed = sorted(self.values.get(key, []))
            if observed:
                fives[key] = Measure(n=len(observed), five=five_number_summary(observed))
            else:
                fives[key] = Measure(n=0, reason="no observations")

        histograms = {key: position_histogram(sorted(self.positions.get(key, []))) for key in HISTOGRAM_MEASURES}

        return CorpusSummary(
            label=label,
            n_notebooks=self.n_notebooks,
            n_executed=self.n_executed,
            rate_executed=rates["executed"],
            rate_top_to_bottom=rates["top_to_bottom"],
            rate_function_def=rates["function_def"],
            rate_class_def=rates["class_def"],
            rate_local_import=rates["local_import"],
            rate_test_import=rates["test_import"],
            rate_md=rates["md"],
            rate_md_headings=rates["md_headings"],
            rate_bp4_compliant=rates["bp4_compliant"],
            rate_outputs_without_counter=rates["outputs_without_counter"],
            lint_category_rates=lint_rates,
            lint_hits=dict(sorted(self.lint_hits.items())),
            fives=fives,
            histograms=histograms,
        )


def _add_counts(a: Mapping[str, int], b: Mapping[str, int]) -> Dict[str, int]:
    return {key: a.get(key, 0) + b.get(key, 0) for key in sorted(set(a) | set(b))}


def _add_lists(a: Mapping[str, List[float]], b: Mapping[str, List[float]]) -> Dict[str, List[float]]:
    return {key: sorted(a.get(key, []) + b.get(key, [])) for key in sorted(set(a) | set(b))}


def merge(a: StatsAccumulator, b: StatsAccumulator) -> StatsAccumulator:
    """
    Combine two accumulators

    Raises:
        ConfigMismatch: accumulators were built under different configurations
    """
    if a.config_version != b.config_version or a.md_only != b.md_only:
        raise ConfigMismatch(f"Cannot merge accumulators of configs {a.config_version} and {b.config_version}")
    return StatsAccumulator(
        config_version=a.config_version,
        md_only=a.md_only,
        n_notebooks=a.n_notebooks + b.n_notebooks,
        n_executed=a.n_executed + b.n_executed,
        rate_counts=_add_counts(a.rate_counts, b.rate_counts),
        rate_denominators=_add_counts(a.rate_denominators, b.rate_denominators),
        lint_failed=_add_counts(a.lint_failed, b.lint_failed),
        lint_checked=_add_counts(a.lint_checked, b.lint_checked),
        lint_hits=_add_counts(a.lint_hits, b.lint_hits),
        values=_add_lists(a.values, b.values),
        positions=_add_lists(a.positions, b.positions),
    )


def accumulate(metrics: Iterable[NotebookMetrics], config_version: str, md_only: bool = False) -> StatsAccumulator:
    acc = StatsAccumulator.empty(config_version, md_only)
    for m in metrics:
        acc.add(m)
    return acc


def aggregate(
    metrics: Sequence[NotebookMetrics], label: str = "ALL", config_version: str = "", md_only: bool = False
) -> CorpusSummary:
    """Single-pass corpus summary"""
    return accumulate(metrics, config_version, md_only).finalize(label)


def percentile_label(p: float) -> str:
    return f"P{round(p * 100)}"


def subset_compare(
    metrics: Sequence[NotebookMetrics],
    scores: Mapping[str, float],
    percentiles: Sequence[float],
    config_version: str = "",
    md_only: bool = False,
) -> List[CorpusSummary]:
    """
    Summaries of ALL scored notebooks and of each top-percentile subset

    A notebook enters subset p when its score is >= the p-th percentile of
    all scores (same interpolation as the quartiles). Notebooks without a
    score are left out with a warning.

    Raises:
        NoScores: no notebook has a score
    """
    scored = [m for m in metrics if m.path in scores]
    missing = len(metrics) - len(scored)
    if missing:
        logger.warning(f"{missing} notebooks have no score and are left out of the comparison")
    if not scored:
        raise NoScores("No analysed notebook has a score")

    values = np.asarray([scores[m.path] for m in scored], dtype=float)
    summaries = [aggregate(scored, "ALL", config_version, md_only)]
    for p in percentiles:
        threshold = float(np.quantile(values, p))
        subset = [m for m in scored if scores[m.path] >= threshold]
        logger.info(f"{percentile_label(p)}: {len(subset)} notebooks with score >= {threshold}")
        summaries.append(aggregate(subset, percentile_label(p), config_version, md_only))
    return summaries
