"""
Tests for corpus statistics
"""

import random

import pytest

from nbpractice.core.exceptions import ConfigMismatch, EmptyInput, NoScores, OutOfRange
from nbpractice.schemas.metrics import NotebookMetrics, StatusPosition
from nbpractice.schemas.notebook import CellStatus
from nbpractice.services.check_service import analyze_notebook
from nbpractice.services.stats_service import (
    StatsAccumulator,
    accumulate,
    aggregate,
    five_number_summary,
    merge,
    percentile_label,
    position_histogram,
    subset_compare,
)
from tests.builders import build_notebook, code, md
from tests.oracle import reference_quantile


def make_metrics(path="nb.ipynb", **fields) -> NotebookMetrics:
    base = dict(path=path, code_cells=2, md_cells=1, raw_cells=0, executed=True)
    base.update(fields)
    return NotebookMetrics(**base)


def random_metrics(rng: random.Random, index: int) -> NotebookMetrics:
    code_cells = rng.randint(0, 6)
    md_cells = rng.randint(0, 3)
    executed = rng.random() < 0.7
    statuses = [rng.choice(list(CellStatus)) for _ in range(code_cells)]
    return NotebookMetrics(
        path=f"nb{index:03d}.ipynb",
        code_cells=code_cells,
        md_cells=md_cells,
        raw_cells=0,
        executed=executed,
        import_positions=[rng.random() for _ in range(rng.randint(0, 3))],
        bp4_compliant=rng.random() < 0.5,
        top_to_bottom=executed and rng.random() < 0.5,
        has_function_def=rng.random() < 0.5,
        has_class_def=rng.random() < 0.3,
        has_test_import=rng.random() < 0.2,
        lint_category_failed={"convention": rng.random() < 0.8, "warning": rng.random() < 0.5},
        lint_counts={"trailing-whitespace": rng.randint(1, 4)},
        has_markdown=md_cells > 0,
        meaningful_md_words=rng.randint(0, 40) if md_cells else 0,
        meaningful_md_lines=rng.randint(0, 8) if md_cells else 0,
        md_heading_count=rng.randint(0, 2),
        heading_word_counts=[rng.randint(1, 5)],
        md_heading_words=rng.randint(1, 5),
        empty_cells=statuses.count(CellStatus.EMPTY),
        non_executed_cells=statuses.count(CellStatus.NON_EXECUTED),
        cell_status_positions=[
            StatusPosition(fraction=i / max(1, code_cells - 1), status=status)
            for i, status in enumerate(statuses)
        ],
        total_lines=rng.randint(0, 200),
        code_lines=rng.randint(0, 100),
        lines_per_cell=[rng.randint(0, 30) for _ in range(code_cells + md_cells)],
    )


@pytest.fixture
def corpus():
    rng = random.Random(7)
    return [random_metrics(rng, i) for i in range(40)]


class TestFiveNumberSummary:
    def test_quartiles_interpolate(self):
        five = five_number_summary([1, 2, 3, 4])
        assert five.as_list() == [1.0, 1.75, 2.5, 3.25, 4.0]

    def test_single_value(self):
        assert five_number_summary([7]).as_list() == [7.0] * 5

    def test_empty(self):
        with pytest.raises(EmptyInput):
            five_number_summary([])

    def test_matches_reference_on_random_lists(self):
        rng = random.Random(11)
        for size in range(1, 501):
            values = [rng.uniform(-50, 50) for _ in range(size)]
            five = five_number_summary(values).as_list()
            expected = [reference_quantile(values, p) for p in (0.0, 0.25, 0.5, 0.75, 1.0)]
            assert five == pytest.approx(expected, rel=1e-9, abs=1e-9)
            assert five == sorted(five)


class TestPositionHistogram:
    def test_bins_and_thirds(self):
        histogram = position_histogram([0.0, 0.05, 0.1, 0.95, 1.0])
        assert histogram.counts == [2, 1, 0, 0, 0, 0, 0, 0, 0, 2]
        assert histogram.thirds == [3, 0, 2]
        assert histogram.total == 5

    def test_third_boundaries(self):
        assert position_histogram([1 / 3, 0.5, 2 / 3, 0.7]).thirds == [1, 2, 1]

    def test_empty(self):
        histogram = position_histogram([])
        assert histogram.counts == [0] * 10
        assert histogram.thirds == [0, 0, 0]

    @pytest.mark.parametrize("values", [[-0.1], [1.01], [0.5, float("nan")]])
    def test_out_of_range(self, values):
        with pytest.raises(OutOfRange):
            position_histogram(values)


class TestAggregate:
    def test_rates(self):
        metrics = [
            make_metrics("a.ipynb", executed=True, top_to_bottom=True, has_markdown=True),
            make_metrics("b.ipynb", executed=True, top_to_bottom=False, has_markdown=False),
            make_metrics("c.ipynb", executed=False, top_to_bottom=False, has_markdown=True),
        ]
        summary = aggregate(metrics)
        assert summary.n_notebooks == 3
        assert summary.n_executed == 2
        assert (summary.rate_executed.count, summary.rate_executed.denominator) == (2, 3)
        assert (summary.rate_top_to_bottom.count, summary.rate_top_to_bottom.denominator) == (1, 2)
        assert summary.rate_top_to_bottom.value == 0.5
        assert summary.rate_md.count == 2

    def test_top_to_bottom_undefined_without_executed(self):
        summary = aggregate([make_metrics(executed=False, top_to_bottom=False)])
        assert summary.rate_top_to_bottom.value is None
        assert summary.rate_top_to_bottom.reason == "no executed notebooks"

    def test_unchecked_lint_categories_are_undefined(self):
        summary = aggregate([make_metrics(lint_category_failed={"convention": True, "warning": False})])
        assert summary.lint_category_rates["convention"].value == 1.0
        assert summary.lint_category_rates["warning"].value == 0.0
        for category in ("error", "refactor"):
            rate = summary.lint_category_rates[category]
            assert rate.value is None
            assert "not checked" in rate.reason

    def test_empty_corpus(self):
        summary = aggregate([])
        assert summary.n_notebooks == 0
        assert summary.rate_executed.value is None
        assert all(measure.n == 0 and measure.five is None for measure in summary.fives.values())
        assert all(histogram.total == 0 for histogram in summary.histograms.values())

    def test_md_only_denominator(self):
        metrics = [
            make_metrics("a.ipynb", code_cells=10, md_cells=0, meaningful_md_words=0),
            make_metrics("b.ipynb", code_cells=4, md_cells=2, meaningful_md_words=12),
        ]
        everything = aggregate(metrics)
        md_only = aggregate(metrics, md_only=True)
        assert everything.fives["code_cells"].n == 2
        assert md_only.fives["code_cells"].n == 1
        assert md_only.fives["code_cells"].five.median == 4.0
        assert md_only.fives["meaningful_md_words"].five.max == 12.0
        assert md_only.fives["cells_per_notebook"].n == 2

    def test_status_histograms(self):
        positions = [
            StatusPosition(fraction=0.0, status=CellStatus.EXECUTED),
            StatusPosition(fraction=0.5, status=CellStatus.EMPTY),
            StatusPosition(fraction=1.0, status=CellStatus.NON_EXECUTED),
        ]
        summary = aggregate([make_metrics(cell_status_positions=positions)])
        assert summary.histograms["cell_status_positions"].total == 3
        assert summary.histograms["empty_cell_positions"].counts[5] == 1
        assert summary.histograms["non_executed_cell_positions"].thirds == [0, 0, 1]

    def test_from_analysed_notebooks(self, settings):
        nb = build_notebook([md("# Title"), code("import os", 1), code("def f():\n    return os.sep", 2)])
        metrics, _ = analyze_notebook(nb, settings)
        summary = aggregate([metrics])
        assert summary.rate_function_def.value == 1.0
        assert summary.rate_local_import.denominator == 0
        assert summary.fives["lines_per_notebook"].five.max == 4.0
        assert summary.histograms["import_positions"].counts[0] == 1


class TestMerge:
    def test_any_partition_matches_single_pass(self, corpus):
        expected = aggregate(corpus, config_version="v1")
        rng = random.Random(3)
        for _ in range(100):
            shuffled = corpus[:]
            rng.shuffle(shuffled)
            cuts = sorted(rng.randint(0, len(shuffled)) for _ in range(rng.randint(1, 6)))
            bounds = [0] + cuts + [len(shuffled)]
            shards = [accumulate(shuffled[lo:hi], "v1") for lo, hi in zip(bounds, bounds[1:])]
            rng.shuffle(shards)
            merged = shards[0]
            for shard in shards[1:]:
                merged = merge(merged, shard) if rng.random() < 0.5 else merge(shard, merged)
            assert merged.finalize() == expected

    def test_merge_order_irrelevant(self, corpus):
        left, right = accumulate(corpus[:15], "v1"), accumulate(corpus[15:], "v1")
        assert merge(left, right).finalize() == merge(right, left).finalize()

    def test_empty_is_identity(self, corpus):
        acc = accumulate(corpus, "v1")
        assert merge(acc, StatsAccumulator.empty("v1")).finalize() == acc.finalize()

    def test_config_mismatch(self):
        with pytest.raises(ConfigMismatch):
            merge(StatsAccumulator.empty("v1"), StatsAccumulator.empty("v2"))
        with pytest.raises(ConfigMismatch):
            merge(StatsAccumulator.empty("v1"), StatsAccumulator.empty("v1", md_only=True))


class TestSubsetCompare:
    def test_percentile_subset_sizes(self):
        metrics = [make_metrics(f"nb{i:03d}.ipynb") for i in range(1, 101)]
        scores = {m.path: float(i) for i, m in enumerate(metrics, start=1)}
        summaries = subset_compare(metrics, scores, [0.75, 0.90])
        assert [s.label for s in summaries] == ["ALL", "P75", "P90"]
        assert [s.n_notebooks for s in summaries] == [100, 25, 10]

    def test_unscored_notebooks_left_out(self):
        metrics = [make_metrics("a.ipynb"), make_metrics("b.ipynb")]
        (everything,) = subset_compare(metrics, {"a.ipynb": 3.0}, [])
        assert everything.n_notebooks == 1

    def test_no_scores(self):
        with pytest.raises(NoScores):
            subset_compare([make_metrics("a.ipynb")], {"other.ipynb": 1.0}, [0.9])

    def test_labels(self):
        assert percentile_label(0.75) == "P75"
        assert percentile_label(0.9) == "P90"
