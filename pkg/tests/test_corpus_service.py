"""
Tests for corpus discovery, dedup and analysis
"""

from pathlib import Path

import pytest

from nbpractice.core.exceptions import NoInputs
from nbpractice.services.corpus_service import (
    ANALYSIS_ERROR,
    CorpusService,
    analyze_corpus,
    discover_inputs,
    read_and_dedup,
)
from nbpractice.services.report_service import build_report, report_to_json
from nbpractice.services.stats_service import aggregate
from tests.builders import code, notebook_bytes
from tests.oracle import reference_measures, reference_summary

CORPUS_NOTEBOOKS = [
    "classes_and_tests.ipynb",
    "clean_executed.ipynb",
    "duplicate_of_clean.ipynb",
    "empty_cells.ipynb",
    "late_imports.ipynb",
    "magics.ipynb",
    "markdown_only.ipynb",
    "nested/deep_notebook.ipynb",
    "never_run.ipynb",
    "out_of_order.ipynb",
    "r_kernel.ipynb",
    "uses_local_module.ipynb",
]


def relative(paths, root: Path):
    return [Path(p).relative_to(root).as_posix() for p in paths]


class TestDiscoverInputs:
    def test_walks_directories(self, corpus_dir):
        notebooks, index = discover_inputs([corpus_dir])
        assert relative(notebooks, corpus_dir) == CORPUS_NOTEBOOKS
        assert index.has_context
        assert (corpus_dir / "utils.py").as_posix() in index.files
        assert (corpus_dir / "nested" / "helpers" / "__init__.py").as_posix() in index.files

    def test_single_file_indexes_its_directory(self, corpus_dir):
        notebooks, index = discover_inputs([corpus_dir / "uses_local_module.ipynb"])
        assert len(notebooks) == 1
        assert (corpus_dir / "utils.py").as_posix() in index.files

    def test_skips_checkpoints(self, tmp_path, corpus_dir):
        checkpoints = tmp_path / ".ipynb_checkpoints"
        checkpoints.mkdir()
        (checkpoints / "a-checkpoint.ipynb").write_bytes((corpus_dir / "never_run.ipynb").read_bytes())
        (tmp_path / "a.ipynb").write_bytes((corpus_dir / "never_run.ipynb").read_bytes())
        notebooks, _ = discover_inputs([tmp_path])
        assert relative(notebooks, tmp_path) == ["a.ipynb"]

    def test_no_inputs(self, tmp_path):
        (tmp_path / "notes.txt").write_text("not a notebook")
        with pytest.raises(NoInputs):
            discover_inputs([tmp_path])


class TestReadAndDedup:
    def test_keeps_smallest_path(self, corpus_dir):
        notebooks, _ = discover_inputs([corpus_dir])
        kept, dedup_log, unreadable = read_and_dedup(notebooks)
        assert len(kept) == len(CORPUS_NOTEBOOKS) - 1
        assert unreadable == []
        (entry,) = dedup_log
        assert Path(entry.kept).name == "clean_executed.ipynb"
        assert Path(entry.dropped).name == "duplicate_of_clean.ipynb"

    def test_unreadable_file(self, tmp_path):
        kept, _, unreadable = read_and_dedup([(tmp_path / "missing.ipynb").as_posix()])
        assert kept == []
        assert unreadable[0].error.type == "ReadError"


class TestCorpusService:
    @pytest.fixture
    def run(self, corpus_dir, settings):
        return analyze_corpus([corpus_dir], settings)

    def test_matches_reference_measures(self, run):
        assert len(run.results) == len(CORPUS_NOTEBOOKS) - 1
        for result in run.results:
            assert result.error is None, result.path
            expected = reference_measures(result.path)
            actual = result.metrics.model_dump()
            for key, value in expected.items():
                assert actual[key] == value, f"{result.path}: {key}"

    def test_selected_measures(self, run, corpus_dir):
        by_name = {Path(r.path).relative_to(corpus_dir).as_posix(): r.metrics for r in run.results}
        assert by_name["uses_local_module.ipynb"].has_local_import is True
        assert by_name["nested/deep_notebook.ipynb"].has_local_import is True
        assert by_name["clean_executed.ipynb"].has_local_import is False
        assert by_name["r_kernel.ipynb"].skipped == ["BP4", "BP6", "BP7", "BP9"]
        assert by_name["late_imports.ipynb"].bp4_compliant is False
        assert by_name["markdown_only.ipynb"].code_cells == 0

    def test_summary_over_fixture_corpus(self, run):
        summary = aggregate(run.metrics)
        assert summary.n_notebooks == 11
        assert summary.n_executed == 9
        # executed: clean, classes, empty_cells, late, magics, local, r_kernel, deep; out_of_order fails
        assert (summary.rate_top_to_bottom.count, summary.rate_top_to_bottom.denominator) == (8, 9)
        assert summary.rate_local_import.denominator == 10
        assert summary.rate_local_import.count == 2
        assert summary.fives["empty_cells"].five.max == 2.0

    def test_summary_matches_reference_summary(self, run):
        summary = aggregate(run.metrics)
        expected = reference_summary([result.path for result in run.results])
        assert (summary.n_notebooks, summary.n_executed) == (expected["n_notebooks"], expected["n_executed"])
        for key, (count, denominator) in expected["rates"].items():
            rate = getattr(summary, f"rate_{key}")
            assert (rate.count, rate.denominator) == (count, denominator), key
            assert rate.value == count / denominator, key
        for key, five in expected["fives"].items():
            measure = summary.fives[key]
            assert measure.n > 0, key
            assert measure.five.as_list() == pytest.approx(five, rel=0, abs=1e-9), key
        for key, (counts, thirds) in expected["histograms"].items():
            assert summary.histograms[key].counts == counts, key
            assert summary.histograms[key].thirds == thirds, key

    def test_parse_errors_recorded(self, broken_dir, settings):
        run = CorpusService(settings).run([broken_dir])
        errors = {Path(r.path).name: r.error.type for r in run.results if r.error}
        assert errors == {"malformed.ipynb": "MalformedJson", "old_format.ipynb": "UnsupportedFormat"}
        assert len(run.metrics) == 1

    def test_timing_recorded(self, run):
        assert set(run.timing) == {"discover_seconds", "analyze_seconds"}

    def test_parallel_run_is_byte_identical(self, corpus_dir, make_settings):
        reports = []
        for jobs in (1, 8):
            settings = make_settings(jobs=jobs)
            run = CorpusService(settings).run([corpus_dir])
            reports.append(report_to_json(build_report(settings, run, [aggregate(run.metrics)])))
        assert reports[0] == reports[1]


class TestAnalysisFailures:
    def test_unicode_definitions_analysed(self, tmp_path, settings):
        (tmp_path / "a.ipynb").write_bytes(notebook_bytes([code("def données():\n    return 1", 1)]))
        (tmp_path / "b.ipynb").write_bytes(notebook_bytes([code("x = 1", 1)]))
        run = CorpusService(settings).run([tmp_path])
        assert [r.error for r in run.results] == [None, None]
        assert run.results[0].metrics.has_function_def is True

    def test_unexpected_error_stays_with_its_notebook(self, tmp_path, settings, monkeypatch):
        (tmp_path / "a.ipynb").write_bytes(notebook_bytes([code("x = 1", 1)]))
        (tmp_path / "b.ipynb").write_bytes(notebook_bytes([code("y = 2", 1)]))
        service = CorpusService(settings)
        original = service.checks.analyze_notebook

        def flaky(nb, corpus_index):
            if nb.path.endswith("a.ipynb"):
                raise RuntimeError("boom")
            return original(nb, corpus_index)

        monkeypatch.setattr(service.checks, "analyze_notebook", flaky)
        run = service.run([tmp_path])
        assert run.results[0].error.type == ANALYSIS_ERROR
        assert run.results[0].error.message == "RuntimeError: boom"
        assert run.results[1].error is None
        assert len(run.metrics) == 1
