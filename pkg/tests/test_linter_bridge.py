"""
Tests for the external linter bridge
"""

import shlex
import sys
import textwrap

import pytest

from nbpractice.core.exceptions import BridgeParse, BridgeUnavailable
from nbpractice.schemas.findings import LintCategory
from nbpractice.services.check_service import CheckService
from nbpractice.services.extract_service import extract_script
from nbpractice.services.linter_bridge import (
    BRIDGE_PARSE_CHECK,
    LinterBridge,
    parse_output_line,
    run_external_linter,
)
from tests.builders import build_notebook, code


@pytest.fixture
def script():
    # script lines: 0 "import os", 1 "x = 1", 2 separator, 3 "print(x)"
    return extract_script(build_notebook([code("import os\nx = 1", 1), code("print(x)", 2)]))


@pytest.fixture
def fake_linter(tmp_path):
    """A stand-in linter that prints fixed output lines"""
    helper = tmp_path / "fake_linter.py"
    helper.write_text(textwrap.dedent("""
        import sys
        print("************* Module fake")
        print("1:0:C0114:C:Missing module docstring")
        print("2:0:W0104:W:Statement seems to have no effect")
        print("4:0:E0602:E:Undefined variable 'y'")
        print("this is not linter output")
    """))
    return f"{shlex.quote(sys.executable)} {shlex.quote(str(helper))} {{input}}"


class TestParseOutputLine:
    def test_one_based_to_zero_based(self, script):
        finding = parse_output_line("2:0:C0303:C:Trailing whitespace", script)
        assert finding.check_id == "ext:C0303"
        assert finding.category == LintCategory.CONVENTION
        assert finding.script_line == 1
        assert finding.message == "Trailing whitespace"

    @pytest.mark.parametrize("initial,category", [
        ("R", LintCategory.REFACTOR),
        ("W", LintCategory.WARNING),
        ("E", LintCategory.ERROR),
        ("F", LintCategory.ERROR),
    ])
    def test_categories(self, script, initial, category):
        assert parse_output_line(f"1:0:X0001:{initial}:msg", script).category == category

    def test_separator_line_unmapped(self, script):
        assert parse_output_line("3:0:C0303:C:Trailing whitespace", script).script_line is None

    @pytest.mark.parametrize("line", ["hello", "1:0:X1:Z:unknown category", "x:0:C1:C:msg"])
    def test_contract_violations(self, script, line):
        with pytest.raises(BridgeParse):
            parse_output_line(line, script)


class TestLinterBridge:
    def test_run_with_fake_linter(self, script, fake_linter):
        findings = LinterBridge(fake_linter, ignored_checks=["pointless-statement"], max_procs=2).run(script)
        located = {(f.check_id, f.script_line) for f in findings}
        assert ("ext:C0114", 0) in located
        assert ("ext:E0602", 3) in located
        assert not any(f.check_id == "ext:W0104" for f in findings)
        parse_errors = [f for f in findings if f.check_id == BRIDGE_PARSE_CHECK]
        assert len(parse_errors) == 1
        assert parse_errors[0].category == LintCategory.WARNING
        assert parse_errors[0].script_line is None

    def test_missing_command(self, script):
        with pytest.raises(BridgeUnavailable):
            LinterBridge("definitely-not-a-linter-8d1f").run(script)

    def test_empty_script_skips_linter(self):
        empty = extract_script(build_notebook([code("%time f()")]))
        assert LinterBridge("definitely-not-a-linter-8d1f").run(empty) == []

    def test_bridge_enables_all_categories(self, make_settings, fake_linter):
        settings = make_settings(bridge_command=fake_linter)
        metrics, findings = CheckService(settings).analyze_notebook(
            build_notebook([code("import os\nx = 1", 1), code("print(x)", 2)])
        )
        assert set(metrics.lint_category_failed) == {"convention", "error", "refactor", "warning"}
        assert metrics.lint_category_failed["error"] is True
        assert metrics.lint_category_failed["refactor"] is False
        error_finding = next(f for f in findings if f.check_id == "ext:E0602")
        assert (error_finding.cell_index, error_finding.cell_line) == (1, 0)

    def test_unavailable_bridge_keeps_native_categories(self, make_settings):
        settings = make_settings(bridge_command="definitely-not-a-linter-8d1f")
        metrics, findings = CheckService(settings).analyze_notebook(build_notebook([code("x = 1", 1)]))
        assert set(metrics.lint_category_failed) == {"convention", "warning"}
        assert metrics.lint_category_failed["warning"] is False
        assert any(f.check_id == "ext:bridge-unavailable" for f in findings)

    def test_one_off_run_uses_default_ignores(self, script, fake_linter):
        findings = run_external_linter(script, fake_linter)
        assert ("ext:E0602", 3) in {(f.check_id, f.script_line) for f in findings}
        assert not any(f.check_id == "ext:W0104" for f in findings)

    def test_score_footer_does_not_count_as_lint(self, tmp_path, make_settings):
        helper = tmp_path / "scoring_linter.py"
        helper.write_text(textwrap.dedent("""
            print("1:9:C0303:C:Trailing whitespace")
            print("")
            print("-----------------------------------")
            print("Your code has been rated at 5.00/10")
        """))
        command = f"{shlex.quote(sys.executable)} {shlex.quote(str(helper))} {{input}}"
        metrics, findings = CheckService(make_settings(bridge_command=command)).analyze_notebook(
            build_notebook([code("x = 1", 1)])
        )
        assert metrics.lint_category_failed == {
            "convention": True, "error": False, "refactor": False, "warning": False,
        }
        assert metrics.lint_counts == {"ext:C0303": 1}
        assert sum(1 for f in findings if f.check_id == BRIDGE_PARSE_CHECK) == 2
