"""
Tests for import/definition scanning, test detection and native lint
"""

from typing import List

import pytest

from nbpractice.core.config import MatchScope, Settings, TestProfile
from nbpractice.schemas.corpus import CorpusIndex
from nbpractice.schemas.findings import LintCategory
from nbpractice.schemas.script import DefKind, ImportOrigin, ImportRecord
from nbpractice.services.extract_service import extract_script
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
from tests.builders import build_notebook, code


def script_of(*sources: str):
    nb = build_notebook([code(source, i + 1) for i, source in enumerate(sources)])
    return extract_script(nb)


def imports_of(*sources: str) -> List[ImportRecord]:
    return scan_imports(script_of(*sources))


class TestScanImports:
    def test_plain_and_aliased(self):
        records = imports_of("import os, sys as system")
        assert [(r.module_path, r.bound_names) for r in records] == [("os", ["os"]), ("sys", ["system"])]

    def test_dotted_import_binds_top_name(self):
        (record,) = imports_of("import os.path")
        assert record.module_path == "os.path"
        assert record.bound_names == ["os"]
        assert record.top_level == "os"

    def test_from_import(self):
        (record,) = imports_of("from a.b import c as d, e")
        assert record.module_path == "a.b"
        assert record.imported_names == ["c", "e"]
        assert record.bound_names == ["d", "e"]

    def test_relative_import(self):
        (record,) = imports_of("from . import utils")
        assert record.module_path == "."
        assert record.imported_names == ["utils"]

    def test_wildcard(self):
        (record,) = imports_of("from pylab import *")
        assert record.is_wildcard
        assert record.imported_names == []

    def test_multiline_parenthesized(self):
        (record,) = imports_of("x = 1\nfrom os import (\n    path,\n    sep,\n)")
        assert record.imported_names == ["path", "sep"]
        assert (record.script_line, record.end_line) == (1, 4)

    def test_semicolon_separated(self):
        records = imports_of("import os; import sys")
        assert [(r.module_path, r.script_line) for r in records] == [("os", 0), ("sys", 0)]

    def test_ignores_strings_and_comments(self):
        assert imports_of('s = "import os"\n# import sys\nt = """\nimport re\n"""') == []

    def test_indented_import_counts(self):
        (record,) = imports_of("def f():\n    import json\n    return json")
        assert record.module_path == "json"

    def test_script_lines_span_cells(self):
        records = imports_of("x = 1", "import os")
        assert records[0].script_line == 2


class TestScanDefs:
    def test_functions_classes_nested(self):
        defs = scan_defs(script_of("def f():\n    pass\nclass A:\n    def method(self):\n        pass",
                                   "async def g():\n    pass"))
        assert [(d.kind, d.name, d.indent) for d in defs] == [
            (DefKind.FUNCTION, "f", 0),
            (DefKind.CLASS, "A", 0),
            (DefKind.FUNCTION, "method", 4),
            (DefKind.FUNCTION, "g", 0),
        ]

    def test_def_in_string_ignored(self):
        assert scan_defs(script_of('doc = """\ndef f():\n"""')) == []


class TestTestDetection:
    def strict(self, **kwargs) -> TestDetectConfig:
        return TestDetectConfig.from_settings(Settings(**kwargs))

    @pytest.mark.parametrize("source,expected", [
        ("import unittest", True),
        ("from unittest import mock", True),
        ("import pytest", True),
        ("import mock", True),
        ("from hypothesis import given", False),
        ("import nose2", True),
        ("import robot", True),
        ("import numpy", False),
        ("import latest_utils", True),
    ])
    def test_strict_profile(self, source, expected):
        assert bool(detect_test_imports(imports_of(source), self.strict())) is expected

    def test_recommended_profile_drops_false_positive(self):
        cfg = self.strict(test_profile=TestProfile.RECOMMENDED)
        assert detect_test_imports(imports_of("import latest_utils"), cfg) == []
        assert detect_test_imports(imports_of("import pytest"), cfg) != []

    def test_match_scope(self):
        records = imports_of("import mypkg.testing")
        assert detect_test_imports(records, self.strict())
        assert not detect_test_imports(records, self.strict(test_match_scope=MatchScope.TOP))


class TestImportOrigin:
    index = CorpusIndex(files=frozenset({"proj/utils.py", "proj/pkg/__init__.py"}), has_context=True)

    @pytest.mark.parametrize("source,origin", [
        ("import utils", ImportOrigin.LOCAL),
        ("from pkg import thing", ImportOrigin.LOCAL),
        ("import pkg.sub", ImportOrigin.LOCAL),
        ("import numpy", ImportOrigin.EXTERNAL_OR_STDLIB),
        ("from . import helpers", ImportOrigin.EXTERNAL_OR_STDLIB),
        ("from . import utils", ImportOrigin.LOCAL),
    ])
    def test_with_context(self, source, origin):
        (record,) = imports_of(source)
        assert classify_import_origin(record, "proj/analysis.ipynb", self.index) == origin

    def test_other_directory_is_not_local(self):
        (record,) = imports_of("import utils")
        assert classify_import_origin(record, "elsewhere/nb.ipynb", self.index) == ImportOrigin.EXTERNAL_OR_STDLIB

    def test_without_context(self):
        (record,) = imports_of("import utils")
        assert classify_import_origin(record, "proj/nb.ipynb", CorpusIndex.without_context()) == \
            ImportOrigin.UNKNOWN


LONG_TEXT = "a" * 80


class TestNativeLint:
    def test_crafted_script_exact_counts(self):
        script = script_of(
            'from os.path import *\nimport json\nimport re\ndef BadName():\n    return join("a", "b")',
            f'value = 1 \ntotal = value + 2 \nprint(total) \ntext = "{LONG_TEXT}"\nother = "{LONG_TEXT}"',
        )
        findings = lint_native(script, LintConfig())
        assert lint_counts(findings) == {
            "invalid-name": 1,
            "line-too-long": 2,
            "trailing-whitespace": 3,
            "unused-import": 2,
            "wildcard-import": 1,
        }
        unused = sorted(f.message for f in findings if f.check_id == "unused-import")
        assert unused == ["Unused import json", "Unused import re"]
        categories = {f.check_id: f.category for f in findings}
        assert categories["wildcard-import"] == LintCategory.WARNING
        assert categories["trailing-whitespace"] == LintCategory.CONVENTION

    def test_findings_sorted_by_line(self):
        findings = lint_native(script_of("import os \nx = 1"), LintConfig())
        assert [(f.script_line, f.check_id) for f in findings] == [
            (0, "trailing-whitespace"), (0, "unused-import"),
        ]

    @pytest.mark.parametrize("source,expected", [
        ("f(a ,b)", True),
        ("f(a,b)", True),
        ("f(a, b)", False),
        ("x = [1,2]", True),
        ("y = data[1,2]", False),
        ("z = f(a)[0,1]", False),
        ("for i in [1,2]: pass", True),
        ("t = (1,)", False),
        ("s = 'a,b'", False),
    ])
    def test_bad_whitespace(self, source, expected):
        counts = lint_counts(lint_native(script_of(source), LintConfig()))
        assert ("bad-whitespace" in counts) is expected

    @pytest.mark.parametrize("source,expected", [
        ("a = 1; b = 2", True),
        ("a = 1;", False),
        ("s = 'a;b'", False),
    ])
    def test_multiple_statements(self, source, expected):
        counts = lint_counts(lint_native(script_of(source), LintConfig()))
        assert ("multiple-statements" in counts) is expected

    def test_used_imports_not_flagged(self):
        script = script_of("import numpy as np\nfrom __future__ import annotations", "arr = np.array([1])")
        assert "unused-import" not in lint_counts(lint_native(script, LintConfig()))

    @pytest.mark.parametrize("source", [
        "import os; print(os.getcwd())",
        "print(os.sep); import os",
        "from json import (\n    dumps,\n); dumps({})",
    ])
    def test_use_in_same_statement_line(self, source):
        assert "unused-import" not in lint_counts(lint_native(script_of(source), LintConfig()))

    def test_other_part_of_statement_does_not_hide_own_import(self):
        findings = lint_native(script_of("import os; import sys; print(sys.argv)"), LintConfig())
        assert [f.message for f in findings if f.check_id == "unused-import"] == ["Unused import os"]

    def test_unicode_names(self):
        script = script_of("def données():\n    return 1\nclass Café:\n    pass\ndef Mauvais():\n    pass")
        assert [record.name for record in scan_defs(script)] == ["données", "Café", "Mauvais"]
        findings = [f for f in lint_native(script, LintConfig()) if f.check_id == "invalid-name"]
        assert len(findings) == 1
        assert "Mauvais" in findings[0].message

    def test_naming_styles(self):
        script = script_of("def good_name():\n    pass\nclass GoodName:\n    pass\nclass bad_class:\n    pass")
        findings = [f for f in lint_native(script, LintConfig()) if f.check_id == "invalid-name"]
        assert len(findings) == 1
        assert "bad_class" in findings[0].message

    def test_max_line_len(self):
        counts = lint_counts(lint_native(script_of("x = 'hello world'"), LintConfig(max_line_len=10)))
        assert counts == {"line-too-long": 1}

    def test_magic_lines_never_linted(self):
        assert lint_native(script_of("%time  x = 1 "), LintConfig()) == []
