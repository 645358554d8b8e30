"""
Bridge to an external linter
Runs a configured command over the extracted script and parses its
`line:column:code:category:message` output
"""

import logging
import os
import re
import shlex
import subprocess
import tempfile
import threading
from typing import Iterable, List, Optional, Set

from nbpractice.core.exceptions import BridgeParse, BridgeUnavailable
from nbpractice.schemas.findings import LintCategory
from nbpractice.schemas.script import ExtractedScript, LintFinding
from nbpractice.services.extract_service import is_mapped

logger = logging.getLogger(__name__)

INPUT_PLACEHOLDER = "{input}"
EXTERNAL_PREFIX = "ext:"
BRIDGE_PARSE_CHECK = "ext:bridge-parse"
BRIDGE_UNAVAILABLE_CHECK = "ext:bridge-unavailable"

# Findings about the bridge itself, not about the script
BRIDGE_DIAGNOSTICS = frozenset({BRIDGE_PARSE_CHECK, BRIDGE_UNAVAILABLE_CHECK})

CATEGORY_INITIALS = {
    "C": LintCategory.CONVENTION,
    "R": LintCategory.REFACTOR,
    "W": LintCategory.WARNING,
    "E": LintCategory.ERROR,
    "F": LintCategory.ERROR,
}

# Symbolic names and message codes refer to the same check
CHECK_ALIASES = {
    "pointless-statement": "W0104",
    "expression-not-assigned": "W0106",
    "pointless-string-statement": "W0105",
    "trailing-whitespace": "C0303",
    "line-too-long": "C0301",
    "invalid-name": "C0103",
    "unused-import": "W0611",
    "wildcard-import": "W0401",
}

_OUTPUT_LINE = re.compile(r"^(\d+):(\d+):([^:\s]+):([A-Za-z]):(.*)$")


def _expand_aliases(checks: Iterable[str]) -> Set[str]:
    expanded = set()
    reverse = {code: symbol for symbol, code in CHECK_ALIASES.items()}
    for check in checks:
        expanded.add(check)
        if check in CHECK_ALIASES:
            expanded.add(CHECK_ALIASES[check])
        if check in reverse:
            expanded.add(reverse[check])
    return expanded


def parse_output_line(line: str, script: ExtractedScript) -> LintFinding:
    """
    Parse one output line; lines are 1-based in the output, 0-based in findings

    Raises:
        BridgeParse: line does not follow the output contract
    """
    match = _OUTPUT_LINE.match(line.strip())
    if not match:
        raise BridgeParse(line)
    line_no, _column, code, initial, message = match.groups()
    category = CATEGORY_INITIALS.get(initial.upper())
    if category is None:
        raise BridgeParse(line, f"Unknown category {initial!r} in linter output")
    script_line: Optional[int] = int(line_no) - 1
    if script_line < 0 or not is_mapped(script, script_line):
        script_line = None
    return LintFinding(
        check_id=f"{EXTERNAL_PREFIX}{code}",
        category=category,
        script_line=script_line,
        message=message.strip(),
    )


class LinterBridge:
    """Runs the external linter with a cap on concurrent subprocesses"""

    def __init__(
        self,
        command: str,
        ignored_checks: Iterable[str] = ("pointless-statement",),
        timeout: float = 60.0,
        max_procs: Optional[int] = None,
    ):
        self.command = command
        self.ignored = _expand_aliases(ignored_checks)
        self.timeout = timeout
        self._slots = threading.BoundedSemaphore(max_procs or os.cpu_count() or 1)
        logger.info(f"Linter bridge ready: {command}")

    def _argv(self, script_path: str) -> List[str]:
        argv = shlex.split(self.command)
        if any(INPUT_PLACEHOLDER in arg for arg in argv):
            return [arg.replace(INPUT_PLACEHOLDER, script_path) for arg in argv]
        return argv + [script_path]

    def _spawn(self, script_path: str) -> str:
        argv = self._argv(script_path)
        try:
            with self._slots:
                completed = subprocess.run(
                    argv,
                    capture_output=True,
                    text=True,
                    encoding="utf-8",
                    errors="replace",
                    timeout=self.timeout,
                )
        except (OSError, subprocess.TimeoutExpired) as e:
            raise BridgeUnavailable(f"Could not run {argv[0]}: {e}") from e
        return completed.stdout

    def run(self, script: ExtractedScript) -> List[LintFinding]:
        """
        Lint the script; unparseable output lines become warning findings

        Raises:
            BridgeUnavailable: the command could not be spawned
        """
        if not any(script.text_lines[entry.script_line].strip() for entry in script.map_entries):
            return []

        fd, script_path = tempfile.mkstemp(suffix=".py", prefix="nbpractice-")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write("\n".join(script.text_lines) + "\n")
            output = self._spawn(script_path)
        finally:
            os.unlink(script_path)

        findings: List[LintFinding] = []
        for raw_line in output.splitlines():
            if not raw_line.strip() or raw_line.startswith("*"):
                continue
            try:
                finding = parse_output_line(raw_line, script)
            except BridgeParse as e:
                logger.warning(str(e))
                findings.append(LintFinding(
                    check_id=BRIDGE_PARSE_CHECK,
                    category=LintCategory.WARNING,
                    script_line=None,
                    message=str(e),
                ))
                continue
            code = finding.check_id[len(EXTERNAL_PREFIX):]
            if code in self.ignored:
                continue
            findings.append(finding)
        return sorted(findings, key=LintFinding.sort_key)


def run_external_linter(
    script: ExtractedScript,
    cmd: str,
    ignored_checks: Iterable[str] = ("pointless-statement",),
    timeout: float = 60.0,
) -> List[LintFinding]:
    """One-off bridge run"""
    return LinterBridge(cmd, ignored_checks=ignored_checks, timeout=timeout, max_procs=1).run(script)
