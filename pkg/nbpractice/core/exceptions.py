"""
Exception types raised by the analysis services
"""

from typing import Optional


class NbPracticeError(Exception):
    """Base class for every error raised by nbpractice"""


class NotebookError(NbPracticeError):
    """A notebook file could not be turned into a Notebook"""

    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}")


class MalformedJson(NotebookError):
    """File content is not UTF-8 JSON"""


class UnsupportedFormat(NotebookError):
    """nbformat major version missing or older than 4"""


class NotANotebook(NotebookError):
    """JSON document without a usable cells array"""


class NotACodeCell(NbPracticeError):
    """Operation needs a code cell"""


class IndexOutOfRange(NbPracticeError):
    """Cell index outside the code-cell range"""


class UnmappedLine(NbPracticeError):
    """Script line is a separator or a blanked line"""

    def __init__(self, script_line: int):
        self.script_line = script_line
        super().__init__(f"Script line {script_line} has no source cell")


class BridgeUnavailable(NbPracticeError):
    """External linter could not be spawned"""


class BridgeParse(NbPracticeError):
    """External linter emitted a line outside the output contract"""

    def __init__(self, line: str, reason: Optional[str] = None):
        self.line = line
        super().__init__(reason or f"Unparseable linter output: {line!r}")


class EmptyInput(NbPracticeError):
    """Summary requested over no values"""


class OutOfRange(NbPracticeError):
    """Position fraction outside [0, 1]"""


class ConfigMismatch(NbPracticeError):
    """Accumulators built under different configurations"""


class NoScores(NbPracticeError):
    """Subset comparison without any usable score"""


class NoInputs(NbPracticeError):
    """Input paths hold no notebooks"""


class ConfigError(NbPracticeError):
    """Configuration file or flags are invalid"""
