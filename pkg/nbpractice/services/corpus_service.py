"""
Corpus ingestion service
Discovers notebooks, drops byte-identical duplicates and analyses the rest
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from nbpractice.core.config import Settings
from nbpractice.core.exceptions import NbPracticeError, NoInputs
from nbpractice.schemas.corpus import CorpusIndex, CorpusRun
from nbpractice.schemas.report import DedupEntry, NotebookErrorInfo, NotebookResult
from nbpractice.services.check_service import CheckService
from nbpractice.services.notebook_service import content_hash, parse_notebook

logger = logging.getLogger(__name__)

NOTEBOOK_SUFFIX = ".ipynb"
CHECKPOINT_DIR = ".ipynb_checkpoints"
ANALYSIS_ERROR = "AnalysisError"


def _skip(path: Path) -> bool:
    return CHECKPOINT_DIR in path.parts


def discover_inputs(paths: Iterable[Path]) -> Tuple[List[str], CorpusIndex]:
    """
    Notebook paths under the given files and directories, plus the index of
    Python modules next to them

    Directories are walked recursively. For a single notebook argument the
    index covers its own directory (`*.py` and `*/__init__.py`).

    Raises:
        NoInputs: nothing to analyse
    """
    notebooks = set()
    modules = set()
    for raw in paths:
        path = Path(raw)
        if path.is_dir():
            notebooks.update(p.as_posix() for p in path.rglob(f"*{NOTEBOOK_SUFFIX}") if p.is_file() and not _skip(p))
            modules.update(p.as_posix() for p in path.rglob("*.py") if p.is_file() and not _skip(p))
        elif path.is_file() and path.suffix == NOTEBOOK_SUFFIX:
            notebooks.add(path.as_posix())
            parent = path.parent
            modules.update(p.as_posix() for p in parent.glob("*.py") if p.is_file())
            modules.update(p.as_posix() for p in parent.glob("*/__init__.py") if p.is_file())
        else:
            logger.warning(f"Skipping {path}: not a notebook or directory")

    if not notebooks:
        raise NoInputs("No notebooks found in the given paths")
    logger.info(f"Discovered {len(notebooks)} notebooks and {len(modules)} python modules")
    return sorted(notebooks), CorpusIndex(files=frozenset(modules), has_context=True)


def read_and_dedup(
    notebook_paths: Sequence[str],
) -> Tuple[List[Tuple[str, bytes]], List[DedupEntry], List[NotebookResult]]:
    """
    Read every file once and keep the lexicographically smallest path of
    each set of byte-identical files

    Returns (kept path/bytes pairs, dedup log, results for unreadable files).
    """
    kept: List[Tuple[str, bytes]] = []
    dedup_log: List[DedupEntry] = []
    unreadable: List[NotebookResult] = []
    seen: Dict[str, str] = {}

    for path in sorted(notebook_paths):
        try:
            data = Path(path).read_bytes()
        except OSError as e:
            logger.error(f"Cannot read {path}: {e}")
            unreadable.append(NotebookResult(
                path=path, error=NotebookErrorInfo(type="ReadError", message=str(e)),
            ))
            continue
        digest = content_hash(data)
        if digest in seen:
            logger.info(f"Dropping duplicate {path} (same content as {seen[digest]})")
            dedup_log.append(DedupEntry(dropped=path, kept=seen[digest], content_hash=digest))
            continue
        seen[digest] = path
        kept.append((path, data))
    return kept, dedup_log, unreadable


class CorpusService:
    """Runs the check engine over a corpus, optionally in parallel"""

    def __init__(self, settings: Settings, check_service: Optional[CheckService] = None):
        self.settings = settings
        self.checks = check_service or CheckService(settings)

    def analyze_bytes(self, path: str, data: bytes, corpus_index: CorpusIndex) -> NotebookResult:
        """Parse and analyse one notebook; failures become an error result"""
        try:
            nb = parse_notebook(data, path)
            metrics, findings = self.checks.analyze_notebook(nb, corpus_index)
        except NbPracticeError as e:
            logger.warning(f"{path}: {e}")
            return NotebookResult(
                path=path,
                content_hash=content_hash(data),
                error=NotebookErrorInfo(type=e.__class__.__name__, message=getattr(e, "message", str(e))),
            )
        except Exception as e:
            logger.exception(f"{path}: analysis failed")
            return NotebookResult(
                path=path,
                content_hash=content_hash(data),
                error=NotebookErrorInfo(type=ANALYSIS_ERROR, message=f"{e.__class__.__name__}: {e}"),
            )
        return NotebookResult(path=path, content_hash=nb.content_hash, metrics=metrics, findings=findings)

    def run(self, paths: Iterable[Path]) -> CorpusRun:
        """
        Discover, dedup and analyse

        Results do not depend on `jobs`: they are sorted by path before
        anything downstream sees them.
        """
        started = time.perf_counter()
        notebook_paths, corpus_index = discover_inputs(paths)
        kept, dedup_log, unreadable = read_and_dedup(notebook_paths)
        discovered = time.perf_counter()

        jobs = max(1, self.settings.jobs)
        if jobs == 1:
            results = [self.analyze_bytes(path, data, corpus_index) for path, data in kept]
        else:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(lambda item: self.analyze_bytes(item[0], item[1], corpus_index), kept))
        finished = time.perf_counter()

        results = sorted(results + unreadable, key=lambda result: result.path)
        failed = sum(1 for result in results if result.error is not None)
        logger.info(f"Analysed {len(results)} notebooks ({failed} failed, {len(dedup_log)} duplicates dropped)")
        return CorpusRun(
            results=results,
            dedup_log=dedup_log,
            timing={"discover_seconds": discovered - started, "analyze_seconds": finished - discovered},
        )


def analyze_corpus(paths: Iterable[Path], settings: Settings) -> CorpusRun:
    return CorpusService(settings).run(paths)
