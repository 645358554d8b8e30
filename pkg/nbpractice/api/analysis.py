"""
Notebook analysis endpoints
Lint a single notebook, summarise a batch, or show the extracted script
"""

import json
import logging

from fastapi import APIRouter, Depends, HTTPException

from nbpractice.api.deps import get_check_service, get_settings
from nbpractice.core.config import Settings
from nbpractice.core.exceptions import NotebookError
from nbpractice.schemas.api import ExtractResponse, NotebookPayload, StatsRequest, StatsResponse
from nbpractice.schemas.corpus import CorpusIndex
from nbpractice.schemas.notebook import Notebook
from nbpractice.schemas.report import NotebookResult
from nbpractice.services.check_service import CheckService
from nbpractice.services.corpus_service import CorpusService
from nbpractice.services.extract_service import extract_script
from nbpractice.services.notebook_service import parse_notebook
from nbpractice.services.stats_service import aggregate

logger = logging.getLogger(__name__)

router = APIRouter(tags=["analysis"])

# Starlette renamed the 422 constant; the number is stable
UNPROCESSABLE = 422


def _encode(payload: NotebookPayload) -> bytes:
    return json.dumps(payload.notebook, ensure_ascii=False).encode("utf-8")


def _parse(payload: NotebookPayload) -> Notebook:
    return parse_notebook(_encode(payload), payload.path)


def _analyze(payload: NotebookPayload, checks: CheckService, settings: Settings) -> NotebookResult:
    # Inline notebooks have no directory around them
    corpus = CorpusService(settings, checks)
    return corpus.analyze_bytes(payload.path, _encode(payload), CorpusIndex.without_context())


@router.post("/lint", response_model=NotebookResult)
async def lint_notebook(
    payload: NotebookPayload,
    checks: CheckService = Depends(get_check_service),
    settings: Settings = Depends(get_settings),
):
    """Metrics and findings for one notebook"""
    result = _analyze(payload, checks, settings)
    if result.error is not None:
        raise HTTPException(
            status_code=UNPROCESSABLE,
            detail={"type": result.error.type, "message": result.error.message},
        )
    logger.info(f"Linted {payload.path}: {len(result.findings)} findings")
    return result


@router.post("/stats", response_model=StatsResponse)
async def corpus_stats(
    request: StatsRequest,
    checks: CheckService = Depends(get_check_service),
    settings: Settings = Depends(get_settings),
):
    """Analyse a batch of notebooks and summarise the ones that parse"""
    results = sorted(
        (_analyze(payload, checks, settings) for payload in request.notebooks), key=lambda r: r.path
    )
    metrics = [result.metrics for result in results if result.metrics is not None]
    summary = aggregate(
        metrics,
        request.label,
        config_version=settings.digest(),
        md_only=settings.md_denominator.value == "md-only",
    )
    return StatsResponse(results=results, summary=summary)


@router.post("/extract", response_model=ExtractResponse)
async def extract(payload: NotebookPayload, settings: Settings = Depends(get_settings)):
    """The script the lint checks see, with its source map"""
    try:
        nb = _parse(payload)
    except NotebookError as e:
        raise HTTPException(
            status_code=UNPROCESSABLE,
            detail={"type": e.__class__.__name__, "message": e.message},
        )
    return ExtractResponse(path=nb.path, script=extract_script(nb, settings.strip_rules))
