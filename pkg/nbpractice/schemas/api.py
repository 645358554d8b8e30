"""
Request and response bodies of the HTTP service
"""

from typing import Any, Dict, List

from pydantic import BaseModel, ConfigDict, Field

from nbpractice.schemas.report import NotebookResult
from nbpractice.schemas.script import ExtractedScript
from nbpractice.schemas.summary import CorpusSummary


class NotebookPayload(BaseModel):
    """A notebook document sent inline"""
    path: str = Field(default="request.ipynb", description="Name used in findings and reports")
    notebook: Dict[str, Any] = Field(..., description="The .ipynb JSON document")

    model_config = ConfigDict(json_schema_extra={
        "example": {
            "path": "analysis.ipynb",
            "notebook": {
                "nbformat": 4,
                "nbformat_minor": 5,
                "metadata": {"kernelspec": {"language": "python"}},
                "cells": [
                    {"cell_type": "code", "source": "import os\n", "execution_count": 1,
                     "metadata": {}, "outputs": []},
                ],
            },
        }
    })


class StatsRequest(BaseModel):
    notebooks: List[NotebookPayload] = Field(..., min_length=1)
    label: str = "ALL"


class StatsResponse(BaseModel):
    results: List[NotebookResult]
    summary: CorpusSummary


class ExtractResponse(BaseModel):
    path: str
    script: ExtractedScript
