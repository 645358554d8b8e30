"""
Best-practice catalog endpoints
"""

from typing import List

from fastapi import APIRouter, Depends, HTTPException, status

from nbpractice.core.config import Settings
from nbpractice.core.registry import REGISTRY, REGISTRY_BY_ID
from nbpractice.schemas.registry import RegistryEntry
from nbpractice.api.deps import get_settings

router = APIRouter(prefix="/checks", tags=["checks"])


@router.get("", response_model=List[RegistryEntry])
async def list_checks():
    """All catalog best practices, operationalized or not"""
    return REGISTRY


@router.get("/enabled", response_model=List[str])
async def enabled_checks(settings: Settings = Depends(get_settings)):
    """Practices this server evaluates"""
    return settings.enabled_checks


@router.get("/{bp_id}", response_model=RegistryEntry)
async def get_check(bp_id: str):
    entry = REGISTRY_BY_ID.get(bp_id.upper())
    if entry is None:
        raise HTTPException(status_code=status.HTTP_404_NOT_FOUND, detail=f"Unknown best practice {bp_id}")
    return entry
