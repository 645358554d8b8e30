"""
Shared route dependencies
"""

from fastapi import Request

from nbpractice.core.config import Settings
from nbpractice.services.check_service import CheckService


def get_settings(request: Request) -> Settings:
    return request.app.state.settings


def get_check_service(request: Request) -> CheckService:
    return request.app.state.check_service
