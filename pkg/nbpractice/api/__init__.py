"""
API routes for nbpractice
"""

from .analysis import router as analysis_router
from .checks import router as checks_router

__all__ = ["analysis_router", "checks_router"]
