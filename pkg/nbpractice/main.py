"""
nbpractice - HTTP service
"""

import logging
from typing import Optional

import uvicorn
from fastapi import FastAPI

from nbpractice import __version__
from nbpractice.api import analysis_router, checks_router
from nbpractice.core.config import Settings, load_settings
from nbpractice.core.log import configure_logging
from nbpractice.services.check_service import CheckService

logger = logging.getLogger(__name__)


def create_app(settings: Optional[Settings] = None) -> FastAPI:
    """Build the app around one Settings instance and one CheckService"""
    settings = settings or load_settings()
    configure_logging(settings)

    app = FastAPI(
        title="nbpractice",
        version=__version__,
        description="Best-practice checks and corpus statistics for computational notebooks",
    )
    app.state.settings = settings
    app.state.check_service = CheckService(settings)

    @app.get("/health")
    async def health_check():
        """Health check endpoint"""
        return {
            "status": "healthy",
            "version": __version__,
            "config_digest": settings.digest(),
        }

    app.include_router(checks_router, prefix="/api/v1")
    app.include_router(analysis_router, prefix="/api/v1")

    logger.info(f"nbpractice v{__version__} ready, checks: {', '.join(settings.enabled_checks)}")
    return app


def serve(settings: Settings) -> None:
    uvicorn.run(create_app(settings), host=settings.api_host, port=settings.api_port)


if __name__ == "__main__":
    serve(load_settings())
