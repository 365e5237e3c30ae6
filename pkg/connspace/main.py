"""
Main FastAPI application.
"""

import logging
import time
from contextlib import asynccontextmanager

from fastapi import FastAPI

from connspace import __version__
from connspace.api.api_v1.api import api_router
from connspace.config import get_settings

settings = get_settings()

# Configure logging
logging.basicConfig(
    level=getattr(logging, settings.log_level.upper(), logging.WARNING),
    format="%(levelname)s: %(message)s",
)
logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Application lifespan manager."""
    logger.info("connspace API starting up")
    yield
    logger.info("connspace API shutting down")


# Create FastAPI application
app = FastAPI(
    title=settings.app_name,
    description="HTTP access to finite connectivity space analyses and constructions",
    version=__version__,
    lifespan=lifespan,
    debug=settings.debug,
)

# Include API router
app.include_router(api_router, prefix="/api/v1")


@app.get("/health")
async def health_check():
    """Health check endpoint."""
    return {"status": "healthy", "timestamp": time.time(), "version": __version__}


if __name__ == "__main__":
    import uvicorn

    print(f"Starting {settings.app_name} API...")
    print(f"Visit http://{settings.host}:{settings.port}/docs for the API documentation")

    uvicorn.run(
        "connspace.main:app",
        host=settings.host,
        port=settings.port,
        reload=settings.debug,
        log_level=settings.log_level,
    )
