"""Main FastAPI application."""

from typing import Optional

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from .. import __version__
from ..config import settings
from ..log import configure_logging
from .routers import constants, kernels, predictions

configure_logging(settings.log_level)

app = FastAPI(
    title="gafzero API",
    description="Asymptotic predictions and kernel evaluation for zeros of Gaussian sections",
    version=__version__,
    docs_url="/docs",
    redoc_url="/redoc",
)

# CORS
app.add_middleware(
    CORSMiddleware,
    allow_origins=settings.cors_origins,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# Register routers
app.include_router(constants.router, prefix="/constants", tags=["Constants"])
app.include_router(predictions.router, prefix="/predictions", tags=["Predictions"])
app.include_router(kernels.router, prefix="/kernels", tags=["Kernels"])


@app.get("/")
async def root() -> dict[str, str]:
    """API root endpoint."""
    return {
        "name": "gafzero API",
        "version": __version__,
        "docs": "/docs",
    }


@app.get("/health")
async def health() -> dict[str, str]:
    """Health check endpoint."""
    return {"status": "healthy"}


def serve(
    host: Optional[str] = None, port: Optional[int] = None, reload: Optional[bool] = None
) -> None:
    """Start the API server."""
    import uvicorn

    uvicorn.run(
        "gafzero.api.app:app",
        host=host or settings.api_host,
        port=port or settings.api_port,
        reload=reload if reload is not None else settings.api_reload,
    )
