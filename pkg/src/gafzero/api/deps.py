"""Dependency injection and error mapping for FastAPI."""

from typing import Annotated

from fastapi import HTTPException, Query

from ..errors import ChartDomainError, ConfigError, GafZeroError

MAX_DIMENSION = 8


def get_m_max(
    m_max: Annotated[
        int,
        Query(ge=1, le=MAX_DIMENSION, description="Largest complex dimension to tabulate"),
    ] = 3,
) -> int:
    """Largest m for the constants table."""
    return m_max


def http_error(error: GafZeroError) -> HTTPException:
    """400 for bad inputs, 422 for numerical failures."""
    if isinstance(error, (ConfigError, ChartDomainError)):
        return HTTPException(status_code=400, detail=str(error))
    return HTTPException(status_code=422, detail=str(error))
