# app/api/routes/v1/health/endpoints.py
from fastapi import Depends

from app.core.config import get_settings
from app.core.dependencies.services import get_check_registry
from app.services.suite.checks.check_registry import CheckRegistry

from .response import HealthResponse


async def health_check(
        registry: CheckRegistry = Depends(get_check_registry)
) -> HealthResponse:
    settings = get_settings()
    return HealthResponse(
        status="ok",
        project=settings.PROJECT_NAME,
        version=settings.APP_VERSION,
        precision_digits=settings.PRECISION_DIGITS,
        guard_digits=settings.GUARD_DIGITS,
        max_series_terms=settings.MAX_SERIES_TERMS,
        checks=registry.names(),
    )
