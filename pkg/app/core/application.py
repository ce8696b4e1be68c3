# app/core/application.py
import logging

from fastapi import FastAPI

from app.api.routes.v1.router import router as api_v1_router
from app.core.config import get_settings
from app.core.middleware.error_handler import ErrorHandlerMiddleware

logger = logging.getLogger(__name__)

OPENAPI_TAGS = [
    {"name": "Health", "description": "Service status and numeric defaults"},
    {"name": "Evaluation", "description": "Rigorous enclosures of multiple zeta values and Euler sums"},
    {"name": "Word algebra", "description": "Shuffle, stuffle and q-shuffle products"},
    {"name": "Identity checks", "description": "Identity checks with residuals against tolerances"},
]


def create_app() -> FastAPI:
    settings = get_settings()
    settings.setup_logging()

    app = FastAPI(
        title=settings.PROJECT_NAME,
        description=settings.PROJECT_DESCRIPTION,
        version=settings.APP_VERSION,
        openapi_tags=OPENAPI_TAGS,
        docs_url="/docs",
        redoc_url="/redoc",
    )
    app.state.settings = settings

    app.add_middleware(ErrorHandlerMiddleware)
    app.include_router(api_v1_router, prefix="/v1")

    logger.info(
        "%s %s ready, %d digits by default",
        settings.PROJECT_NAME,
        settings.APP_VERSION,
        settings.PRECISION_DIGITS,
    )
    return app
