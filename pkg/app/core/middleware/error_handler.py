import logging

from fastapi import Request
from fastapi.responses import JSONResponse, Response
from starlette.middleware.base import BaseHTTPMiddleware, RequestResponseEndpoint
from app.core.errors import AppError, ErrorCode

logger = logging.getLogger(__name__)

# Failures of the numerics themselves, as opposed to bad input.
_NUMERIC_FAILURES = {ErrorCode.ENCLOSURE_FAILURE, ErrorCode.UNSUPPORTED}


class ErrorHandlerMiddleware(BaseHTTPMiddleware):
    """Render AppError as its JSON body; anything else becomes a 500."""

    async def dispatch(
            self,
            request: Request,
            call_next: RequestResponseEndpoint
    ) -> Response:
        try:
            return await call_next(request)
        except AppError as e:
            level = logging.WARNING if e.code in _NUMERIC_FAILURES else logging.INFO
            logger.log(level, "%s %s -> %s: %s", request.method, request.url.path, e.code, e.message)
            return _error_response(e)
        except Exception as e:
            logger.exception("unexpected error on %s", request.url.path)
            return _error_response(AppError(
                message="An unexpected error occurred",
                code="INTERNAL_SERVER_ERROR",
                cause=e,
                status_code=500,
                context={"path": request.url.path},
            ))


def _error_response(error: AppError) -> JSONResponse:
    return JSONResponse(status_code=error.status_code, content=error.to_dict())
