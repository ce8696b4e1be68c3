from fastapi import APIRouter, status
from . import endpoints
from .response import CheckListResponse, VerifyResponse
from ..evaluate.response import ErrorResponse

router = APIRouter(
    prefix="/verify",
    tags=["Identity checks"],
    responses={
        400: {"model": ErrorResponse, "description": "Malformed parameters"},
        404: {"model": ErrorResponse, "description": "Unknown check"},
    }
)

router.add_api_route(
    path="",
    endpoint=endpoints.list_checks,
    methods=["GET"],
    summary="List checks",
    description="Names and descriptions of every registered identity check",
    response_model=CheckListResponse,
    status_code=status.HTTP_200_OK,
)

router.add_api_route(
    path="/{check}",
    endpoint=endpoints.verify_check,
    methods=["POST"],
    summary="Run a check",
    description="Run one identity check and return its results with residuals and tolerances",
    response_model=VerifyResponse,
    status_code=status.HTTP_200_OK,
)
