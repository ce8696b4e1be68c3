from fastapi import APIRouter, status

from . import endpoints
from .response import HealthResponse

router = APIRouter(
    prefix="/health",
    tags=["Health"],
)

router.add_api_route(
    path="",
    endpoint=endpoints.health_check,
    methods=["GET"],
    summary="Health Check",
    description="Project name, version, default precision and the registered identity checks",
    response_model=HealthResponse,
    status_code=status.HTTP_200_OK,
)
