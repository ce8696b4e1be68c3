from fastapi import APIRouter, status
from . import endpoints
from .response import ProductResponse
from ..evaluate.response import ErrorResponse

router = APIRouter(
    prefix="/products",
    tags=["Word algebra"],
    responses={
        400: {"model": ErrorResponse, "description": "Malformed word or composition"},
    }
)

router.add_api_route(
    path="",
    endpoint=endpoints.expand_product,
    methods=["POST"],
    summary="Expand a product",
    description="Expand a shuffle or q-shuffle of two words, or a stuffle of two compositions",
    response_model=ProductResponse,
    status_code=status.HTTP_200_OK,
)
