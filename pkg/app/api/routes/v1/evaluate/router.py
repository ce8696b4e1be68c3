from fastapi import APIRouter, status
from . import endpoints
from .response import BallResponse, ErrorResponse

router = APIRouter(
    prefix="/evaluate",
    tags=["Evaluation"],
    responses={
        400: {"model": ErrorResponse, "description": "Malformed argument"},
        422: {"model": ErrorResponse, "description": "Divergent or out-of-domain argument"},
    }
)

# Euler sums at x in [0, 1]
router.add_api_route(
    path="/euler-sum",
    endpoint=endpoints.evaluate_euler_sum,
    methods=["POST"],
    summary="Evaluate an Euler sum",
    description="Evaluate zeta_x(s; sigma) as a ball with a rigorous error radius",
    response_model=BallResponse,
    status_code=status.HTTP_200_OK,
)

router.add_api_route(
    path="/mzv",
    endpoint=endpoints.evaluate_mzv,
    methods=["POST"],
    summary="Evaluate a multiple zeta value",
    description="Evaluate zeta(s) through the Hölder convolution split",
    response_model=BallResponse,
    status_code=status.HTTP_200_OK,
)
