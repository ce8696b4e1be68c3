# app/api/routes/v1/evaluate/endpoints.py
import logging

from app.core.config import get_settings
from app.services.numerics.euler_sums import euler_sum_value, mzv_eval
from app.services.words.parsing import parse_composition, parse_rational, parse_signed_composition

from .request import EulerSumRequest, MzvRequest
from .response import BallResponse, transform_ball_response

logger = logging.getLogger(__name__)


async def evaluate_euler_sum(request: EulerSumRequest) -> BallResponse:
    """Evaluate zeta_x(s; sigma); divergent arguments surface as a 422 from the error middleware."""
    digits = request.digits or get_settings().PRECISION_DIGITS
    argument = parse_signed_composition(request.composition, parse_rational(request.x))
    logger.debug("evaluating %s at %d digits", argument, digits)
    value = euler_sum_value(argument, digits=digits)
    return transform_ball_response(str(argument), value, digits)


async def evaluate_mzv(request: MzvRequest) -> BallResponse:
    digits = request.digits or get_settings().PRECISION_DIGITS
    composition = parse_composition(request.composition)
    value = mzv_eval(composition, digits=digits)
    return transform_ball_response(f"zeta{composition}", value, digits)
