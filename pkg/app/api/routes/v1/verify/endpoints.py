# app/api/routes/v1/verify/endpoints.py
import logging

from fastapi import Depends

from app.core.config import get_settings
from app.core.dependencies.services import get_check_registry
from app.core.id_generator.id_generator import generate_verification_id
from app.services.suite.checks.check_registry import CheckRegistry
from app.services.suite.runner import SuiteTask, execute_task, param_text

from .request import VerifyRequest
from .response import (
    CheckDescription,
    CheckListResponse,
    VerifyResponse,
    transform_verify_response,
)

logger = logging.getLogger(__name__)


async def list_checks(
        registry: CheckRegistry = Depends(get_check_registry)
) -> CheckListResponse:
    return CheckListResponse(
        checks=[CheckDescription(**item) for item in registry.get_checks_with_descriptions()]
    )


async def verify_check(
        check: str,
        request: VerifyRequest,
        registry: CheckRegistry = Depends(get_check_registry)
) -> VerifyResponse:
    """Run one check; check failures are reported in the body, not as HTTP errors."""
    registry.get_check_by_name(check)
    digits = request.digits or get_settings().PRECISION_DIGITS
    verification_id = generate_verification_id()
    task = SuiteTask(
        name=check,
        params=tuple(sorted((k, param_text(v)) for k, v in request.params.items())),
        tolerance=request.tolerance,
    )
    logger.info("verification %s: %s %s at %d digits", verification_id, check, task.params_dict, digits)
    results = execute_task(task, digits, registry)
    return transform_verify_response(verification_id, check, digits, results)
