from typing import List

from pydantic import BaseModel

from app.models.check import CheckResult


class VerifyResponse(BaseModel):
    """Response model for a verification request"""
    id: str
    check: str
    digits: int
    passed: bool
    results: List[CheckResult]


class CheckDescription(BaseModel):
    name: str
    description: str


class CheckListResponse(BaseModel):
    """Response model for listing the available checks"""
    checks: List[CheckDescription]


def transform_verify_response(verification_id: str, check: str, digits: int,
                              results: List[CheckResult]) -> VerifyResponse:
    return VerifyResponse(
        id=verification_id,
        check=check,
        digits=digits,
        passed=all(r.passed for r in results),
        results=results,
    )
