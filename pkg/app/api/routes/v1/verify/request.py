from typing import Any, Dict, Optional

from pydantic import BaseModel, Field


class VerifyRequest(BaseModel):
    """Request model for running one identity check"""
    params: Dict[str, Any] = Field(default_factory=dict, description="Check parameters, as in a suite configuration line",
                                   examples=[{"max_weight": 5}])
    digits: Optional[int] = Field(None, ge=5, le=2000, description="Decimal digits (defaults to PRECISION_DIGITS)")
    tolerance: Optional[float] = Field(None, gt=0, description="Override the check's default tolerance")
