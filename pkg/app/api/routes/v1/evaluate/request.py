from typing import Optional

from pydantic import BaseModel, Field


class EulerSumRequest(BaseModel):
    """Request model for evaluating zeta_x(s; sigma)"""
    composition: str = Field(..., description="Comma-separated arguments; a negative entry is a barred argument",
                             examples=["-1,1"])
    x: str = Field("1", description="Rational evaluation point in [0, 1]")
    digits: Optional[int] = Field(None, ge=5, le=2000, description="Decimal digits (defaults to PRECISION_DIGITS)")


class MzvRequest(BaseModel):
    """Request model for evaluating a multiple zeta value"""
    composition: str = Field(..., description="Comma-separated positive integers with s1 >= 2", examples=["3,1"])
    digits: Optional[int] = Field(None, ge=5, le=2000, description="Decimal digits (defaults to PRECISION_DIGITS)")
