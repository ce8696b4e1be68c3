from typing import Optional

from pydantic import BaseModel

from app.models.ball import Ball


class BallResponse(BaseModel):
    """Response model for an evaluated enclosure"""
    argument: str
    value: str
    mid: str
    rad: str
    prec: int
    rigorous: bool
    digits: int


class ErrorResponse(BaseModel):
    """Standard error response model"""
    code: str
    message: str
    context: Optional[dict] = None
    cause: Optional[str] = None


def transform_ball_response(argument: str, value: Ball, digits: int) -> BallResponse:
    """Transform a ball enclosure to a response model"""
    data = value.to_json()
    return BallResponse(
        argument=argument,
        value=value.to_string(digits),
        mid=data["mid"],
        rad=data["rad"],
        prec=data["prec"],
        rigorous=data["rigorous"],
        digits=digits,
    )
