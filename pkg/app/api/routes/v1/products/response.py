from pydantic import BaseModel


class ProductResponse(BaseModel):
    """Response model for an expanded product"""
    type: str
    left: str
    right: str
    result: str
    terms: int
