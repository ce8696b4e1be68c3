from typing import Literal

from pydantic import BaseModel, Field

ProductType = Literal["shuffle", "stuffle", "qshuffle"]


class ProductRequest(BaseModel):
    """Request model for expanding a shuffle, stuffle or q-shuffle product"""
    type: ProductType = Field(..., description="Which product to expand")
    left: str = Field(..., description="Word (shuffle, qshuffle) or composition (stuffle)", examples=["2"])
    right: str = Field(..., description="Word (shuffle, qshuffle) or composition (stuffle)", examples=["3"])
