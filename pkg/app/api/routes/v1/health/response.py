# app/api/routes/v1/health/response.py
from typing import List

from pydantic import BaseModel


class HealthResponse(BaseModel):
    status: str
    project: str
    version: str
    precision_digits: int
    guard_digits: int
    max_series_terms: int
    checks: List[str]
