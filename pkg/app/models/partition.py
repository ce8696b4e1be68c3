# app/models/partition.py
from dataclasses import dataclass
from math import factorial
from typing import Dict, Tuple

from app.core.errors import OutOfDomainError


@dataclass(frozen=True)
class Partition:
    """Integer partition alpha_1 >= alpha_2 >= ... > 0."""
    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(self.parts)
        if any(p < 1 for p in parts):
            raise OutOfDomainError("partition parts must be positive")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise OutOfDomainError("partition parts must be weakly decreasing")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def multiplicities(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for p in self.parts:
            out[p] = out.get(p, 0) + 1
        return out

    @property
    def c_alpha(self) -> int:
        """prod_j m_j! (-j)^{m_j}."""
        value = 1
        for j, m in self.multiplicities.items():
            value *= factorial(m) * (-j) ** m
        return value

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"
