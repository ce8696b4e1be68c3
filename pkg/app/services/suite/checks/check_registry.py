# app/services/suite/checks/check_registry.py
from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional

from app.core.errors import NotFoundError
from app.models.check import CheckResult


class BaseCheck(ABC):
    @property
    @abstractmethod
    def name(self) -> str:
        """Name of the check as used in suite configurations"""
        pass

    @property
    @abstractmethod
    def description(self) -> str:
        """Description of the identity the check verifies"""
        pass

    @abstractmethod
    def run(
            self,
            params: Dict[str, Any],
            digits: int,
            tolerance: Optional[float] = None
    ) -> List[CheckResult]:
        """Compute both sides of the identity for the given parameters"""
        pass


class CheckRegistry:
    def __init__(self):
        self.checks: Dict[str, BaseCheck] = {}

    def register_check(self, check: BaseCheck) -> None:
        """Register a check with the registry"""
        self.checks[check.name] = check

    def get_check_by_name(self, name: str) -> BaseCheck:
        """Get a check by name"""
        check = self.checks.get(name)
        if check is None:
            raise NotFoundError(f"unknown check {name!r}", context={"choices": self.names()})
        return check

    def names(self) -> List[str]:
        return sorted(self.checks)

    def get_checks_with_descriptions(self) -> List[Dict[str, str]]:
        """Get a list of all checks with their descriptions"""
        return [
            {"name": check.name, "description": check.description}
            for check in sorted(self.checks.values(), key=lambda c: c.name)
        ]
