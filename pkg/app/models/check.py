# app/models/check.py
import json
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field


class CheckResult(BaseModel):
    """Outcome of one identity check."""
    model_config = ConfigDict(populate_by_name=True)

    name: str
    params: Dict[str, Any] = Field(default_factory=dict)
    lhs: str
    rhs: str
    residual: float
    tolerance: float
    passed: bool = Field(..., alias="pass")
    seconds: float = 0.0
    rigorous: bool = True
    notes: Optional[str] = None

    @property
    def sort_key(self) -> Tuple[str, str]:
        return self.name, json.dumps(self.params, sort_keys=True)

    def to_json_line(self, include_seconds: bool = True) -> str:
        data = self.model_dump(by_alias=True)
        if not include_seconds:
            data.pop("seconds")
        return json.dumps(data, sort_keys=True)


class SuiteReport(BaseModel):
    """Aggregated, canonically ordered results of a suite run."""
    run_id: str
    results: List[CheckResult] = Field(default_factory=list)

    @property
    def failed(self) -> List[CheckResult]:
        return [r for r in self.results if not r.passed]

    @property
    def all_passed(self) -> bool:
        return not self.failed

    @property
    def exit_code(self) -> int:
        return 0 if self.all_passed else 1

    def to_json_lines(self, include_seconds: bool = True) -> str:
        return "\n".join(r.to_json_line(include_seconds) for r in self.results)

    def to_table(self) -> str:
        rows = [("name", "params", "residual", "tolerance", "pass", "seconds")]
        for r in self.results:
            rows.append((
                r.name,
                json.dumps(r.params, sort_keys=True),
                f"{r.residual:.3e}",
                f"{r.tolerance:.1e}",
                "PASS" if r.passed else "FAIL",
                f"{r.seconds:.2f}",
            ))
        widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
        lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
        lines.append(f"{len(self.results) - len(self.failed)}/{len(self.results)} checks passed")
        return "\n".join(lines)
