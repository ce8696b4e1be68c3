# app/services/suite/runner.py
import itertools
import logging
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from app.core.config import get_settings
from app.core.errors import AppError, ParseError
from app.core.id_generator.id_generator import generate_suite_run_id
from app.models.check import CheckResult, SuiteReport
from app.services.suite.checks.check_registry import CheckRegistry
from app.services.suite.checks.results import error_result

logger = logging.getLogger(__name__)

DEFAULT_CONFIG = Path(__file__).with_name("default.conf")

_RANGE = re.compile(r"^(-?\d+)\.\.(-?\d+)$")


@dataclass(frozen=True)
class SuiteTask:
    """One check invocation, expanded from a configuration line."""
    name: str
    params: Tuple[Tuple[str, str], ...] = ()
    tolerance: Optional[float] = None
    line: int = 0

    @property
    def params_dict(self) -> Dict[str, str]:
        return dict(self.params)


def param_text(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return ",".join(str(v) for v in value)
    return str(value)


def parse_config(text: str, registry: CheckRegistry) -> List[SuiteTask]:
    """Lines `name key=value ...`; `a..b` expands to every integer in range; `#` starts a comment."""
    tasks: List[SuiteTask] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        name, *tokens = body.split()
        if name not in registry.checks:
            raise ParseError(f"unknown check {name!r}", line=number, context={"choices": registry.names()})
        fixed: Dict[str, str] = {}
        ranges: Dict[str, List[str]] = {}
        tolerance = None
        for token in tokens:
            key, sep, value = token.partition("=")
            if not sep or not key or not value:
                raise ParseError(f"expected key=value, got {token!r}", line=number)
            if key == "tol":
                try:
                    tolerance = float(value)
                except ValueError as e:
                    raise ParseError(f"invalid tolerance {value!r}", line=number, cause=e)
                continue
            match = _RANGE.match(value)
            if match:
                lo, hi = int(match.group(1)), int(match.group(2))
                if lo > hi:
                    raise ParseError(f"empty range {value!r}", line=number)
                ranges[key] = [str(v) for v in range(lo, hi + 1)]
            else:
                fixed[key] = value
        keys = sorted(ranges)
        for combo in itertools.product(*(ranges[k] for k in keys)):
            params = {**fixed, **dict(zip(keys, combo))}
            tasks.append(SuiteTask(name, tuple(sorted(params.items())), tolerance, number))
    return tasks


def load_config(path: Optional[Path], registry: CheckRegistry) -> List[SuiteTask]:
    path = Path(path) if path else DEFAULT_CONFIG
    try:
        text = path.read_text()
    except OSError as e:
        raise ParseError(f"cannot read suite configuration {path}", cause=e)
    return parse_config(text, registry)


def execute_task(task: SuiteTask, digits: int, registry: Optional[CheckRegistry] = None) -> List[CheckResult]:
    if registry is None:
        from app.core.dependencies.services import get_check_registry
        registry = get_check_registry()
    started = time.perf_counter()
    try:
        check = registry.get_check_by_name(task.name)
        results = check.run(task.params_dict, digits, task.tolerance)
    except AppError as e:
        logger.error("check %s %s raised %s", task.name, task.params_dict, e.message)
        results = [error_result(task.name, task.params_dict, e)]
    elapsed = time.perf_counter() - started
    for result in results:
        if not result.passed:
            logger.error("check %s %s failed: residual %.3e > %.1e", result.name, result.params,
                         result.residual, result.tolerance)
    return [r.model_copy(update={"seconds": round(elapsed, 3)}) for r in results]


class SuiteRunner:
    def __init__(self, registry: CheckRegistry, digits: Optional[int] = None, jobs: Optional[int] = None):
        settings = get_settings()
        self.registry = registry
        self.digits = digits or settings.PRECISION_DIGITS
        self.jobs = max(1, jobs or settings.SUITE_JOBS)

    def run(self, tasks: List[SuiteTask]) -> SuiteReport:
        run_id = generate_suite_run_id()
        logger.info("suite run %s: %d tasks at %d digits, %d jobs", run_id, len(tasks), self.digits, self.jobs)
        if self.jobs == 1:
            batches = [execute_task(task, self.digits, self.registry) for task in tasks]
        else:
            with ProcessPoolExecutor(max_workers=self.jobs) as pool:
                batches = list(pool.map(execute_task, tasks, itertools.repeat(self.digits)))
        results = sorted((r for batch in batches for r in batch), key=lambda r: r.sort_key)
        report = SuiteReport(run_id=run_id, results=results)
        logger.info("suite run %s: %d/%d checks passed", run_id, len(results) - len(report.failed), len(results))
        return report

    def run_config(self, path: Optional[Path] = None) -> SuiteReport:
        return self.run(load_config(path, self.registry))

    def run_one(self, name: str, params: Dict[str, Any], tolerance: Optional[float] = None) -> SuiteReport:
        task = SuiteTask(name, tuple(sorted((k, param_text(v)) for k, v in params.items())), tolerance)
        return self.run([task])
