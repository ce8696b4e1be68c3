from functools import lru_cache

from app.services.suite.checks.check_registry import CheckRegistry
from app.services.suite.checks.generating_functions import GeneratingFunctionCheck
from app.services.suite.checks.mzv_checks import (
    CyclicInsertionCheck,
    CyclicSumCheck,
    DoubleShuffleCheck,
    DualityCheck,
    NewIntegralCheck,
    OhnoCheck,
    ReductionCheck,
    SumFormulaCheck,
)
from app.services.suite.checks.word_checks import (
    CountsCheck,
    QExpansionsCheck,
    QLimitCheck,
    QShuffleCheck,
    ShuffleTheoremsCheck,
)


@lru_cache()
def get_check_registry() -> CheckRegistry:
    registry = CheckRegistry()

    # Register checks
    registry.register_check(DualityCheck())
    registry.register_check(SumFormulaCheck())
    registry.register_check(OhnoCheck())
    registry.register_check(DoubleShuffleCheck())
    registry.register_check(CyclicInsertionCheck())
    registry.register_check(CyclicSumCheck())
    registry.register_check(ReductionCheck())
    registry.register_check(NewIntegralCheck())
    registry.register_check(GeneratingFunctionCheck())
    registry.register_check(ShuffleTheoremsCheck())
    registry.register_check(QShuffleCheck())
    registry.register_check(QExpansionsCheck())
    registry.register_check(QLimitCheck())
    registry.register_check(CountsCheck())

    return registry
