"""
Реестр планировщиков: единая точка входа для CLI, HTTP и бенчмарка
"""
import logging
from dataclasses import dataclass
from typing import Optional

from app.core.exceptions import NoGuaranteeAvailable
from app.models.instance import Instance
from app.models.plan import Algorithm, Plan
from app.services.baseline import plan_baseline
from app.services.lookahead import (
    StrategyName,
    choose_strategy,
    full_lookahead_window,
    plan_L_lookahead1,
    plan_lookahead_full,
    plan_sparse_lookahead1,
)
from app.services.offline import plan_offline
from app.services.online import plan_online
from app.services.stream import ArrivalStream

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PlanOutcome:
    algorithm: Algorithm
    plan: Plan
    window: Optional[int] = None
    max_peek_depth: Optional[int] = None


_BY_STRATEGY = {
    StrategyName.SPARSE: Algorithm.SPARSE,
    StrategyName.LPATHS: Algorithm.LPATHS,
    StrategyName.FULL: Algorithm.LOOKAHEAD,
}


def plan_instance(
    instance: Instance, algorithm: Algorithm = Algorithm.AUTO, budget: Optional[int] = None
) -> PlanOutcome:
    """Построить план выбранным алгоритмом (auto — по правилам выбора стратегии)"""
    algorithm = Algorithm(algorithm)
    if algorithm == Algorithm.AUTO:
        choice = choose_strategy(instance)
        if choice.name == StrategyName.NONE:
            raise NoGuaranteeAvailable(
                "Нет стратегии с гарантией для этого входа",
                grid=str(instance.grid), n=instance.n, lookahead=instance.lookahead,
            )
        algorithm = _BY_STRATEGY[choice.name]

    grid = instance.grid
    if algorithm == Algorithm.OFFLINE:
        return PlanOutcome(algorithm, plan_offline(instance))
    if algorithm == Algorithm.BASELINE:
        return PlanOutcome(algorithm, plan_baseline(instance))
    if algorithm == Algorithm.ONLINE:
        return PlanOutcome(algorithm, plan_online(instance, budget))

    if algorithm == Algorithm.LOOKAHEAD:
        window = instance.lookahead or full_lookahead_window(grid)
        stream = ArrivalStream(instance.arrival, window)
        plan = plan_lookahead_full(stream, instance)
    elif algorithm == Algorithm.SPARSE:
        stream = ArrivalStream(instance.arrival, 1)
        plan = plan_sparse_lookahead1(stream, instance)
    else:
        stream = ArrivalStream(instance.arrival, 1)
        plan = plan_L_lookahead1(stream, instance, skip=grid.capacity - instance.n)

    logger.debug(
        "%s: окно %d, глубина просмотра %d", algorithm.value, stream.window, stream.max_peek_depth
    )
    return PlanOutcome(algorithm, plan, stream.window, stream.max_peek_depth)
