"""
API endpoints для построения, проверки и трассировки планов
"""
from typing import List

from fastapi import APIRouter

from app.api.deps import load_instance
from app.schemas.instance import (
    MetricsRead,
    PlanFile,
    PlanRequest,
    PlanResponse,
    ValidateRequest,
)
from app.schemas.trace import TraceRecord
from app.services.executor import execute_plan
from app.services.registry import plan_instance
from app.services.trace import export_trace


router = APIRouter()


@router.post("/", response_model=PlanResponse)
def create_plan(request: PlanRequest):
    """
    Построить план выбранным алгоритмом и сразу проверить его исполнителем
    """
    instance = load_instance(request.instance)
    outcome = plan_instance(instance, request.algorithm, budget=request.budget)
    metrics = execute_plan(instance, outcome.plan)
    return PlanResponse(
        algorithm=outcome.algorithm,
        plan=PlanFile.from_domain(outcome.plan),
        metrics=MetricsRead.from_metrics(metrics),
        max_peek_depth=outcome.max_peek_depth,
    )


@router.post("/validate", response_model=MetricsRead)
def validate_plan(request: ValidateRequest):
    """
    Исполнить готовый план; нарушения возвращаются как 422 с индексом действия
    """
    instance = load_instance(request.instance)
    metrics = execute_plan(instance, request.plan.to_domain())
    return MetricsRead.from_metrics(metrics)


@router.post("/trace", response_model=List[TraceRecord])
def trace_plan(request: ValidateRequest):
    """
    Трасса исполнения: по записи на действие со снимком занятости
    """
    instance = load_instance(request.instance)
    return export_trace(instance, request.plan.to_domain())
