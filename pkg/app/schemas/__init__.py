"""
Pydantic схемы GRIDSTORE: файлы экземпляров и планов, HTTP-запросы и ответы
"""
from app.schemas.instance import (
    ActionRecord,
    InstanceFile,
    MetricsRead,
    PlanFile,
    PlanRequest,
    PlanResponse,
    ValidateRequest,
)
from app.schemas.trace import TraceRecord

__all__ = [
    "ActionRecord",
    "InstanceFile",
    "MetricsRead",
    "PlanFile",
    "PlanRequest",
    "PlanResponse",
    "TraceRecord",
    "ValidateRequest",
]
