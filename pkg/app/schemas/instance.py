"""
Pydantic схемы файлов экземпляра и плана
"""
from typing import List, Optional

from pydantic import BaseModel, Field

from app.models.grid import Cell, GridSpec
from app.models.instance import Instance
from app.models.plan import Action, ActionKind, Algorithm, Metrics, Plan


class InstanceFile(BaseModel):
    """Файл экземпляра (метки и координаты с единицы)"""
    rows: int = Field(..., ge=1)
    cols: int = Field(..., ge=1)
    arrival: List[int] = Field(..., min_length=1)
    departure: Optional[List[int]] = None
    lookahead: Optional[int] = Field(None, ge=1)
    budget: Optional[int] = Field(None, ge=1)

    class Config:
        json_schema_extra = {
            "example": {
                "rows": 3,
                "cols": 3,
                "arrival": [9, 4, 7, 3, 6, 2, 1, 8, 5],
            }
        }

    def to_domain(self) -> Instance:
        return Instance(
            grid=GridSpec(self.rows, self.cols),
            arrival=tuple(self.arrival),
            departure=tuple(self.departure) if self.departure is not None else None,
            lookahead=self.lookahead,
            budget=self.budget,
        )

    @classmethod
    def from_domain(cls, instance: Instance) -> "InstanceFile":
        identity = tuple(range(1, instance.n + 1))
        return cls(
            rows=instance.grid.rows,
            cols=instance.grid.cols,
            arrival=list(instance.arrival),
            departure=None if instance.departure == identity else list(instance.departure),
            lookahead=instance.lookahead,
            budget=instance.budget,
        )


class ActionRecord(BaseModel):
    """Одно действие плана"""
    kind: ActionKind
    load: int = Field(..., ge=1)
    path: List[tuple[int, int]] = Field(..., min_length=1)
    temporary: bool = False

    def to_domain(self) -> Action:
        return Action(self.kind, self.load, tuple(Cell(r, c) for r, c in self.path), self.temporary)

    @classmethod
    def from_domain(cls, action: Action) -> "ActionRecord":
        return cls(
            kind=action.kind,
            load=action.load,
            path=[(c.row, c.col) for c in action.path],
            temporary=action.temporary,
        )


class PlanFile(BaseModel):
    """Файл плана"""
    actions: List[ActionRecord]

    def to_domain(self) -> Plan:
        return Plan.of([a.to_domain() for a in self.actions])

    @classmethod
    def from_domain(cls, plan: Plan) -> "PlanFile":
        return cls(actions=[ActionRecord.from_domain(a) for a in plan])


class MetricsRead(BaseModel):
    """Метрики исполнения плана"""
    loads: int
    stores: int
    retrieves: int
    relocations: int
    temporary_actions: int
    total_actions: int
    total_distance: int
    max_actions_per_load: int
    retrieval_phase_actions: int
    max_retrieval_actions_per_load: int
    distance_by_kind: dict[str, int]
    action_ratio: float

    @classmethod
    def from_metrics(cls, metrics: Metrics) -> "MetricsRead":
        return cls(**metrics.as_dict())


# ===== HTTP =====

class PlanRequest(BaseModel):
    """Запрос на построение плана"""
    instance: InstanceFile
    algorithm: Algorithm = Algorithm.AUTO
    budget: Optional[int] = Field(None, ge=1)


class PlanResponse(BaseModel):
    """Построенный план вместе с метриками исполнителя"""
    algorithm: Algorithm
    plan: PlanFile
    metrics: MetricsRead
    max_peek_depth: Optional[int] = None


class ValidateRequest(BaseModel):
    """Проверка готового плана"""
    instance: InstanceFile
    plan: PlanFile
