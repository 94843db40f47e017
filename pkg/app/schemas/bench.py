"""
Pydantic схемы бенчмарка
"""
from fractions import Fraction
from typing import List

from pydantic import BaseModel, Field, field_validator

from app.core.config import settings
from app.models.plan import Algorithm


class BenchConfig(BaseModel):
    """Параметры прогона: стороны сеток, число сидов, алгоритмы"""
    sizes: List[int] = Field(..., min_length=1)
    seeds_per_size: int = Field(default_factory=lambda: settings.bench_seeds_per_size, ge=1)
    algorithms: List[Algorithm] = Field(
        default_factory=lambda: [Algorithm.OFFLINE, Algorithm.BASELINE], min_length=1
    )
    seed_base: int = Field(default_factory=lambda: settings.bench_seed_base)
    workers: int = Field(default_factory=lambda: settings.bench_workers, ge=1)
    online_budget: int = Field(default_factory=lambda: settings.online_bench_budget, ge=1)

    @field_validator("sizes")
    @classmethod
    def sizes_at_least_two(cls, sizes: List[int]) -> List[int]:
        if any(m < 2 for m in sizes):
            raise ValueError("Сторона сетки должна быть не меньше 2")
        return sizes

    @field_validator("algorithms")
    @classmethod
    def no_auto(cls, algorithms: List[Algorithm]) -> List[Algorithm]:
        if Algorithm.AUTO in algorithms:
            raise ValueError("В бенчмарке алгоритм задаётся явно")
        return algorithms


class BenchRow(BaseModel):
    """Средние по сидам для одной пары (m, алгоритм)"""
    m: int
    algorithm: Algorithm
    n: int
    seeds: int
    mean_retrieval_actions: float
    mean_total_actions: float
    mean_relocations: float
    mean_distance: float
    distance_lower_bound: int
    action_suboptimality: float = Field(..., ge=0)
    distance_suboptimality: float = Field(..., ge=0)


class DensityPoint(BaseModel):
    """Точка кривой «бюджет действий — плотность»"""
    budget: int = Field(..., ge=1)
    numerator: int
    denominator: int

    @property
    def density(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)
