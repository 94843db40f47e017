"""
Входной экземпляр задачи хранения и выдачи
"""
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

from app.core.exceptions import InvalidInstance
from app.models.grid import GridSpec


def _is_permutation(seq: Sequence[int], n: int) -> bool:
    return len(seq) == n and set(seq) == set(range(1, n + 1))


@dataclass(frozen=True)
class Instance:
    """
    Экземпляр: сетка, последовательность прибытия A и отправления D.

    Если D не задана, используется тождественная (1, …, n).
    """
    grid: GridSpec
    arrival: tuple[int, ...]
    departure: Optional[tuple[int, ...]] = None
    lookahead: Optional[int] = None
    budget: Optional[int] = None

    def __post_init__(self):
        arrival = tuple(int(x) for x in self.arrival)
        n = len(arrival)
        departure = (
            tuple(range(1, n + 1))
            if self.departure is None
            else tuple(int(x) for x in self.departure)
        )
        object.__setattr__(self, "arrival", arrival)
        object.__setattr__(self, "departure", departure)

        if n < 1:
            raise InvalidInstance("Нужен хотя бы один груз")
        if n > self.grid.capacity:
            raise InvalidInstance(
                "Грузов больше, чем клеток", n=n, capacity=self.grid.capacity
            )
        if not _is_permutation(arrival, n):
            raise InvalidInstance("A должна быть перестановкой 1..n", n=n)
        if not _is_permutation(departure, n):
            raise InvalidInstance("D должна быть перестановкой 1..n", n=n)
        if self.lookahead is not None and self.lookahead < 1:
            raise InvalidInstance("Lookahead должен быть положительным", lookahead=self.lookahead)
        if self.budget is not None and self.budget < 1:
            raise InvalidInstance("Бюджет действий должен быть положительным", budget=self.budget)

    @property
    def n(self) -> int:
        return len(self.arrival)

    @cached_property
    def departure_rank(self) -> dict[int, int]:
        """Груз → позиция в D (с единицы)"""
        return {load: i for i, load in enumerate(self.departure, start=1)}

    def relabeled_arrival(self) -> tuple[int, ...]:
        """A в нормализованных метках (метка = ранг отправления, так что D = (1, …, n))"""
        rank = self.departure_rank
        return tuple(rank[a] for a in self.arrival)
