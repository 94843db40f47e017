"""
Запись трассы исполнения
"""
from typing import List

from pydantic import BaseModel

from app.models.plan import Action, ActionKind


class TraceRecord(BaseModel):
    """Действие и занятость склада после него: (груз, ряд, столбец)"""
    seq: int
    kind: ActionKind
    load: int
    path: List[tuple[int, int]]
    temporary: bool = False
    occupancy: List[tuple[int, int, int]]

    @classmethod
    def from_action(
        cls, seq: int, action: Action, occupancy: List[tuple[int, int, int]]
    ) -> "TraceRecord":
        return cls(
            seq=seq,
            kind=action.kind,
            load=action.load,
            path=[(c.row, c.col) for c in action.path],
            temporary=action.temporary,
            occupancy=occupancy,
        )
