"""
Действия, планы и метрики исполнения
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from app.models.grid import Cell


class Algorithm(str, Enum):
    """Доступные планировщики"""
    OFFLINE = "offline"
    LOOKAHEAD = "lookahead"
    SPARSE = "sparse"
    LPATHS = "lpaths"
    ONLINE = "online"
    BASELINE = "baseline"
    AUTO = "auto"


class ActionKind(str, Enum):
    """Типы действий"""
    STORE = "store"
    RETRIEVE = "retrieve"
    RELOCATE = "relocate"


@dataclass(frozen=True)
class Action:
    """
    Одно перемещение груза по пути из пустых клеток.

    `temporary` помечает вынос блокирующего груза за пределы сетки и его
    возврат (используется базовым алгоритмом); такие действия не участвуют
    в проверке порядка A и D.
    """
    kind: ActionKind
    load: int
    path: tuple[Cell, ...]
    temporary: bool = False

    def __post_init__(self):
        object.__setattr__(self, "kind", ActionKind(self.kind))
        object.__setattr__(self, "path", tuple(Cell(*c) for c in self.path))

    @property
    def origin(self) -> Cell:
        return self.path[0]

    @property
    def destination(self) -> Cell:
        return self.path[-1]

    @property
    def length(self) -> int:
        """Длина пути в клетках (не в шагах)"""
        return len(self.path)

    def reversed(self) -> "Action":
        """Зеркальное действие: хранение ↔ выдача, путь в обратном порядке"""
        mirror = {
            ActionKind.STORE: ActionKind.RETRIEVE,
            ActionKind.RETRIEVE: ActionKind.STORE,
            ActionKind.RELOCATE: ActionKind.RELOCATE,
        }
        return Action(mirror[self.kind], self.load, tuple(reversed(self.path)), self.temporary)


@dataclass(frozen=True)
class Plan:
    """Упорядоченный список действий"""
    actions: tuple[Action, ...]

    def __post_init__(self):
        object.__setattr__(self, "actions", tuple(self.actions))

    def __len__(self) -> int:
        return len(self.actions)

    def __iter__(self):
        return iter(self.actions)

    @classmethod
    def of(cls, actions: Sequence[Action]) -> "Plan":
        return cls(tuple(actions))


@dataclass
class Metrics:
    """Результат исполнения плана"""
    loads: int
    stores: int = 0
    retrieves: int = 0
    relocations: int = 0
    temporary_actions: int = 0
    total_distance: int = 0
    max_actions_per_load: int = 0
    retrieval_phase_actions: int = 0
    max_retrieval_actions_per_load: int = 0
    distance_by_kind: dict[ActionKind, int] = field(
        default_factory=lambda: {kind: 0 for kind in ActionKind}
    )

    @property
    def total_actions(self) -> int:
        return self.stores + self.retrieves + self.relocations

    @property
    def action_ratio(self) -> float:
        """Отношение к оптимуму 2n"""
        return self.total_actions / (2 * self.loads)

    def as_dict(self) -> dict:
        return {
            "loads": self.loads,
            "stores": self.stores,
            "retrieves": self.retrieves,
            "relocations": self.relocations,
            "temporary_actions": self.temporary_actions,
            "total_actions": self.total_actions,
            "total_distance": self.total_distance,
            "max_actions_per_load": self.max_actions_per_load,
            "retrieval_phase_actions": self.retrieval_phase_actions,
            "max_retrieval_actions_per_load": self.max_retrieval_actions_per_load,
            "distance_by_kind": {k.value: v for k, v in self.distance_by_kind.items()},
            "action_ratio": self.action_ratio,
        }
