"""
Исполнение действий и планов с проверкой путей по пустым клеткам
"""
import logging
from collections import Counter
from typing import Iterable, Iterator, Mapping, Optional

from app.core.exceptions import (
    ActionViolation,
    CellOccupied,
    IncompletePlan,
    LoadAlreadyPresent,
    LoadNotPresent,
    NotAdjacentStep,
    OrderViolation,
    OutOfBounds,
    WrongEndpoint,
)
from app.models.grid import Arrangement, Cell, GridSpec
from app.models.instance import Instance
from app.models.plan import Action, ActionKind, Metrics, Plan

logger = logging.getLogger(__name__)


class WorkspaceState:
    """Изменяемое состояние склада: кто где стоит"""

    def __init__(self, grid: GridSpec, placement: Optional[Mapping[int, Cell]] = None):
        self.grid = grid
        self.by_load: dict[int, Cell] = {}
        self.by_cell: dict[Cell, int] = {}
        for load, cell in (placement or {}).items():
            self.by_load[load] = cell
            self.by_cell[cell] = load

    @classmethod
    def from_arrangement(cls, arrangement: Arrangement) -> "WorkspaceState":
        return cls(arrangement.grid, arrangement.placement)

    def copy(self) -> "WorkspaceState":
        return WorkspaceState(self.grid, self.by_load)

    def __contains__(self, load: int) -> bool:
        return load in self.by_load

    def __len__(self) -> int:
        return len(self.by_load)

    def cell_of(self, load: int) -> Cell:
        return self.by_load[load]

    def occupant(self, cell: Cell) -> Optional[int]:
        return self.by_cell.get(cell)

    def is_empty(self, cell: Cell) -> bool:
        return cell not in self.by_cell

    def empty_cells(self) -> Iterator[Cell]:
        for cell in self.grid.cells():
            if cell not in self.by_cell:
                yield cell

    def to_arrangement(self) -> Arrangement:
        return Arrangement(self.grid, dict(self.by_load))

    def snapshot(self) -> list[tuple[int, int, int]]:
        """(груз, строка, столбец), отсортировано по грузу"""
        return [(load, c.row, c.col) for load, c in sorted(self.by_load.items())]

    def place(self, load: int, cell: Cell) -> None:
        self.by_load[load] = cell
        self.by_cell[cell] = load

    def remove(self, load: int) -> Cell:
        cell = self.by_load.pop(load)
        del self.by_cell[cell]
        return cell

    def apply(self, action: Action) -> None:
        """Применить действие без проверки (вызывающий уже проверил)"""
        if action.kind == ActionKind.STORE:
            self.place(action.load, action.destination)
        elif action.kind == ActionKind.RETRIEVE:
            self.remove(action.load)
        else:
            self.remove(action.load)
            self.place(action.load, action.destination)


def validate_action(state: WorkspaceState, action: Action) -> None:
    """
    Проверить действие в текущем состоянии.

    Бросает ActionViolation с индексом первой ошибочной клетки пути.
    Исходная клетка перемещаемого груза пустой считать не требуется.
    """
    grid = state.grid
    path = action.path
    load = action.load
    kind = action.kind

    if not path:
        raise WrongEndpoint("Пустой путь", path_index=0, load=load)

    if kind == ActionKind.STORE:
        if load in state:
            raise LoadAlreadyPresent("Груз уже на складе", path_index=0, load=load)
    elif load not in state:
        raise LoadNotPresent("Груза нет на складе", path_index=0, load=load)

    for i, cell in enumerate(path):
        if not grid.contains(cell):
            raise OutOfBounds("Клетка вне сетки", path_index=i, cell=cell, load=load)
        if i > 0 and not path[i - 1].is_adjacent(cell):
            raise NotAdjacentStep(
                "Соседние клетки пути не смежны", path_index=i, cell=cell, load=load
            )
        if i == 0:
            if kind == ActionKind.STORE and cell.row != 1:
                raise WrongEndpoint(
                    "Путь хранения должен начинаться в переднем ряду",
                    path_index=0, cell=cell, load=load,
                )
            if kind != ActionKind.STORE and cell != state.cell_of(load):
                raise WrongEndpoint(
                    "Путь должен начинаться в клетке груза",
                    path_index=0, cell=cell, load=load,
                )
        occupant = state.occupant(cell)
        if occupant is not None and occupant != load:
            raise CellOccupied(
                "Клетка занята", path_index=i, cell=cell, occupant=occupant, load=load
            )

    last = len(path) - 1
    if kind == ActionKind.RETRIEVE and path[last].row != 1:
        raise WrongEndpoint(
            "Путь выдачи должен заканчиваться в переднем ряду",
            path_index=last, cell=path[last], load=load,
        )
    if kind == ActionKind.RELOCATE and path[last] == path[0]:
        raise WrongEndpoint(
            "Перемещение в ту же клетку", path_index=last, cell=path[last], load=load
        )


def is_valid_action(state: WorkspaceState, action: Action) -> bool:
    try:
        validate_action(state, action)
    except ActionViolation:
        return False
    return True


def apply_action(state: WorkspaceState, action: Action) -> WorkspaceState:
    """Вернуть новое состояние; исходное не меняется даже при ошибке"""
    validate_action(state, action)
    new_state = state.copy()
    new_state.apply(action)
    return new_state


def execute_plan(instance: Instance, plan: Plan | Iterable[Action]) -> Metrics:
    """
    Воспроизвести план с пустого склада и вернуть метрики.

    Хранение — строго в порядке A, выдача — в порядке D и только после
    хранения всех грузов; перемещения допускаются где угодно. Временные
    действия (вынос/возврат блокирующего груза) в проверке порядка не участвуют.
    """
    actions = list(plan)
    if not actions:
        raise IncompletePlan("Пустой план", stored=0, retrieved=0, n=instance.n)

    n = instance.n
    state = WorkspaceState(instance.grid)
    metrics = Metrics(loads=n)
    per_load: Counter[int] = Counter()
    per_load_retrieval: Counter[int] = Counter()
    outside: set[int] = set()
    next_store = 0
    next_retrieve = 0

    last_store = max(
        (i for i, a in enumerate(actions) if a.kind == ActionKind.STORE and not a.temporary),
        default=-1,
    )

    for index, action in enumerate(actions):
        if action.temporary:
            if action.kind == ActionKind.RELOCATE:
                raise OrderViolation(
                    "Временным может быть только вынос или возврат",
                    action_index=index, load=action.load,
                )
            if action.kind == ActionKind.STORE and action.load not in outside:
                raise OrderViolation(
                    "Возврат груза, который не выносили",
                    action_index=index, load=action.load,
                )
        elif action.kind == ActionKind.STORE:
            expected = instance.arrival[next_store] if next_store < n else None
            if action.load != expected:
                raise OrderViolation(
                    "Нарушен порядок хранения",
                    expected=expected, got=action.load, action_index=index,
                )
        elif action.kind == ActionKind.RETRIEVE:
            if next_store < n:
                raise OrderViolation(
                    "Выдача до завершения хранения",
                    expected=instance.arrival[next_store], got=action.load, action_index=index,
                )
            expected = instance.departure[next_retrieve] if next_retrieve < n else None
            if action.load != expected:
                raise OrderViolation(
                    "Нарушен порядок выдачи",
                    expected=expected, got=action.load, action_index=index,
                )

        try:
            validate_action(state, action)
        except ActionViolation as exc:
            raise exc.at_action(index)
        state.apply(action)

        if action.temporary:
            metrics.temporary_actions += 1
            if action.kind == ActionKind.RETRIEVE:
                outside.add(action.load)
            else:
                outside.discard(action.load)
        elif action.kind == ActionKind.STORE:
            next_store += 1
        elif action.kind == ActionKind.RETRIEVE:
            next_retrieve += 1

        if action.kind == ActionKind.STORE:
            metrics.stores += 1
        elif action.kind == ActionKind.RETRIEVE:
            metrics.retrieves += 1
        else:
            metrics.relocations += 1
        metrics.total_distance += action.length
        metrics.distance_by_kind[action.kind] += action.length
        per_load[action.load] += 1
        if index > last_store:
            metrics.retrieval_phase_actions += 1
            per_load_retrieval[action.load] += 1

    if next_store < n or next_retrieve < n or outside:
        raise IncompletePlan(
            "План не завершён",
            stored=next_store, retrieved=next_retrieve, n=n, outside=sorted(outside),
        )

    metrics.max_actions_per_load = max(per_load.values(), default=0)
    metrics.max_retrieval_actions_per_load = max(per_load_retrieval.values(), default=0)
    logger.debug(
        "План исполнен: %d действий, %d перемещений, дистанция %d",
        metrics.total_actions, metrics.relocations, metrics.total_distance,
    )
    return metrics
