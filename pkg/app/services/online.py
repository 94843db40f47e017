"""
Полностью онлайн-режим: ни A, ни D заранее не известны.

Склад размечается k-глубокими проходами (в каждой группе из 2k+1 столбцов
средний столбец пуст). При бюджете a действий на груз используется разметка
с k = a и по a−1 буферных клеток у каждого прохода.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from app.core.exceptions import (
    BudgetExceeded,
    CapacityExceeded,
    InvalidInstance,
    NoPath,
    TooNarrow,
    UnknownLoad,
)
from app.models.grid import Cell, GridSpec
from app.models.instance import Instance
from app.models.plan import Action, ActionKind, Plan
from app.services.executor import WorkspaceState
from app.services.paths import (
    bfs_distances,
    find_relocate_path,
    find_retrieve_path,
    find_store_path,
)

logger = logging.getLogger(__name__)


def max_density(k: int) -> Fraction:
    """Предельная плотность при глубине k: 2k/(2k+1)"""
    if k < 1:
        raise InvalidInstance("Глубина должна быть не меньше 1", k=k)
    return Fraction(2 * k, 2 * k + 1)


@dataclass(frozen=True)
class AisleGroup:
    """Группа столбцов, обслуживаемая одним проходом"""
    aisle: int
    first_col: int
    last_col: int

    def columns(self) -> range:
        return range(self.first_col, self.last_col + 1)


@dataclass(frozen=True)
class AisleLayout:
    grid: GridSpec
    k: int
    budget: int
    groups: tuple[AisleGroup, ...]
    aisle_columns: frozenset[int]
    buffer_cells: tuple[Cell, ...]
    storage_cells: tuple[Cell, ...]  # порядок заполнения, буферы в конце

    @property
    def density(self) -> Fraction:
        """Доля клеток хранения в сетке (включая буферы)"""
        return Fraction(len(self.storage_cells), self.grid.capacity)

    def group_of(self, col: int) -> AisleGroup:
        for group in self.groups:
            if group.first_col <= col <= group.last_col:
                return group
        raise TooNarrow("Столбец вне разметки", col=col)

    def is_aisle(self, cell: Cell) -> bool:
        return cell.col in self.aisle_columns


def _groups(cols: int, k: int) -> list[AisleGroup]:
    width = 2 * k + 1
    groups = []
    full = cols // width
    for g in range(full):
        first = g * width + 1
        groups.append(AisleGroup(first + k, first, first + width - 1))
    rest = cols - full * width
    if rest:
        first = full * width + 1
        groups.append(AisleGroup(first + min(k + 1, rest) - 1, first, cols))
    return groups


def aisle_layout(grid: GridSpec, k: int, budget: Optional[int] = None) -> AisleLayout:
    """
    Разметка с k-глубокими проходами.

    Клетки хранения в группе идут от дальних от прохода к ближним, внутри —
    задний ряд первым, затем слева направо. У каждого прохода резервируется
    budget−1 буферных клеток: ближайшие к проходу, задние ряды первыми.
    """
    if k < 1:
        raise TooNarrow("Глубина должна быть не меньше 1", k=k)
    if grid.cols < 2 * k + 1:
        raise TooNarrow("Сетка уже одной группы столбцов", cols=grid.cols, k=k)
    budget = k if budget is None else budget
    if budget < 1:
        raise TooNarrow("Бюджет должен быть не меньше 1", budget=budget)

    groups = _groups(grid.cols, k)
    aisles = frozenset(g.aisle for g in groups)
    ordered: list[Cell] = []
    buffers: list[Cell] = []

    for group in groups:
        cells = [
            Cell(row, col)
            for col in group.columns()
            if col != group.aisle
            for row in range(1, grid.rows + 1)
        ]
        nearest_first = sorted(cells, key=lambda c: (abs(c.col - group.aisle), -c.row, c.col))
        reserved = nearest_first[: budget - 1]
        buffers.extend(reserved)
        rest = [c for c in cells if c not in reserved]
        ordered.extend(sorted(rest, key=lambda c: (-abs(c.col - group.aisle), -c.row, c.col)))

    return AisleLayout(
        grid=grid,
        k=k,
        budget=budget,
        groups=tuple(groups),
        aisle_columns=aisles,
        buffer_cells=tuple(buffers),
        storage_cells=tuple(ordered + buffers),
    )


def capacity_with_budget(grid: GridSpec, budget: int) -> int:
    """Максимум грузов, при котором на каждый груз гарантированно ≤ budget действий"""
    layout = aisle_layout(grid, budget, budget)
    return len(layout.storage_cells) - len(layout.buffer_cells)


class FullyOnlinePolicy:
    """
    Политика хранения и выдачи без знания будущего.

    Между запросами проходы пусты. Выдача идёт по строке груза к проходу его
    группы и вниз по проходу; блокирующие грузы паркуются в ближайшие пустые
    клетки своей группы, которые не отрезают другие пустые клетки от прохода.
    """

    def __init__(self, grid: GridSpec, budget: int, n: Optional[int] = None):
        self.layout = aisle_layout(grid, budget, budget)
        self.budget = budget
        self.capacity = len(self.layout.storage_cells) - len(self.layout.buffer_cells)
        if n is not None and n > self.capacity:
            raise CapacityExceeded(
                "Грузов больше гарантированной вместимости", n=n, capacity=self.capacity
            )
        self.state = WorkspaceState(grid)
        self._fill_order = self.layout.storage_cells[: self.capacity]

    @property
    def grid(self) -> GridSpec:
        return self.layout.grid

    def aisles_empty(self) -> bool:
        return all(not self.layout.is_aisle(cell) for cell in self.state.by_cell)

    # ===== ХРАНЕНИЕ =====

    def on_arrival(self, load: int) -> Action:
        if load in self.state:
            raise CapacityExceeded("Груз уже на складе", load=load)
        if len(self.state) >= self.capacity:
            raise CapacityExceeded(
                "Склад заполнен до гарантированной вместимости",
                load=load, capacity=self.capacity,
            )
        for cell in self._fill_order:
            if not self.state.is_empty(cell):
                continue
            path = find_store_path(self.state, cell)
            if path is not None:
                action = Action(ActionKind.STORE, load, path)
                self.state.apply(action)
                return action
        raise CapacityExceeded("Нет доступной клетки хранения", load=load)

    # ===== ВЫДАЧА =====

    def _route(self, cell: Cell) -> tuple[Cell, ...]:
        """Путь по строке к проходу группы и вниз по проходу"""
        aisle = self.layout.group_of(cell.col).aisle
        step = 1 if aisle > cell.col else -1
        lateral = [Cell(cell.row, col) for col in range(cell.col, aisle, step)]
        down = [Cell(row, aisle) for row in range(cell.row, 0, -1)]
        return tuple(lateral + down)

    def _parking_spot(self, route: set[Cell], group: AisleGroup) -> Optional[Cell]:
        grid = self.grid
        state = self.state
        in_group = set(group.columns())

        def passable(cell: Cell) -> bool:
            return cell.col in in_group and state.is_empty(cell)

        seeds = [Cell(row, group.aisle) for row in range(1, grid.rows + 1)]
        reach = bfs_distances(grid, passable, seeds)
        candidates = [
            c for c in reach
            if not self.layout.is_aisle(c) and c not in route
        ]
        # ближайшие к проходу первыми, затем левее, затем ближе к переднему ряду
        candidates.sort(key=lambda c: (reach[c], c.col, c.row))
        others = {c for c in reach if not self.layout.is_aisle(c)}
        for cell in candidates:
            rest = bfs_distances(grid, lambda x: passable(x) and x != cell, seeds)
            if all(o in rest for o in others if o != cell):
                return cell
        return None

    def on_departure(self, load: int) -> list[Action]:
        if load not in self.state:
            raise UnknownLoad("Груза нет на складе", load=load)
        direct = find_retrieve_path(self.state, load)
        if direct is not None:
            action = Action(ActionKind.RETRIEVE, load, direct)
            self.state.apply(action)
            return [action]

        origin = self.state.cell_of(load)
        group = self.layout.group_of(origin.col)
        route = self._route(origin)
        blockers = [self.state.occupant(c) for c in route[1:] if not self.state.is_empty(c)]

        if len(blockers) + 1 > self.budget:
            raise BudgetExceeded(
                "Выдача потребует больше действий, чем позволяет бюджет",
                load=load, actions=len(blockers) + 1, budget=self.budget,
            )

        actions: list[Action] = []
        # ближний к проходу блокирующий груз уходит первым
        for blocker in reversed(blockers):
            spot = self._parking_spot(set(route), group)
            if spot is None:
                raise NoPath("Некуда отставить блокирующий груз", load=load, blocker=blocker)
            path = find_relocate_path(self.state, blocker, spot)
            if path is None:
                raise NoPath("Нет пути для перемещения", load=load, blocker=blocker)
            action = Action(ActionKind.RELOCATE, blocker, path)
            self.state.apply(action)
            actions.append(action)

        retrieve = Action(ActionKind.RETRIEVE, load, route)
        self.state.apply(retrieve)
        actions.append(retrieve)
        return actions


def fully_online_policy(grid: GridSpec, n: int, budget: int) -> FullyOnlinePolicy:
    return FullyOnlinePolicy(grid, budget, n)


def plan_online(instance: Instance, budget: Optional[int] = None) -> Plan:
    """Прогнать онлайн-политику по A, затем по D и собрать план"""
    budget = budget or instance.budget or 1
    policy = fully_online_policy(instance.grid, instance.n, budget)
    actions: list[Action] = [policy.on_arrival(load) for load in instance.arrival]
    for load in instance.departure:
        actions.extend(policy.on_departure(load))
    logger.info(
        "Онлайн-план для %s: бюджет %d, вместимость %d, n=%d",
        instance.grid, budget, policy.capacity, instance.n,
    )
    return Plan.of(actions)
