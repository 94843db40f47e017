"""
Базовый алгоритм для сравнения: раньше уходящие грузы ближе к фронту,
блокирующие грузы выносятся за пределы склада и возвращаются обратно.
"""
import logging
import math
from typing import Iterator, Optional

from app.core.exceptions import NoPlacement
from app.models.grid import Cell
from app.models.instance import Instance
from app.models.plan import Action, ActionKind, Plan
from app.services.executor import WorkspaceState
from app.services.paths import find_store_path, front_connected, min_blocker_route

logger = logging.getLogger(__name__)


def _row_order(rows: int, designated: int) -> Iterator[int]:
    """Назначенный ряд, затем дальше от фронта, затем ближе к фронту"""
    yield from range(designated, rows + 1)
    yield from range(designated - 1, 0, -1)


def _placement(state: WorkspaceState, designated: int) -> Optional[tuple[Cell, tuple[Cell, ...]]]:
    grid = state.grid
    for row in _row_order(grid.rows, designated):
        for col in range(1, grid.cols + 1):
            cell = Cell(row, col)
            if not state.is_empty(cell):
                continue
            path = find_store_path(state, cell)
            if path is None:
                continue
            state.place(-1, cell)
            connected = front_connected(state)
            state.remove(-1)
            if connected:
                return cell, path
    return None


def _store_actions(instance: Instance, state: WorkspaceState) -> list[Action]:
    grid = instance.grid
    rank = instance.departure_rank
    actions = []
    for load in instance.arrival:
        designated = min(math.ceil(rank[load] / grid.cols), grid.rows)
        found = _placement(state, designated)
        if found is None:
            raise NoPlacement("Нет клетки, сохраняющей доступ к пустым клеткам", load=load)
        cell, path = found
        if cell.row != designated:
            logger.debug("Груз %d: ряд %d вместо %d", load, cell.row, designated)
        action = Action(ActionKind.STORE, load, path)
        state.apply(action)
        actions.append(action)
    return actions


def _retrieve_actions(instance: Instance, state: WorkspaceState) -> list[Action]:
    actions = []
    for load in instance.departure:
        route, blockers = min_blocker_route(state, load)
        index_of = {state.occupant(c): i for i, c in enumerate(route)}

        # выносим, начиная с ближнего к фронту
        carried = []
        for blocker in reversed(blockers):
            sub = route[index_of[blocker]:]
            action = Action(ActionKind.RETRIEVE, blocker, sub, temporary=True)
            state.apply(action)
            actions.append(action)
            carried.append((blocker, sub))

        action = Action(ActionKind.RETRIEVE, load, route)
        state.apply(action)
        actions.append(action)

        # возвращаем на прежние места, начиная с самого глубокого
        for blocker, sub in reversed(carried):
            back = Action(ActionKind.STORE, blocker, tuple(reversed(sub)), temporary=True)
            state.apply(back)
            actions.append(back)

        if blockers:
            logger.debug("Выдача %d: вынесено блокирующих %d", load, len(blockers))
    return actions


def plan_baseline(instance: Instance) -> Plan:
    """План базового алгоритма (временные действия помечены temporary)"""
    state = WorkspaceState(instance.grid)
    actions = _store_actions(instance, state)
    actions.extend(_retrieve_actions(instance, state))
    return Plan.of(actions)
