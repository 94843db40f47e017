"""
Структурные проверки расстановок: локальная смежность, обращение
последовательности, глубина, жадные симуляторы хранения/выдачи.
"""
from typing import Optional, Sequence

from app.core.exceptions import LabelMismatch
from app.models.grid import Arrangement, Cell, GridSpec
from app.models.plan import Action, ActionKind
from app.services.executor import WorkspaceState
from app.services.paths import blocker_depths, find_retrieve_path, find_store_path


def is_column_adjacent(path: Sequence[Cell]) -> bool:
    """Не больше одного горизонтального шага (и он ровно на один столбец)"""
    horizontal = 0
    for prev, cell in zip(path, path[1:]):
        if prev.row == cell.row:
            if abs(prev.col - cell.col) != 1:
                return False
            horizontal += 1
        elif prev.col != cell.col:
            return False
    return horizontal <= 1


def reverse_sequence(seq: Sequence[int]) -> tuple[int, ...]:
    """Обращённая последовательность: прибытие A как отправление D' = reverse(A)"""
    return tuple(reversed(seq))


def satisfies_departure(arrangement: Arrangement, seq: Sequence[int]) -> bool:
    """
    Условие локальной смежности: каждый d_i стоит в переднем ряду или
    соседствует с грузом, уходящим раньше.

    Пустые клетки, связанные с передним рядом, считаются уже освобождёнными;
    при полной загрузке это ровно исходное условие.
    """
    if len(seq) != len(arrangement) or set(seq) != set(arrangement.loads):
        raise LabelMismatch(
            "Последовательность и расстановка содержат разные грузы",
            sequence=len(seq), arrangement=len(arrangement),
        )
    grid = arrangement.grid
    occupied = set(arrangement.occupied())
    open_cells: set[Cell] = set()

    def flood(start: Cell) -> None:
        stack = [start]
        open_cells.add(start)
        while stack:
            cell = stack.pop()
            for nb in grid.neighbors(cell):
                if nb not in open_cells and nb not in occupied:
                    open_cells.add(nb)
                    stack.append(nb)

    for cell in grid.front_row():
        if cell not in occupied and cell not in open_cells:
            flood(cell)

    for load in seq:
        cell = arrangement[load]
        if cell.row != 1 and not any(nb in open_cells for nb in grid.neighbors(cell)):
            return False
        occupied.discard(cell)
        flood(cell)
    return True


def compute_depth(grid: GridSpec, arrangement: Arrangement) -> int:
    """1 + максимум по грузам минимального числа блокирующих на пути к переднему ряду"""
    if not len(arrangement):
        return 0
    depths = blocker_depths(grid, arrangement.occupied())
    return 1 + max(depths[cell] - 1 for cell in arrangement.placement.values())


# ===== ЖАДНЫЕ СИМУЛЯТОРЫ =====

def greedy_retrieval(arrangement: Arrangement, seq: Sequence[int]) -> Optional[list[Action]]:
    """Выдать грузы по порядку любыми свободными путями; None, если где-то путь закрыт"""
    state = WorkspaceState.from_arrangement(arrangement)
    actions = []
    for load in seq:
        path = find_retrieve_path(state, load)
        if path is None:
            return None
        action = Action(ActionKind.RETRIEVE, load, path)
        state.apply(action)
        actions.append(action)
    return actions


def greedy_storage(arrangement: Arrangement, seq: Sequence[int]) -> Optional[list[Action]]:
    """Сложить грузы по порядку в клетки расстановки; None, если путь закрыт"""
    state = WorkspaceState(arrangement.grid)
    actions = []
    for load in seq:
        path = find_store_path(state, arrangement[load])
        if path is None:
            return None
        action = Action(ActionKind.STORE, load, path)
        state.apply(action)
        actions.append(action)
    return actions


def mirror_actions(actions: Sequence[Action]) -> list[Action]:
    """Обратить последовательность действий (хранение становится выдачей и наоборот)"""
    return [action.reversed() for action in reversed(actions)]
