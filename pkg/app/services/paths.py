"""
Поиск путей по 4-связной сетке с учётом занятости.

Правило выбора пути детерминировано: сначала кратчайшие, среди них —
прямые по столбцу, затем с одним боковым шагом (меньший столбец поворота,
затем лексикографический порядок клеток), и только потом произвольный
кратчайший путь (лексикографически наименьший).
"""
import heapq
from collections import deque
from typing import Callable, Iterable, Iterator, Optional

from app.models.grid import Cell, GridSpec
from app.services.executor import WorkspaceState

Path = tuple[Cell, ...]


# ===== ПУТИ «ПО СТОЛБЦУ» =====

def column_adjacent_store_paths(grid: GridSpec, dest: Cell) -> Iterator[Path]:
    """Кандидаты путей хранения в dest: прямой, затем с одним боковым шагом"""
    row, col = dest
    yield tuple(Cell(k, col) for k in range(1, row + 1))

    lateral = []
    for side in (col - 1, col + 1):
        if not 1 <= side <= grid.cols:
            continue
        for turn in range(1, row + 1):
            path = tuple(Cell(k, side) for k in range(1, turn + 1)) + tuple(
                Cell(k, col) for k in range(turn, row + 1)
            )
            lateral.append((side, path))
    lateral.sort()
    for _, path in lateral:
        yield path


def column_adjacent_retrieve_paths(grid: GridSpec, origin: Cell) -> Iterator[Path]:
    """Кандидаты путей выдачи: зеркальные путям хранения"""
    for path in column_adjacent_store_paths(grid, origin):
        yield tuple(reversed(path))


# ===== BFS =====

def bfs_distances(
    grid: GridSpec, passable: Callable[[Cell], bool], seeds: Iterable[Cell]
) -> dict[Cell, int]:
    dist: dict[Cell, int] = {}
    queue: deque[Cell] = deque()
    for seed in seeds:
        if seed not in dist and passable(seed):
            dist[seed] = 0
            queue.append(seed)
    while queue:
        cell = queue.popleft()
        for nb in grid.neighbors(cell):
            if nb not in dist and passable(nb):
                dist[nb] = dist[cell] + 1
                queue.append(nb)
    return dist


def _walk(grid: GridSpec, dist: dict[Cell, int], start: Cell) -> Path:
    """Спуск по градиенту расстояний с выбором наименьшего соседа"""
    path = [start]
    cell = start
    while dist[cell] > 0:
        cell = min(nb for nb in grid.neighbors(cell) if dist.get(nb) == dist[cell] - 1)
        path.append(cell)
    return tuple(path)


def _all_empty(state: WorkspaceState, cells: Iterable[Cell]) -> bool:
    return all(state.is_empty(c) for c in cells)


def find_store_path(state: WorkspaceState, dest: Cell) -> Optional[Path]:
    """Путь хранения из переднего ряда в пустую клетку dest"""
    grid = state.grid
    if not grid.contains(dest) or not state.is_empty(dest):
        return None
    for path in column_adjacent_store_paths(grid, dest):
        if _all_empty(state, path):
            return path

    dist = bfs_distances(grid, state.is_empty, [dest])
    starts = [c for c in grid.front_row() if c in dist]
    if not starts:
        return None
    start = min(starts, key=lambda c: (dist[c], c))
    return _walk(grid, dist, start)


def find_retrieve_path(state: WorkspaceState, load: int) -> Optional[Path]:
    """Путь выдачи груза из его клетки в передний ряд"""
    grid = state.grid
    origin = state.cell_of(load)
    for path in column_adjacent_retrieve_paths(grid, origin):
        if _all_empty(state, path[1:]):
            return path

    def passable(cell: Cell) -> bool:
        return cell == origin or state.is_empty(cell)

    dist = bfs_distances(grid, passable, grid.front_row())
    if origin not in dist:
        return None
    return _walk(grid, dist, origin)


def find_relocate_path(state: WorkspaceState, load: int, dest: Cell) -> Optional[Path]:
    """Путь перемещения груза в пустую клетку dest"""
    grid = state.grid
    origin = state.cell_of(load)
    if origin == dest or not grid.contains(dest) or not state.is_empty(dest):
        return None

    def passable(cell: Cell) -> bool:
        return cell == origin or state.is_empty(cell)

    dist = bfs_distances(grid, passable, [dest])
    if origin not in dist:
        return None
    return _walk(grid, dist, origin)


def front_connected(state: WorkspaceState) -> bool:
    """Все пустые клетки связаны с пустой клеткой переднего ряда"""
    grid = state.grid
    empty = [c for c in grid.cells() if state.is_empty(c)]
    if not empty:
        return True
    dist = bfs_distances(grid, state.is_empty, grid.front_row())
    return len(dist) == len(empty)


# ===== МАРШРУТЫ С МИНИМУМОМ БЛОКИРУЮЩИХ =====

def _blocker_costs(
    grid: GridSpec, blocked: Callable[[Cell], int]
) -> dict[Cell, tuple[int, int]]:
    """
    Дейкстра от переднего ряда: стоимость клетки — (число занятых клеток, число клеток)
    на лучшем пути от неё до переднего ряда, включая её саму.
    """
    cost: dict[Cell, tuple[int, int]] = {}
    heap: list[tuple[int, int, Cell]] = []
    for cell in grid.front_row():
        heapq.heappush(heap, (blocked(cell), 1, cell))
    while heap:
        blockers, length, cell = heapq.heappop(heap)
        if cell in cost:
            continue
        cost[cell] = (blockers, length)
        for nb in grid.neighbors(cell):
            if nb not in cost:
                heapq.heappush(heap, (blockers + blocked(nb), length + 1, nb))
    return cost


def min_blocker_route(state: WorkspaceState, load: int) -> tuple[Path, list[int]]:
    """
    Маршрут выдачи, минимизирующий сначала число блокирующих грузов, затем длину.

    Возвращает путь (от клетки груза до переднего ряда) и блокирующие грузы
    в порядке следования по пути.
    """
    grid = state.grid
    origin = state.cell_of(load)

    def blocked(cell: Cell) -> int:
        return 0 if cell == origin or state.is_empty(cell) else 1

    cost = _blocker_costs(grid, blocked)
    path = [origin]
    cell = origin
    while True:
        if cell.row == 1 and cost[cell] == (blocked(cell), 1):
            break
        target = (cost[cell][0] - blocked(cell), cost[cell][1] - 1)
        cell = min(nb for nb in grid.neighbors(cell) if cost.get(nb) == target)
        path.append(cell)

    blockers = [state.occupant(c) for c in path[1:] if not state.is_empty(c)]
    return tuple(path), blockers


def blocker_depths(grid: GridSpec, occupied: frozenset[Cell]) -> dict[Cell, int]:
    """Для каждой клетки — минимум занятых клеток на пути до переднего ряда (включая её)"""
    def blocked(cell: Cell) -> int:
        return 1 if cell in occupied else 0

    return {cell: c[0] for cell, c in _blocker_costs(grid, blocked).items()}
