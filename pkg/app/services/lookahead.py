"""
Планировщики с ограниченным lookahead: D известна полностью, A видна через окно.

- разреженная раскладка с окном 1 (без перестановок при n ≤ r(c−1)+1);
- L-пути с окном 1 (полная загрузка, не больше r−1 перестановок);
- потоковая версия офлайн-планировщика с окном 3r − 1.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from app.core.exceptions import (
    CountMismatch,
    NarrowGrid,
    NoPath,
    ShapeError,
    TooDense,
)
from app.models.grid import Arrangement, Cell, GridSpec
from app.models.instance import Instance
from app.models.plan import Action, ActionKind, Plan
from app.services.executor import WorkspaceState
from app.services.offline import assign_from_stream, plan_from_arrangement, to_external_labels
from app.services.paths import find_relocate_path, find_retrieve_path, find_store_path
from app.services.stream import ArrivalStream

__all__ = [
    "ArrivalStream",
    "LPathLayout",
    "StrategyChoice",
    "StrategyName",
    "build_L_paths",
    "choose_strategy",
    "full_lookahead_window",
    "lpath_ratio_bound",
    "plan_L_lookahead1",
    "plan_lookahead_full",
    "plan_sparse_lookahead1",
    "sparse_arrangement",
    "sparse_capacity",
]

logger = logging.getLogger(__name__)


# ===== РАЗРЕЖЕННАЯ РАСКЛАДКА =====

def sparse_capacity(grid: GridSpec) -> int:
    """Максимум грузов, при котором окна 1 хватает без перестановок"""
    return grid.rows * (grid.cols - 1) + 1


def _sparse_column(grid: GridSpec, rank: int) -> int:
    # ранг 1 в передней клетке последнего столбца, дальше по r рангов на столбец справа налево
    if rank == 1:
        return grid.cols
    return grid.cols - 1 - (rank - 2) // grid.rows


def _sparse_cell(state: WorkspaceState, rank: int) -> Cell:
    grid = state.grid
    col = _sparse_column(grid, rank)
    if rank == 1:
        return Cell(1, col)
    for row in range(grid.rows, 0, -1):
        cell = Cell(row, col)
        if state.is_empty(cell):
            return cell
    raise TooDense("Столбец уже заполнен", rank=rank, col=col)


def _check_sparse(grid: GridSpec, n: int) -> None:
    if n > sparse_capacity(grid):
        raise TooDense(
            "Слишком много грузов для разреженной раскладки",
            n=n, capacity=sparse_capacity(grid),
        )


def sparse_arrangement(grid: GridSpec, arrival_ranks: Sequence[int]) -> Arrangement:
    """Разреженная раскладка для прибытий, заданных рангами отправления"""
    _check_sparse(grid, len(arrival_ranks))
    state = WorkspaceState(grid)
    for rank in arrival_ranks:
        state.place(rank, _sparse_cell(state, rank))
    return state.to_arrangement()


def plan_sparse_lookahead1(stream: ArrivalStream, instance: Instance) -> Plan:
    """
    Каждый прибывший груз сразу ставится в верхнюю свободную клетку своего
    столбца прямым путём; выдача — прямо или через уже пустой столбец справа.
    """
    grid = instance.grid
    _check_sparse(grid, instance.n)
    rank = instance.departure_rank
    state = WorkspaceState(grid)
    actions: list[Action] = []

    while stream.remaining:
        load = stream.advance()
        dest = _sparse_cell(state, rank[load])
        path = find_store_path(state, dest)
        if path is None:
            raise NoPath("Нет пути хранения", load=load, phase="storage")
        action = Action(ActionKind.STORE, load, path)
        state.apply(action)
        actions.append(action)

    actions.extend(_retrieve_in_order(state, instance.departure))
    return Plan.of(actions)


def _retrieve_in_order(state: WorkspaceState, departure: Sequence[int]) -> list[Action]:
    actions = []
    for load in departure:
        path = find_retrieve_path(state, load)
        if path is None:
            raise NoPath("Нет пути выдачи", load=load, phase="retrieval")
        action = Action(ActionKind.RETRIEVE, load, path)
        state.apply(action)
        actions.append(action)
    return actions


# ===== L-ПУТИ =====

@dataclass(frozen=True)
class LPathLayout:
    """
    Разбиение сетки на пути π₁..π_c.

    π₁..π_{c−r} — левые столбцы (снизу вверх); квадрат r×r справа разбит на
    вложенные L-пути: вертикальный отрезок снизу вверх, затем горизонтальный
    слева направо. π_c — одна правая передняя клетка.
    """
    grid: GridSpec
    paths: tuple[tuple[Cell, ...], ...]
    corners: frozenset[Cell]

    def sizes(self) -> list[int]:
        return [len(p) for p in self.paths]

    def corner_of(self, index: int) -> Optional[Cell]:
        """Угол пути с номером index (с нуля), если он есть"""
        path = self.paths[index]
        for cell in path:
            if cell in self.corners:
                return cell
        return None


def build_L_paths(grid: GridSpec) -> LPathLayout:
    r, c = grid.rows, grid.cols
    if r > c:
        raise ShapeError("L-пути требуют r ≤ c", rows=r, cols=c)

    paths: list[tuple[Cell, ...]] = []
    for col in range(1, c - r + 1):
        paths.append(tuple(Cell(row, col) for row in range(1, r + 1)))

    corners = set()
    for t in range(r):
        col = c - r + 1 + t
        height = r - t
        vertical = [Cell(row, col) for row in range(1, height + 1)]
        horizontal = [Cell(height, k) for k in range(col + 1, c + 1)]
        if horizontal:
            corners.add(Cell(height, col))
        paths.append(tuple(vertical + horizontal))

    return LPathLayout(grid, tuple(paths), frozenset(corners))


def _skipped_corners(layout: LPathLayout, skip: int) -> set[Cell]:
    """Пропускаются углы самых маленьких L-путей"""
    with_corner = [i for i in range(len(layout.paths)) if layout.corner_of(i) is not None]
    chosen = sorted(with_corner, key=lambda i: len(layout.paths[i]))[:skip]
    return {layout.corner_of(i) for i in chosen}


def plan_L_lookahead1(stream: ArrivalStream, instance: Instance, skip: int = 0) -> Plan:
    """
    План по L-путям с окном 1.

    Грузы распределяются по путям по рангу отправления (ранг 1 → π_c, следующие
    |π_{c−1}| рангов → π_{c−1} и т. д.), внутри пути заполнение идёт с дальнего
    конца как стек. При выдаче угловой груз может оказаться заперт; тогда груз
    под ним сдвигается на одну или две клетки вправо.
    """
    grid = instance.grid
    layout = build_L_paths(grid)
    r = grid.rows
    if not 0 <= skip <= r - 1:
        raise ShapeError("Число пропущенных углов вне 0..r−1", skip=skip, rows=r)
    if instance.n != grid.capacity - skip:
        raise CountMismatch(
            "Число грузов не равно r·c − skip", n=instance.n, expected=grid.capacity - skip
        )

    skipped = _skipped_corners(layout, skip)
    # свободные клетки каждого пути в порядке заполнения (с дальнего конца)
    slots: list[list[Cell]] = [
        [cell for cell in reversed(path) if cell not in skipped] for path in layout.paths
    ]
    path_of_rank: dict[int, int] = {}
    rank = 1
    for index in range(len(slots) - 1, -1, -1):
        for _ in slots[index]:
            path_of_rank[rank] = index
            rank += 1

    ranks = instance.departure_rank
    state = WorkspaceState(grid)
    actions: list[Action] = []
    path_of_load: dict[int, int] = {}
    while stream.remaining:
        load = stream.advance()
        index = path_of_rank[ranks[load]]
        path_of_load[load] = index
        dest = slots[index].pop(0)
        path = layout.paths[index]
        store_path = path[: path.index(dest) + 1]
        action = Action(ActionKind.STORE, load, store_path)
        state.apply(action)
        actions.append(action)

    relocations = 0
    for position, load in enumerate(instance.departure):
        path = find_retrieve_path(state, load)
        if path is None:
            same_path = [
                x for x in instance.departure[position:]
                if path_of_load[x] == path_of_load[load]
            ]
            relocation = _free_corner(state, same_path)
            state.apply(relocation)
            actions.append(relocation)
            relocations += 1
            path = find_retrieve_path(state, load)
        if path is None:
            raise NoPath("Нет пути выдачи", load=load, phase="retrieval")
        action = Action(ActionKind.RETRIEVE, load, path)
        state.apply(action)
        actions.append(action)

    logger.debug("L-пути: %d перемещений (пропущено углов: %d)", relocations, skip)
    return Plan.of(actions)


def _retrievable_in_order(state: WorkspaceState, loads: Sequence[int]) -> bool:
    trial = state.copy()
    for load in loads:
        path = find_retrieve_path(trial, load)
        if path is None:
            return False
        trial.apply(Action(ActionKind.RETRIEVE, load, path))
    return True


def _free_corner(state: WorkspaceState, same_path: Sequence[int]) -> Action:
    """
    Освободить запертый угловой груз same_path[0]: груз под ним сдвигается
    вправо на одну клетку, по диагонали вниз-вправо или на две клетки вправо.

    Подходит первый вариант, после которого угловой груз и все оставшиеся
    грузы того же пути выдаются в порядке D без новых перемещений.
    """
    load = same_path[0]
    corner = state.cell_of(load)
    below = Cell(corner.row - 1, corner.col)
    blocker = state.occupant(below) if below.row >= 1 else None
    if blocker is None:
        raise NoPath("Груз заперт, но под ним пусто", load=load, cell=corner)

    targets = (
        Cell(below.row, below.col + 1),
        Cell(below.row - 1, below.col + 2),
        Cell(below.row, below.col + 2),
    )
    for dest in targets:
        path = find_relocate_path(state, blocker, dest)
        if path is None:
            continue
        relocation = Action(ActionKind.RELOCATE, blocker, path)
        trial = state.copy()
        trial.apply(relocation)
        if _retrievable_in_order(trial, same_path):
            return relocation

    raise NoPath("Не удалось освободить угол", load=load, blocker=blocker, cell=corner)


def lpath_ratio_bound(rows: int, cols: int, skip: int = 0) -> Fraction:
    """Гарантированное отношение числа действий к 2n для L-путей"""
    rc = rows * cols
    return Fraction(2 * rc + rows - 1 - 3 * skip, 2 * rc - 2 * skip)


# ===== ПОЛНОЕ ОКНО =====

def full_lookahead_window(grid: GridSpec) -> int:
    return 3 * grid.rows - 1


def plan_lookahead_full(stream: ArrivalStream, instance: Instance) -> Plan:
    """Потоковая версия офлайн-планировщика; совпадает с ним на любом входе"""
    if instance.grid.cols < 3:
        raise NarrowGrid("Нужно не меньше трёх столбцов", cols=instance.grid.cols)
    internal = assign_from_stream(instance, stream)
    if stream.remaining:
        raise CountMismatch("Поток прочитан не до конца", remaining=stream.remaining)
    arrangement = to_external_labels(instance, internal)
    return plan_from_arrangement(instance, arrangement, arrival=stream.consumed)


# ===== ВЫБОР СТРАТЕГИИ =====

class StrategyName(str, Enum):
    """Стратегии с гарантиями"""
    SPARSE = "sparse"
    LPATHS = "lpaths"
    FULL = "full"
    NONE = "none"


@dataclass(frozen=True)
class StrategyChoice:
    name: StrategyName
    skip: int = 0
    reason: str = ""


def choose_strategy(instance: Instance) -> StrategyChoice:
    """Выбрать стратегию по плотности, форме и lookahead (никогда не бросает)"""
    grid = instance.grid
    r, c, n = grid.rows, grid.cols, instance.n

    if n <= sparse_capacity(grid):
        choice = StrategyChoice(StrategyName.SPARSE, reason=f"n={n} ≤ r(c−1)+1")
    elif r <= c and grid.capacity - n <= r - 1:
        skip = grid.capacity - n
        choice = StrategyChoice(StrategyName.LPATHS, skip=skip, reason=f"r ≤ c, skip={skip}")
    elif c >= 3 and (instance.lookahead is None or instance.lookahead >= 3 * r - 1):
        choice = StrategyChoice(StrategyName.FULL, reason="c ≥ 3, окно ≥ 3r−1")
    else:
        choice = StrategyChoice(StrategyName.NONE, reason="нет стратегии с гарантией")

    logger.info("Стратегия для %s, n=%d: %s (%s)", grid, n, choice.name.value, choice.reason)
    return choice
