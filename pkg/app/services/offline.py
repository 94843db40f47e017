"""
Офлайн-планирование без перестановок (A и D известны заранее).

Для трёх столбцов — алгоритм двух последовательностей: расстановка строится
снизу вверх так, чтобы выполнялось условие локальной смежности и для D,
и для обращённой A. Для c > 3 левые столбцы заполняются целиком пачками по r
грузов, отсортированным по рангу отправления, а последние ≤ 3r грузов
раскладываются алгоритмом трёх столбцов.
"""
import logging
import math
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from app.core.exceptions import (
    HeightOverflow,
    LabelMismatch,
    NarrowGrid,
    NoPath,
    NoPlacement,
    TooManyLoads,
)
from app.models.grid import Arrangement, Cell, GridSpec
from app.models.instance import Instance
from app.models.plan import Action, ActionKind, Plan
from app.services.executor import WorkspaceState
from app.services.paths import find_retrieve_path, find_store_path
from app.services.stream import ArrivalStream
from app.services.structure import reverse_sequence, satisfies_departure

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ColumnHeights:
    """Целевые высоты заполнения столбцов C₁, C₂, C₃"""
    h1: int
    h2: int
    h3: int

    def __post_init__(self):
        if min(self.h1, self.h2, self.h3) < 0:
            raise HeightOverflow("Высоты не могут быть отрицательными", heights=self.as_tuple())

    @property
    def total(self) -> int:
        return self.h1 + self.h2 + self.h3

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.h1, self.h2, self.h3)

    @classmethod
    def full(cls, rows: int) -> "ColumnHeights":
        return cls(rows, rows, rows)


@dataclass(frozen=True)
class ThreeColumnFill:
    """Результат алгоритма трёх столбцов с трассировкой этапов"""
    rows: int
    columns: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]  # снизу вверх
    case: int  # 1: C₁ и C₂ заполнились первыми; 2: первым заполнился C₃
    stage_one_steps: int

    @property
    def arrangement(self) -> Arrangement:
        placement = {
            load: Cell(row, col)
            for col, column in enumerate(self.columns, start=1)
            for row, load in enumerate(column, start=1)
        }
        return Arrangement(GridSpec(self.rows, 3), placement)


def trace_three_column_fill(
    d_prime: Sequence[int], rows: int, heights: Optional[ColumnHeights] = None
) -> ThreeColumnFill:
    """
    Расстановка m грузов в r×3, удовлетворяющая [m] = (1, …, m) и d_prime.

    Первый этап: x — первый неразмещённый в [m], y — первый неразмещённый в d_prime;
    при x ≠ y они идут в C₁ и C₂, при x = y — в C₃. Второй этап:
    случай 1 — досыпаем C₃ остатком [m]; случай 2 — C₂ остатком d_prime,
    затем C₁ остатком [m]. Линейное время.
    """
    m = len(d_prime)
    heights = heights or ColumnHeights.full(rows)
    h = heights.as_tuple()
    if heights.total != m or max(h) > rows:
        raise HeightOverflow(
            "Высоты не согласованы с числом грузов", heights=h, loads=m, rows=rows
        )
    if sorted(d_prime) != list(range(1, m + 1)):
        raise LabelMismatch("d_prime должна быть перестановкой 1..m", loads=m)

    cols: tuple[list[int], list[int], list[int]] = ([], [], [])
    assigned = [False] * (m + 1)
    natural = range(1, m + 1)
    i = j = 0
    steps = 0

    def put(col: int, load: int) -> None:
        if len(cols[col]) >= h[col]:
            raise HeightOverflow(
                "Столбец переполнен", column=col + 1, height=h[col], load=load
            )
        cols[col].append(load)
        assigned[load] = True

    def next_natural() -> int:
        nonlocal i
        while assigned[natural[i]]:
            i += 1
        return natural[i]

    def next_prime() -> int:
        nonlocal j
        while assigned[d_prime[j]]:
            j += 1
        return d_prime[j]

    while True:
        if len(cols[0]) == h[0] and len(cols[1]) == h[1]:
            case = 1
            break
        if len(cols[2]) == h[2]:
            case = 2
            break
        x, y = next_natural(), next_prime()
        steps += 1
        if x != y:
            put(0, x)
            put(1, y)
        else:
            put(2, x)

    if case == 1:
        for load in natural:
            if not assigned[load]:
                put(2, load)
    else:
        for load in d_prime:
            if len(cols[1]) == h[1]:
                break
            if not assigned[load]:
                put(1, load)
        for load in natural:
            if not assigned[load]:
                put(0, load)

    return ThreeColumnFill(
        rows=rows,
        columns=(tuple(cols[0]), tuple(cols[1]), tuple(cols[2])),
        case=case,
        stage_one_steps=steps,
    )


def algorithm1_three_columns(
    d_prime: Sequence[int], rows: int, heights: Optional[ColumnHeights] = None
) -> Arrangement:
    """Расстановка r×3 по алгоритму двух последовательностей"""
    return trace_three_column_fill(d_prime, rows, heights).arrangement


def candidate_heights(m: int, rows: int) -> Iterator[ColumnHeights]:
    """
    Сначала ⌈m/3⌉ в C₁ и C₂ (по порядку, сколько хватит грузов), остаток в C₃;
    затем остальные разбиения (h, h, m − 2h)
    """
    target = min(math.ceil(m / 3), rows)
    h1 = min(target, m)
    h2 = min(target, m - h1)
    first = ColumnHeights(h1, h2, m - h1 - h2)
    if first.h3 <= rows:
        yield first
    for h in range(rows, -1, -1):
        rest = m - 2 * h
        if 0 <= rest <= rows and (h, h, rest) != first.as_tuple():
            yield ColumnHeights(h, h, rest)


# ===== РАССТАНОВКА ДЛЯ c ≥ 3 =====

def _check_shape(instance: Instance) -> None:
    grid = instance.grid
    if grid.cols < 3:
        raise NarrowGrid("Нужно не меньше трёх столбцов", cols=grid.cols)
    if instance.n > grid.capacity:
        raise TooManyLoads("Грузов больше, чем клеток", n=instance.n, capacity=grid.capacity)


def assign_from_stream(instance: Instance, stream: ArrivalStream) -> Arrangement:
    """
    Расстановка во внутренних метках (ранг отправления), прибытия читаются
    только через поток. Окно 3r − 1 достаточно: пачки по r и финальный блок
    ≤ 3r, последний груз которого выводится.
    """
    _check_shape(instance)
    grid = instance.grid
    r, n = grid.rows, instance.n
    rank = instance.departure_rank

    placement: dict[int, Cell] = {}
    col = 1
    while stream.remaining > 3 * r:
        batch = sorted(rank[a] for a in stream.take(r))
        for row, load in enumerate(batch, start=1):
            placement[load] = Cell(row, col)
        col += 1

    final = [rank[a] for a in stream.take(stream.remaining)]
    arrival_internal = [rank[a] for a in stream.consumed]
    identity = tuple(range(1, n + 1))
    reversed_arrival = reverse_sequence(arrival_internal)

    m = len(final)
    local = {load: i for i, load in enumerate(sorted(final), start=1)}
    to_internal = {i: load for load, i in local.items()}
    d_prime = [local[x] for x in reversed(final)]

    for heights in candidate_heights(m, r):
        try:
            block = algorithm1_three_columns(d_prime, r, heights)
        except HeightOverflow:
            continue
        full = dict(placement)
        for load, cell in block.placement.items():
            full[to_internal[load]] = Cell(cell.row, cell.col + col - 1)
        arrangement = Arrangement(grid, full)
        if satisfies_departure(arrangement, identity) and satisfies_departure(
            arrangement, reversed_arrival
        ):
            logger.debug("Финальный блок: %d грузов, высоты %s", m, heights.as_tuple())
            return arrangement
        logger.debug("Высоты %s не подошли, пробуем другие", heights.as_tuple())

    return _fallback_arrangement(instance, placement, final, col, arrival_internal)


def _fallback_arrangement(
    instance: Instance,
    placement: dict[int, Cell],
    final: list[int],
    col: int,
    arrival_internal: list[int],
) -> Arrangement:
    """Неполное заполнение, для которого ни одно разбиение высот не подошло"""
    from app.services.lookahead import sparse_arrangement
    from app.services.oracle import brute_force_feasible

    grid = instance.grid
    r, c, n = grid.rows, grid.cols, instance.n

    if n <= r * (c - 1) + 1:
        logger.info("Алгоритм трёх столбцов не подошёл, используем разреженную раскладку")
        return sparse_arrangement(grid, arrival_internal)

    m = len(final)
    if m <= 9:
        logger.info("Алгоритм трёх столбцов не подошёл, ищем финальный блок перебором")
        local = {load: i for i, load in enumerate(sorted(final), start=1)}
        to_internal = {i: load for load, i in local.items()}
        block = Instance(GridSpec(r, 3), tuple(local[x] for x in final))
        result = brute_force_feasible(block)
        if result.feasible and result.witness is not None:
            full = dict(placement)
            for load, cell in result.witness.placement.items():
                full[to_internal[load]] = Cell(cell.row, cell.col + col - 1)
            return Arrangement(grid, full)

    raise NoPlacement("Не удалось разложить финальный блок", loads=m, grid=str(grid))


def to_external_labels(instance: Instance, internal: Arrangement) -> Arrangement:
    return internal.relabeled({i: load for i, load in enumerate(instance.departure, start=1)})


def assign_offline_arrangement(instance: Instance) -> Arrangement:
    """Расстановка, удовлетворяющая D и обращённой A (полное знание A)"""
    stream = ArrivalStream(instance.arrival, window=max(instance.n, 1))
    internal = assign_from_stream(instance, stream)
    return to_external_labels(instance, internal)


def plan_from_arrangement(
    instance: Instance, arrangement: Arrangement, arrival: Optional[Sequence[int]] = None
) -> Plan:
    """
    Превратить расстановку в план из 2n действий без перестановок:
    хранение в порядке прибытия, затем выдача в порядке D.

    arrival: порядок, в котором грузы реально прибыли (например, `stream.consumed`);
    по умолчанию A экземпляра.
    """
    arrival = tuple(instance.arrival if arrival is None else arrival)
    if arrival != instance.arrival:
        raise LabelMismatch(
            "Порядок прибытия не совпадает с A", consumed=len(arrival), n=instance.n
        )
    if arrangement.loads != frozenset(arrival):
        raise LabelMismatch(
            "Расстановка и экземпляр содержат разные грузы",
            arrangement=len(arrangement), n=instance.n,
        )
    state = WorkspaceState(instance.grid)
    actions: list[Action] = []

    for load in arrival:
        path = find_store_path(state, arrangement[load])
        if path is None:
            raise NoPath("Нет пути хранения", load=load, phase="storage")
        action = Action(ActionKind.STORE, load, path)
        state.apply(action)
        actions.append(action)

    for load in instance.departure:
        path = find_retrieve_path(state, load)
        if path is None:
            raise NoPath("Нет пути выдачи", load=load, phase="retrieval")
        action = Action(ActionKind.RETRIEVE, load, path)
        state.apply(action)
        actions.append(action)

    return Plan.of(actions)


def plan_offline(instance: Instance) -> Plan:
    """Офлайн-план: расстановка + пути по столбцам"""
    arrangement = assign_offline_arrangement(instance)
    logger.info("Офлайн-план для %s, n=%d", instance.grid, instance.n)
    return plan_from_arrangement(instance, arrangement)
