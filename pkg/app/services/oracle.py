"""
Оракул: перебор расстановок без перестановок, нижняя граница дистанции,
полная проверка всех порядков прибытия на маленьких сетках.
"""
import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from app.core.config import settings
from app.core.exceptions import StorageError, TooLarge
from app.models.grid import Arrangement, Cell, GridSpec
from app.models.instance import Instance
from app.services.structure import reverse_sequence, satisfies_departure

logger = logging.getLogger(__name__)


@dataclass
class SearchStats:
    nodes: int = 0
    pruned: int = 0


@dataclass(frozen=True)
class FeasibilityResult:
    """Есть ли расстановка, удовлетворяющая D и обращённой A"""
    feasible: bool
    witness: Optional[Arrangement] = None
    stats: SearchStats = field(default_factory=SearchStats)


def brute_force_feasible(instance: Instance) -> FeasibilityResult:
    """
    Перебор с отсечениями. Грузы ставятся в порядке D, клетки перебираются
    спереди назад и слева направо; возвращается первая найденная расстановка.
    """
    n = instance.n
    if n > settings.oracle_max_loads:
        raise TooLarge("Слишком много грузов для перебора", n=n, limit=settings.oracle_max_loads)

    grid = instance.grid
    cells = list(grid.cells())
    departure = instance.departure
    reversed_arrival = reverse_sequence(instance.arrival)
    arrival_pos = {load: i for i, load in enumerate(instance.arrival)}
    # при полной загрузке пустая клетка рано или поздно будет занята,
    # поэтому помочь может только уже поставленный сосед
    full = n == grid.capacity
    by_cell: dict[Cell, int] = {}
    placement: dict[int, Cell] = {}
    stats = SearchStats()

    def departure_ok(cell: Cell) -> bool:
        if cell.row == 1:
            return True
        return any(nb in by_cell or not full for nb in grid.neighbors(cell))

    def storage_ok(load: int, cell: Cell) -> bool:
        # для обращённой A нужен сосед, прибывающий позже, или пустая клетка
        if cell.row == 1:
            return True
        for nb in grid.neighbors(cell):
            other = by_cell.get(nb)
            if other is None or arrival_pos[other] > arrival_pos[load]:
                return True
        return False

    def search(i: int) -> bool:
        if i == n:
            witness = Arrangement(grid, dict(placement))
            return satisfies_departure(witness, departure) and satisfies_departure(
                witness, reversed_arrival
            )
        load = departure[i]
        for cell in cells:
            if cell in by_cell or not departure_ok(cell):
                continue
            stats.nodes += 1
            by_cell[cell] = load
            placement[load] = cell
            touched = [cell] + [nb for nb in grid.neighbors(cell) if nb in by_cell]
            if all(storage_ok(by_cell[c], c) for c in touched):
                if search(i + 1):
                    return True
            else:
                stats.pruned += 1
            del by_cell[cell]
            del placement[load]
        return False

    if not search(0):
        logger.debug("Расстановка не найдена: %d узлов", stats.nodes)
        return FeasibilityResult(False, None, stats)
    return FeasibilityResult(True, Arrangement(grid, dict(placement)), stats)


def distance_lower_bound(grid: GridSpec, n: int) -> int:
    """2 × сумма номеров рядов n ближайших к фронту клеток"""
    total = 0
    remaining = n
    for row in range(1, grid.rows + 1):
        take = min(grid.cols, remaining)
        total += take * row
        remaining -= take
        if not remaining:
            break
    return 2 * total


# ===== ПОЛНАЯ ПРОВЕРКА =====

@dataclass(frozen=True)
class CharacterizationReport:
    rows: int
    cols: int
    total: int
    infeasible: int
    sample_infeasible: Optional[tuple[int, ...]] = None
    certified_by_planner: int = 0


def _certify(instance: Instance) -> Optional[bool]:
    """Проверить расстановку офлайн-планировщика; None, если она не подошла"""
    from app.services.offline import assign_offline_arrangement

    try:
        arrangement = assign_offline_arrangement(instance)
    except StorageError:
        return None
    if satisfies_departure(arrangement, instance.departure) and satisfies_departure(
        arrangement, reverse_sequence(instance.arrival)
    ):
        return True
    return None


def _shard(rows: int, cols: int, first: int) -> CharacterizationReport:
    """Все перестановки с фиксированным первым прибытием"""
    grid = GridSpec(rows, cols)
    n = grid.capacity
    rest = [x for x in range(1, n + 1) if x != first]
    total = infeasible = certified = 0
    sample = None
    for tail in itertools.permutations(rest):
        arrival = (first,) + tail
        instance = Instance(grid, arrival)
        total += 1
        if cols >= 3 and _certify(instance):
            certified += 1
            continue
        if not brute_force_feasible(instance).feasible:
            infeasible += 1
            if sample is None:
                sample = arrival
    return CharacterizationReport(rows, cols, total, infeasible, sample, certified)


def exhaustive_characterization(
    rows: int, cols: int, workers: Optional[int] = None
) -> CharacterizationReport:
    """
    Перебрать все порядки прибытия при полной загрузке (D тождественная).

    Перестановки делятся на независимые части по первому прибытию; части
    собираются в порядке первого груза, так что отчёт детерминирован.
    """
    n = rows * cols
    if n > settings.characterize_max_cells:
        raise TooLarge(
            "Сетка слишком велика для полного перебора",
            cells=n, limit=settings.characterize_max_cells,
        )
    firsts = list(range(1, n + 1))
    workers = workers or 1
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            shards = list(pool.map(_shard, [rows] * n, [cols] * n, firsts))
    else:
        shards = [_shard(rows, cols, first) for first in firsts]

    sample = next((s.sample_infeasible for s in shards if s.sample_infeasible), None)
    report = CharacterizationReport(
        rows=rows,
        cols=cols,
        total=sum(s.total for s in shards),
        infeasible=sum(s.infeasible for s in shards),
        sample_infeasible=sample,
        certified_by_planner=sum(s.certified_by_planner for s in shards),
    )
    logger.info(
        "Перебор %dx%d: %d перестановок, невыполнимых %d",
        rows, cols, report.total, report.infeasible,
    )
    return report
