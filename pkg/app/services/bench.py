"""
Генерация экземпляров и воспроизведение сравнительного бенчмарка
"""
import csv
import logging
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from typing import IO, Iterable, NamedTuple

import numpy as np

from app.core.exceptions import InvalidInstance, StorageError
from app.models.grid import GridSpec
from app.models.instance import Instance
from app.models.plan import Algorithm
from app.schemas.bench import BenchConfig, BenchRow, DensityPoint
from app.services.executor import execute_plan
from app.services.lookahead import sparse_capacity
from app.services.online import capacity_with_budget, max_density
from app.services.oracle import distance_lower_bound
from app.services.registry import plan_instance

logger = logging.getLogger(__name__)

BENCH_COLUMNS = [
    "m",
    "algorithm",
    "n",
    "seeds",
    "mean_retrieval_actions",
    "mean_total_actions",
    "mean_relocations",
    "mean_distance",
    "distance_lower_bound",
    "action_suboptimality",
    "distance_suboptimality",
]
DENSITY_COLUMNS = ["budget", "density", "numerator", "denominator"]


def generate_instance(grid: GridSpec, n: int, seed: int) -> Instance:
    """
    Случайный экземпляр: A — равномерная перестановка 1..n, D — тождественная.

    Генератор numpy PCG64 (`default_rng`), зерно — последовательность (seed, r, c, n).
    """
    if seed < 0:
        raise InvalidInstance("Зерно должно быть неотрицательным", seed=seed)
    rng = np.random.default_rng([seed, grid.rows, grid.cols, n])
    arrival = tuple(int(x) + 1 for x in rng.permutation(n))
    return Instance(grid, arrival)


def loads_for(grid: GridSpec, algorithm: Algorithm, budget: int) -> int:
    """Число грузов в ячейке бенчмарка: полная загрузка, если алгоритм её допускает"""
    if algorithm == Algorithm.SPARSE:
        return min(grid.capacity, sparse_capacity(grid))
    if algorithm == Algorithm.ONLINE:
        return min(grid.capacity, capacity_with_budget(grid, budget))
    return grid.capacity


class CellResult(NamedTuple):
    m: int
    algorithm: Algorithm
    seed: int
    n: int
    retrieval_actions: int
    total_actions: int
    relocations: int
    distance: int


def run_cell(m: int, algorithm: Algorithm, seed: int, budget: int) -> CellResult:
    """Один экземпляр: план, исполнение, метрики"""
    grid = GridSpec(m, m)
    try:
        n = loads_for(grid, algorithm, budget)
        instance = generate_instance(grid, n, seed)
        outcome = plan_instance(instance, algorithm, budget=budget)
        metrics = execute_plan(instance, outcome.plan)
    except StorageError as exc:
        exc.context.update(m=m, seed=seed, algorithm=algorithm.value)
        raise
    return CellResult(
        m=m,
        algorithm=algorithm,
        seed=seed,
        n=n,
        retrieval_actions=metrics.retrieval_phase_actions,
        total_actions=metrics.total_actions,
        relocations=metrics.relocations,
        distance=metrics.total_distance,
    )


def _aggregate(m: int, algorithm: Algorithm, results: list[CellResult]) -> BenchRow:
    n = results[0].n
    lower = distance_lower_bound(GridSpec(m, m), n)
    retrieval = float(np.mean([r.retrieval_actions for r in results]))
    distance = float(np.mean([r.distance for r in results]))
    return BenchRow(
        m=m,
        algorithm=algorithm,
        n=n,
        seeds=len(results),
        mean_retrieval_actions=retrieval,
        mean_total_actions=float(np.mean([r.total_actions for r in results])),
        mean_relocations=float(np.mean([r.relocations for r in results])),
        mean_distance=distance,
        distance_lower_bound=lower,
        action_suboptimality=retrieval / n - 1,
        distance_suboptimality=distance / lower - 1,
    )


def run_benchmark(config: BenchConfig) -> list[BenchRow]:
    """
    Все (m, алгоритм, сид) независимы; при workers > 1 считаются в пуле
    процессов, результаты собираются в порядке ключей.
    """
    seeds = range(config.seed_base, config.seed_base + config.seeds_per_size)
    keys = [(m, alg, seed) for m in config.sizes for alg in config.algorithms for seed in seeds]
    budget = config.online_budget

    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(
                pool.map(
                    run_cell,
                    [k[0] for k in keys],
                    [k[1] for k in keys],
                    [k[2] for k in keys],
                    [budget] * len(keys),
                )
            )
    else:
        results = [run_cell(m, alg, seed, budget) for m, alg, seed in keys]

    grouped: dict[tuple[int, Algorithm], list[CellResult]] = defaultdict(list)
    for result in results:
        grouped[(result.m, result.algorithm)].append(result)

    rows = []
    for m in config.sizes:
        for algorithm in config.algorithms:
            row = _aggregate(m, algorithm, grouped[(m, algorithm)])
            logger.info(
                "m=%d %s: действий при выдаче %.2f, дистанция %.2f (+%.1f%%)",
                m, algorithm.value, row.mean_retrieval_actions, row.mean_distance,
                100 * row.distance_suboptimality,
            )
            rows.append(row)
    return rows


def write_bench_csv(rows: Iterable[BenchRow], stream: IO[str]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(BENCH_COLUMNS)
    for row in rows:
        writer.writerow([
            row.m,
            row.algorithm.value,
            row.n,
            row.seeds,
            f"{row.mean_retrieval_actions:.4f}",
            f"{row.mean_total_actions:.4f}",
            f"{row.mean_relocations:.4f}",
            f"{row.mean_distance:.4f}",
            row.distance_lower_bound,
            f"{row.action_suboptimality:.6f}",
            f"{row.distance_suboptimality:.6f}",
        ])


# ===== ПЛОТНОСТЬ =====

def density_curve(max_budget: int) -> list[DensityPoint]:
    """Точки (a, 2a/(2a+1)) для a = 1..max_budget"""
    points = []
    for budget in range(1, max_budget + 1):
        density = max_density(budget)
        points.append(
            DensityPoint(
                budget=budget, numerator=density.numerator, denominator=density.denominator
            )
        )
    return points


def write_density_csv(points: Iterable[DensityPoint], stream: IO[str]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(DENSITY_COLUMNS)
    for point in points:
        writer.writerow([point.budget, str(point.density), point.numerator, point.denominator])
