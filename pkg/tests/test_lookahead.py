"""
Тесты режимов с ограниченным lookahead: поток прибытий, разреженная
раскладка, L-пути и выбор стратегии
"""
import itertools
from fractions import Fraction

import pytest

from app.core.exceptions import CountMismatch, LookaheadExceeded, ShapeError, TooDense
from app.models.grid import Cell, GridSpec
from app.models.instance import Instance
from app.models.plan import ActionKind
from app.services.executor import execute_plan
from app.services.lookahead import (
    ArrivalStream,
    StrategyName,
    build_L_paths,
    choose_strategy,
    lpath_ratio_bound,
    plan_L_lookahead1,
    plan_sparse_lookahead1,
    sparse_arrangement,
    sparse_capacity,
)
from tests.helpers import all_column_adjacent, random_instance


# ===== ПОТОК =====

def test_stream_respects_window():
    stream = ArrivalStream((3, 1, 2), window=2)
    assert stream.peek(1) == 1
    with pytest.raises(LookaheadExceeded):
        stream.peek(2)
    assert stream.advance() == 3
    assert stream.max_peek_depth == 2
    assert stream.remaining == 2


def test_stream_deduces_last_arrival():
    stream = ArrivalStream((2, 3, 1), window=2)
    assert stream.take(3) == [2, 3, 1]
    assert stream.max_peek_depth == 2
    assert stream.consumed == (2, 3, 1)
    with pytest.raises(CountMismatch):
        stream.upcoming(1)


def test_stream_rejects_empty_window():
    with pytest.raises(LookaheadExceeded):
        ArrivalStream((1,), window=0)


# ===== РАЗРЕЖЕННАЯ РАСКЛАДКА =====

def test_sparse_capacity():
    assert sparse_capacity(GridSpec(3, 3)) == 7
    assert sparse_capacity(GridSpec(4, 6)) == 21
    assert sparse_capacity(GridSpec(1, 1)) == 1


def test_sparse_layout_keeps_last_column_free():
    grid = GridSpec(3, 3)
    arrangement = sparse_arrangement(grid, (5, 1, 2, 6, 3, 7, 4))
    assert arrangement[1] == Cell(1, 3)
    assert {arrangement[r].col for r in (2, 3, 4)} == {2}
    assert {arrangement[r].col for r in (5, 6, 7)} == {1}
    assert arrangement[2] == Cell(3, 2)
    assert arrangement[4] == Cell(1, 2)


def test_sparse_plan_has_no_relocations():
    for seed in range(100):
        instance = random_instance(3, 3, 7, seed)
        stream = ArrivalStream(instance.arrival, window=1)
        plan = plan_sparse_lookahead1(stream, instance)
        metrics = execute_plan(instance, plan)
        assert metrics.total_actions == 14
        assert metrics.relocations == 0
        assert stream.max_peek_depth == 1
        assert all_column_adjacent(plan)


def test_sparse_plan_with_shuffled_departure():
    instance = random_instance(4, 5, 17, seed=3, shuffle_departure=True)
    plan = plan_sparse_lookahead1(ArrivalStream(instance.arrival, 1), instance)
    assert execute_plan(instance, plan).total_actions == 34


def test_sparse_rejects_dense_input():
    instance = random_instance(3, 3, 8, seed=0)
    with pytest.raises(TooDense):
        plan_sparse_lookahead1(ArrivalStream(instance.arrival, 1), instance)


# ===== L-ПУТИ =====

def test_L_paths_partition_grid():
    layout = build_L_paths(GridSpec(5, 8))
    assert layout.sizes() == [5, 5, 5, 9, 7, 5, 3, 1]
    assert len(layout.corners) == 4
    assert layout.corners == {Cell(5, 4), Cell(4, 5), Cell(3, 6), Cell(2, 7)}
    assert layout.paths[3][:2] == (Cell(1, 4), Cell(2, 4))
    assert layout.paths[3][-1] == Cell(5, 8)

    cells = [c for path in layout.paths for c in path]
    assert len(cells) == len(set(cells)) == 40


@pytest.mark.parametrize("shape", [(1, 1), (1, 4), (2, 2), (3, 3), (3, 5), (4, 4)])
def test_L_path_sizes_sum_to_capacity(shape):
    grid = GridSpec(*shape)
    layout = build_L_paths(grid)
    assert sum(layout.sizes()) == grid.capacity
    assert len(layout.paths) == grid.cols
    assert len(layout.corners) == grid.rows - 1


def test_L_paths_need_wide_grid():
    with pytest.raises(ShapeError):
        build_L_paths(GridSpec(4, 3))


def test_L_paths_buried_load(buried_two):
    plan = plan_L_lookahead1(ArrivalStream(buried_two.arrival, 1), buried_two)
    metrics = execute_plan(buried_two, plan)
    assert metrics.total_actions == 9
    assert metrics.relocations == 1
    assert Fraction(metrics.total_actions, 2 * buried_two.n) == lpath_ratio_bound(2, 2)


def test_L_paths_two_by_two_worst_case():
    grid = GridSpec(2, 2)
    totals = []
    for arrival in itertools.permutations(range(1, 5)):
        instance = Instance(grid, arrival)
        plan = plan_L_lookahead1(ArrivalStream(arrival, 1), instance)
        totals.append(execute_plan(instance, plan).total_actions)
    assert max(totals) == 9
    assert min(totals) == 8


@pytest.mark.parametrize("shape", [(2, 3), (3, 3), (3, 4), (4, 4), (4, 6), (5, 5)])
def test_L_paths_bounds(shape):
    rows, cols = shape
    for skip in (0, rows - 1):
        n = rows * cols - skip
        for seed in range(20):
            instance = random_instance(rows, cols, n, seed, shuffle_departure=seed % 2 == 1)
            stream = ArrivalStream(instance.arrival, 1)
            plan = plan_L_lookahead1(stream, instance, skip=skip)
            metrics = execute_plan(instance, plan)
            assert stream.max_peek_depth == 1
            assert metrics.relocations <= rows - 1 - skip
            assert metrics.max_retrieval_actions_per_load <= 2
            assert metrics.total_actions <= 2 * n + rows - 1 - skip
            assert Fraction(metrics.total_actions, 2 * n) <= lpath_ratio_bound(rows, cols, skip)
            assert all(a.kind != ActionKind.RELOCATE or a.length <= 4 for a in plan)


@pytest.mark.slow
@pytest.mark.parametrize("rows", range(1, 13))
def test_L_paths_bounds_sweep(rows):
    """Все r ≤ c ≤ 12 и три уровня незаполненности"""
    for cols in range(rows, 13):
        for skip in sorted({0, (rows - 1) // 2, rows - 1}):
            n = rows * cols - skip
            cap = Fraction(21, 20) if rows > 9 else Fraction(9, 8)
            for seed in range(15):
                instance = random_instance(rows, cols, n, seed, shuffle_departure=seed % 2 == 1)
                stream = ArrivalStream(instance.arrival, 1)
                metrics = execute_plan(instance, plan_L_lookahead1(stream, instance, skip=skip))
                assert metrics.relocations <= rows - 1 - skip
                assert metrics.max_retrieval_actions_per_load <= 2
                ratio = Fraction(metrics.total_actions, 2 * n)
                assert ratio <= lpath_ratio_bound(rows, cols, skip)
                assert ratio <= cap


def test_L_paths_ratio_bound():
    assert lpath_ratio_bound(2, 2) == Fraction(9, 8)
    for rows in range(1, 8):
        for cols in range(rows, 10):
            assert lpath_ratio_bound(rows, cols) <= Fraction(9, 8)


def test_L_paths_argument_checks():
    instance = random_instance(3, 3, 9, seed=0)
    with pytest.raises(ShapeError):
        plan_L_lookahead1(ArrivalStream(instance.arrival, 1), instance, skip=3)
    with pytest.raises(CountMismatch):
        plan_L_lookahead1(ArrivalStream(instance.arrival, 1), instance, skip=1)


# ===== ВЫБОР СТРАТЕГИИ =====

def test_strategy_choice():
    sparse = choose_strategy(random_instance(4, 6, 21, seed=0))
    assert sparse.name == StrategyName.SPARSE

    full = choose_strategy(random_instance(4, 6, 24, seed=0))
    assert full.name == StrategyName.LPATHS
    assert full.skip == 0

    almost = choose_strategy(random_instance(4, 6, 22, seed=0))
    assert almost.name == StrategyName.LPATHS
    assert almost.skip == 2

    tall = Instance(GridSpec(5, 3), tuple(range(1, 16)), lookahead=1)
    assert choose_strategy(tall).name == StrategyName.NONE

    tall_window = Instance(GridSpec(5, 3), tuple(range(1, 16)), lookahead=14)
    assert choose_strategy(tall_window).name == StrategyName.FULL
