"""
Тесты полностью онлайн-политики с проходами
"""
from fractions import Fraction

import numpy as np
import pytest

from app.core.exceptions import (
    BudgetExceeded,
    CapacityExceeded,
    InvalidInstance,
    TooNarrow,
    UnknownLoad,
)
from app.models.grid import Arrangement, Cell, GridSpec
from app.models.instance import Instance
from app.services.executor import execute_plan
from app.services.online import (
    FullyOnlinePolicy,
    aisle_layout,
    capacity_with_budget,
    fully_online_policy,
    max_density,
    plan_online,
)
from app.services.structure import compute_depth


def test_max_density():
    assert max_density(1) == Fraction(2, 3)
    assert max_density(2) == Fraction(4, 5)
    assert max_density(4) == Fraction(8, 9)
    with pytest.raises(InvalidInstance):
        max_density(0)


def test_single_depth_layout():
    grid = GridSpec(4, 6)
    layout = aisle_layout(grid, 1)
    assert layout.aisle_columns == {2, 5}
    assert len(layout.storage_cells) == 16
    assert layout.buffer_cells == ()
    assert layout.density == Fraction(2, 3)

    full = Arrangement(grid, {i: cell for i, cell in enumerate(layout.storage_cells, start=1)})
    assert compute_depth(grid, full) == 1


def test_double_depth_layout():
    grid = GridSpec(4, 10)
    layout = aisle_layout(grid, 2)
    assert layout.aisle_columns == {3, 8}
    assert len(layout.storage_cells) == 32
    assert layout.density == Fraction(4, 5)
    assert layout.buffer_cells == (Cell(4, 2), Cell(4, 7))

    full = Arrangement(grid, {i: cell for i, cell in enumerate(layout.storage_cells, start=1)})
    assert compute_depth(grid, full) == 2


@pytest.mark.parametrize("k", [1, 2, 3])
def test_denser_than_layout_means_deeper(k):
    """Лишний груз в любой клетке прохода: плотность выше 2k/(2k+1), глубина выше k"""
    width = 2 * k + 1
    for rows in range(k + 1, 5):
        for cols in range(width, 11, width):
            grid = GridSpec(rows, cols)
            layout = aisle_layout(grid, k, budget=1)
            placement = {i: cell for i, cell in enumerate(layout.storage_cells, start=1)}
            assert compute_depth(grid, Arrangement(grid, placement)) == k

            extra = len(placement) + 1
            for aisle in sorted(layout.aisle_columns):
                for row in range(1, rows + 1):
                    denser = Arrangement(grid, {**placement, extra: Cell(row, aisle)})
                    assert Fraction(len(denser), grid.capacity) > max_density(k)
                    assert compute_depth(grid, denser) > k


def test_remainder_columns_get_their_own_aisle():
    assert aisle_layout(GridSpec(4, 8), 1).aisle_columns == {2, 5, 8}
    assert aisle_layout(GridSpec(3, 7), 2).aisle_columns == {3, 7}


def test_layout_needs_one_full_group():
    with pytest.raises(TooNarrow):
        aisle_layout(GridSpec(4, 4), 2)


def test_capacity_with_budget():
    assert capacity_with_budget(GridSpec(4, 6), 1) == 16
    assert capacity_with_budget(GridSpec(4, 10), 2) == 30
    assert capacity_with_budget(GridSpec(4, 5), 2) == 15


def _run_random(policy: FullyOnlinePolicy, n: int, rng: np.random.Generator) -> list[int]:
    counts = []
    for load in rng.permutation(n) + 1:
        policy.on_arrival(int(load))
        assert policy.aisles_empty()
    for load in rng.permutation(n) + 1:
        actions = policy.on_departure(int(load))
        counts.append(len(actions))
        assert policy.aisles_empty()
    assert len(policy.state) == 0
    return counts


def test_single_action_per_retrieval():
    rng = np.random.default_rng(7)
    for _ in range(30):
        policy = fully_online_policy(GridSpec(4, 6), 16, budget=1)
        assert set(_run_random(policy, 16, rng)) == {1}


def test_two_actions_with_buffers():
    rng = np.random.default_rng(11)
    for _ in range(100):
        policy = fully_online_policy(GridSpec(4, 10), 30, budget=2)
        counts = _run_random(policy, 30, rng)
        assert max(counts) <= 2


def test_stores_use_single_action():
    policy = fully_online_policy(GridSpec(4, 10), 30, budget=2)
    for load in range(1, 31):
        action = policy.on_arrival(load)
        assert action.destination not in policy.layout.buffer_cells
        assert not policy.layout.is_aisle(action.destination)


def test_capacity_is_enforced():
    with pytest.raises(CapacityExceeded):
        fully_online_policy(GridSpec(4, 6), 17, budget=1)

    policy = fully_online_policy(GridSpec(4, 6), 16, budget=1)
    for load in range(1, 17):
        policy.on_arrival(load)
    with pytest.raises(CapacityExceeded):
        policy.on_arrival(17)


def test_unknown_departure():
    policy = fully_online_policy(GridSpec(4, 6), 4, budget=1)
    policy.on_arrival(1)
    with pytest.raises(UnknownLoad):
        policy.on_departure(2)


def test_departure_over_budget_raises():
    """Груз в проходе нарушает инвариант: выдача не укладывается в бюджет"""
    policy = FullyOnlinePolicy(GridSpec(4, 3), budget=1)
    policy.state.place(1, Cell(2, 1))
    policy.state.place(2, Cell(1, 1))
    policy.state.place(3, Cell(1, 3))
    policy.state.place(4, Cell(2, 2))
    before = policy.state.snapshot()

    with pytest.raises(BudgetExceeded) as exc:
        policy.on_departure(1)
    assert exc.value.context["actions"] == 2
    assert exc.value.context["budget"] == 1
    assert policy.state.snapshot() == before


def test_online_plan_passes_executor():
    rng = np.random.default_rng(3)
    arrival = tuple(int(x) + 1 for x in rng.permutation(30))
    departure = tuple(int(x) + 1 for x in rng.permutation(30))
    instance = Instance(GridSpec(4, 10), arrival, departure, budget=2)
    metrics = execute_plan(instance, plan_online(instance))
    assert metrics.stores == 30
    assert metrics.retrieves == 30
    assert metrics.relocations <= 30
