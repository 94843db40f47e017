"""
Тесты базового алгоритма сравнения
"""
import pytest

from app.models.grid import Cell, GridSpec
from app.models.instance import Instance
from app.models.plan import ActionKind
from app.services.baseline import plan_baseline
from app.services.executor import execute_plan
from tests.helpers import random_instance


def test_blocker_is_carried_out_and_back(baseline_nine):
    plan = plan_baseline(baseline_nine)
    stores = [a for a in plan if a.kind == ActionKind.STORE and not a.temporary]
    assert stores[3].load == 1
    assert stores[3].destination == Cell(2, 2)

    final = {a.load: a.destination for a in stores}
    assert final == {
        2: Cell(1, 1), 3: Cell(1, 2), 6: Cell(1, 3),
        5: Cell(2, 1), 1: Cell(2, 2), 4: Cell(2, 3),
        8: Cell(3, 1), 7: Cell(3, 2), 9: Cell(3, 3),
    }

    retrieval = list(plan)[9:12]
    assert [(a.kind, a.load, a.temporary) for a in retrieval] == [
        (ActionKind.RETRIEVE, 3, True),
        (ActionKind.RETRIEVE, 1, False),
        (ActionKind.STORE, 3, True),
    ]

    metrics = execute_plan(baseline_nine, plan)
    assert metrics.temporary_actions == 2
    assert metrics.total_actions == 20
    assert metrics.relocations == 0
    assert metrics.retrieval_phase_actions == 11


@pytest.mark.parametrize("shape", [(2, 2), (3, 3)])
def test_identity_order_needs_no_extra_actions(shape):
    grid = GridSpec(*shape)
    instance = Instance(grid, tuple(range(1, grid.capacity + 1)))
    metrics = execute_plan(instance, plan_baseline(instance))
    assert metrics.total_actions == 2 * instance.n
    assert metrics.temporary_actions == 0


@pytest.mark.parametrize("shape", [(3, 3), (4, 4), (5, 3)])
def test_random_plans_are_valid(shape):
    rows, cols = shape
    for seed in range(10):
        instance = random_instance(rows, cols, rows * cols, seed)
        metrics = execute_plan(instance, plan_baseline(instance))
        assert metrics.total_actions >= 2 * instance.n
        assert metrics.total_actions == 2 * instance.n + metrics.temporary_actions
        assert metrics.temporary_actions % 2 == 0
