"""
Тесты оракула: перебор расстановок, нижняя граница, полный перебор порядков
"""
import pytest

from app.core.exceptions import TooLarge
from app.models.grid import GridSpec
from app.models.instance import Instance
from app.models.plan import Algorithm
from app.services.executor import execute_plan
from app.services.oracle import (
    brute_force_feasible,
    distance_lower_bound,
    exhaustive_characterization,
)
from app.services.registry import plan_instance
from app.services.structure import reverse_sequence, satisfies_departure
from tests.helpers import random_instance


def test_buried_load_is_infeasible(buried_two):
    result = brute_force_feasible(buried_two)
    assert not result.feasible
    assert result.witness is None
    assert result.stats.nodes > 0


def test_nine_loads_are_feasible(nine_loads):
    result = brute_force_feasible(nine_loads)
    assert result.feasible
    witness = result.witness
    assert satisfies_departure(witness, nine_loads.departure)
    assert satisfies_departure(witness, reverse_sequence(nine_loads.arrival))


@pytest.mark.parametrize("shape", [(1, 1), (2, 2), (3, 3)])
def test_single_load_is_always_feasible(shape):
    result = brute_force_feasible(Instance(GridSpec(*shape), (1,)))
    assert result.feasible


def test_partial_fill_witness():
    instance = Instance(GridSpec(2, 2), (3, 1, 2))
    result = brute_force_feasible(instance)
    assert result.feasible
    assert result.witness.placement == {1: (1, 1), 2: (1, 2), 3: (2, 1)}


def test_oracle_size_limit():
    with pytest.raises(TooLarge):
        brute_force_feasible(Instance(GridSpec(4, 4), tuple(range(1, 14))))


def test_distance_lower_bound():
    assert distance_lower_bound(GridSpec(10, 10), 100) == 1100
    assert distance_lower_bound(GridSpec(4, 6), 24) == 120
    assert distance_lower_bound(GridSpec(4, 6), 1) == 2
    assert distance_lower_bound(GridSpec(4, 6), 7) == 2 * (6 + 2)


@pytest.mark.parametrize(
    "n, algorithms",
    [
        (24, [Algorithm.OFFLINE, Algorithm.LOOKAHEAD, Algorithm.LPATHS, Algorithm.BASELINE]),
        (22, [Algorithm.OFFLINE, Algorithm.LOOKAHEAD, Algorithm.LPATHS, Algorithm.BASELINE]),
        (16, [Algorithm.OFFLINE, Algorithm.SPARSE, Algorithm.ONLINE, Algorithm.BASELINE]),
        (7, [Algorithm.OFFLINE, Algorithm.SPARSE, Algorithm.ONLINE, Algorithm.BASELINE]),
    ],
)
def test_lower_bound_holds_for_every_planner(n, algorithms):
    bound = distance_lower_bound(GridSpec(4, 6), n)
    for seed in range(5):
        instance = random_instance(4, 6, n, seed, shuffle_departure=seed % 2 == 1)
        for algorithm in algorithms:
            outcome = plan_instance(instance, algorithm, budget=1)
            metrics = execute_plan(instance, outcome.plan)
            assert metrics.total_distance >= bound, algorithm


def test_characterize_two_by_two():
    report = exhaustive_characterization(2, 2)
    assert report.total == 24
    assert report.infeasible > 0
    assert report.sample_infeasible is not None
    sample = Instance(GridSpec(2, 2), report.sample_infeasible)
    assert not brute_force_feasible(sample).feasible


def test_characterize_three_by_two():
    report = exhaustive_characterization(3, 2)
    assert report.total == 720
    assert report.infeasible > 0
    assert report.certified_by_planner == 0


def test_characterize_size_limit():
    with pytest.raises(TooLarge):
        exhaustive_characterization(4, 4)


@pytest.mark.slow
def test_characterize_three_by_three_is_all_feasible():
    report = exhaustive_characterization(3, 3, workers=2)
    assert report.total == 362880
    assert report.infeasible == 0
    assert report.certified_by_planner == report.total
