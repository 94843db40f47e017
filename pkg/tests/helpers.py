"""
Вспомогательные функции для тестов
"""
import numpy as np

from app.models.grid import Arrangement, Cell, GridSpec
from app.models.instance import Instance
from app.models.plan import Plan
from app.services.structure import is_column_adjacent


def arrangement_from_rows(grid: GridSpec, rows: list[list[int]]) -> Arrangement:
    """rows[0] — передний ряд; 0 означает пустую клетку"""
    placement = {}
    for r, row in enumerate(rows, start=1):
        for c, load in enumerate(row, start=1):
            if load:
                placement[load] = Cell(r, c)
    return Arrangement(grid, placement)


def random_instance(rows: int, cols: int, n: int, seed: int, shuffle_departure: bool = False) -> Instance:
    rng = np.random.default_rng(seed)
    arrival = tuple(int(x) + 1 for x in rng.permutation(n))
    departure = tuple(int(x) + 1 for x in rng.permutation(n)) if shuffle_departure else None
    return Instance(GridSpec(rows, cols), arrival, departure)


def all_column_adjacent(plan: Plan) -> bool:
    return all(is_column_adjacent(action.path) for action in plan)
