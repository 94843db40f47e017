"""
Общие фикстуры: небольшие экземпляры, разобранные вручную
"""
import pytest

from app.core.logging import setup_logging
from app.models.grid import Arrangement, GridSpec
from app.models.instance import Instance
from tests.helpers import arrangement_from_rows


@pytest.fixture(autouse=True, scope="session")
def _logging():
    setup_logging("WARNING")


@pytest.fixture
def three_by_three() -> GridSpec:
    return GridSpec(3, 3)


@pytest.fixture
def nine_loads(three_by_three) -> Instance:
    """3×3, A = (9,4,7,3,6,2,1,8,5), D тождественная"""
    return Instance(three_by_three, (9, 4, 7, 3, 6, 2, 1, 8, 5))


@pytest.fixture
def nine_loads_arrangement(three_by_three) -> Arrangement:
    return arrangement_from_rows(three_by_three, [[1, 5, 4], [2, 8, 7], [3, 6, 9]])


@pytest.fixture
def buried_two() -> Instance:
    """2×2, A = (1,4,2,3): без перемещения не обойтись"""
    return Instance(GridSpec(2, 2), (1, 4, 2, 3))


@pytest.fixture
def fifteen_loads() -> Instance:
    """3×5, полная загрузка: две пачки по три груза и финальный блок 3×3"""
    return Instance(GridSpec(3, 5), (4, 10, 6, 12, 2, 3, 9, 15, 1, 14, 13, 7, 5, 11, 8))


@pytest.fixture
def baseline_nine(three_by_three) -> Instance:
    return Instance(three_by_three, (5, 2, 3, 1, 8, 7, 9, 4, 6))
