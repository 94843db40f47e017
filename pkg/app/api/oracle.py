"""
API endpoints оракула
"""
from fastapi import APIRouter, Depends, Query

from app.api.deps import check_characterize_size, load_instance
from app.core.config import Settings, get_settings
from app.models.grid import GridSpec
from app.schemas.instance import InstanceFile
from app.schemas.oracle import CharacterizationRead, FeasibilityRead
from app.services.oracle import brute_force_feasible, distance_lower_bound, exhaustive_characterization


router = APIRouter()


@router.post("/feasibility", response_model=FeasibilityRead)
def check_feasibility(data: InstanceFile):
    """
    Существует ли план без перестановок (перебор расстановок)
    """
    result = brute_force_feasible(load_instance(data))
    return FeasibilityRead.from_result(result)


@router.get("/characterize", response_model=CharacterizationRead)
def characterize(
    shape: tuple[int, int] = Depends(check_characterize_size),
    settings: Settings = Depends(get_settings),
):
    """
    Перебрать все порядки прибытия при полной загрузке
    """
    rows, cols = shape
    report = exhaustive_characterization(rows, cols, workers=settings.bench_workers)
    return CharacterizationRead.from_report(report)


@router.get("/lower-bound")
def lower_bound(
    rows: int = Query(..., ge=1),
    cols: int = Query(..., ge=1),
    n: int = Query(..., ge=1),
):
    """
    Нижняя граница суммарной дистанции для n грузов
    """
    grid = GridSpec(rows, cols)
    return {"rows": rows, "cols": cols, "n": n, "lower_bound": distance_lower_bound(grid, n)}
