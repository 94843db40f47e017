"""
API endpoints бенчмарка
"""
from typing import List

from fastapi import APIRouter, Query

from app.schemas.bench import BenchConfig, BenchRow, DensityPoint
from app.services.bench import density_curve, run_benchmark


router = APIRouter()


@router.post("/", response_model=List[BenchRow])
def run_bench(config: BenchConfig):
    """
    Прогнать бенчмарк (синхронно, небольшие размеры)
    """
    return run_benchmark(config)


@router.get("/density-curve", response_model=List[DensityPoint])
def get_density_curve(max_budget: int = Query(9, ge=1, le=100)):
    """
    Кривая «бюджет действий — предельная плотность»
    """
    return density_curve(max_budget)
