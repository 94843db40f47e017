"""
API роутеры
"""
from fastapi import APIRouter

from app.api import bench, oracle, plans

api_router = APIRouter()

api_router.include_router(plans.router, prefix="/plans", tags=["plans"])
api_router.include_router(oracle.router, prefix="/oracle", tags=["oracle"])
api_router.include_router(bench.router, prefix="/bench", tags=["bench"])
