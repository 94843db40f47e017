"""
Доменные модели GRIDSTORE
"""
from app.models.grid import Arrangement, Cell, GridSpec
from app.models.instance import Instance
from app.models.plan import Action, ActionKind, Algorithm, Metrics, Plan

__all__ = [
    "Action",
    "ActionKind",
    "Algorithm",
    "Arrangement",
    "Cell",
    "GridSpec",
    "Instance",
    "Metrics",
    "Plan",
]
