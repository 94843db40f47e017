"""
Pydantic схемы ответов оракула
"""
from typing import List, Optional

from pydantic import BaseModel

from app.services.oracle import CharacterizationReport, FeasibilityResult


class FeasibilityRead(BaseModel):
    feasible: bool
    witness: Optional[List[tuple[int, int, int]]] = None  # (груз, ряд, столбец)
    nodes: int
    pruned: int

    @classmethod
    def from_result(cls, result: FeasibilityResult) -> "FeasibilityRead":
        witness = None
        if result.witness is not None:
            witness = [
                (load, cell.row, cell.col)
                for load, cell in sorted(result.witness.placement.items())
            ]
        return cls(
            feasible=result.feasible,
            witness=witness,
            nodes=result.stats.nodes,
            pruned=result.stats.pruned,
        )


class CharacterizationRead(BaseModel):
    rows: int
    cols: int
    total: int
    infeasible: int
    sample_infeasible: Optional[List[int]] = None
    certified_by_planner: int = 0

    @classmethod
    def from_report(cls, report: CharacterizationReport) -> "CharacterizationRead":
        return cls(
            rows=report.rows,
            cols=report.cols,
            total=report.total,
            infeasible=report.infeasible,
            sample_infeasible=list(report.sample_infeasible) if report.sample_infeasible else None,
            certified_by_planner=report.certified_by_planner,
        )
