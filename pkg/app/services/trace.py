"""
Экспорт трассы исполнения плана (JSON Lines, одна запись на действие)
"""
from typing import IO, Iterable

from app.models.instance import Instance
from app.models.plan import Plan
from app.schemas.trace import TraceRecord
from app.services.executor import WorkspaceState, execute_plan


def export_trace(instance: Instance, plan: Plan) -> list[TraceRecord]:
    """План сначала проверяется исполнителем, затем воспроизводится с записью снимков"""
    execute_plan(instance, plan)
    state = WorkspaceState(instance.grid)
    records = []
    for seq, action in enumerate(plan, start=1):
        state.apply(action)
        records.append(TraceRecord.from_action(seq, action, state.snapshot()))
    return records


def write_trace(records: Iterable[TraceRecord], stream: IO[str]) -> int:
    count = 0
    for record in records:
        stream.write(record.model_dump_json() + "\n")
        count += 1
    return count
