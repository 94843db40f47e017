"""
Тесты экспорта трассы
"""
import io
import json

import pytest

from app.core.exceptions import IncompletePlan
from app.models.plan import ActionKind, Plan
from app.services.offline import plan_offline
from app.services.trace import export_trace, write_trace


def test_trace_follows_plan(nine_loads):
    plan = plan_offline(nine_loads)
    records = export_trace(nine_loads, plan)

    assert len(records) == 18
    assert [r.seq for r in records] == list(range(1, 19))
    assert [r.load for r in records[:9]] == list(nine_loads.arrival)
    assert all(r.kind == ActionKind.STORE for r in records[:9])

    first = records[0]
    assert first.occupancy == [(9, *first.path[-1])]
    assert len(records[8].occupancy) == 9
    assert records[9].load == 1
    assert records[-1].occupancy == []


def test_trace_rejects_incomplete_plan(nine_loads):
    with pytest.raises(IncompletePlan):
        export_trace(nine_loads, Plan.of([]))


def test_write_trace_is_json_lines(nine_loads):
    records = export_trace(nine_loads, plan_offline(nine_loads))
    stream = io.StringIO()
    assert write_trace(records, stream) == 18

    lines = stream.getvalue().splitlines()
    assert len(lines) == 18
    last = json.loads(lines[-1])
    assert last["seq"] == 18
    assert last["kind"] == "retrieve"
    assert last["occupancy"] == []
