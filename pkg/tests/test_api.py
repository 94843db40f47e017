"""
Тесты HTTP API
"""
import pytest
from httpx import ASGITransport, AsyncClient

from app.main import app

NINE = {"rows": 3, "cols": 3, "arrival": [9, 4, 7, 3, 6, 2, 1, 8, 5]}


@pytest.fixture
async def client():
    async with AsyncClient(transport=ASGITransport(app=app), base_url="http://test") as ac:
        yield ac


async def test_health(client):
    response = await client.get("/health")
    assert response.status_code == 200
    assert response.json() == {"status": "healthy"}


async def test_create_plan(client):
    response = await client.post("/api/v1/plans/", json={"instance": NINE, "algorithm": "offline"})
    assert response.status_code == 200
    body = response.json()
    assert body["algorithm"] == "offline"
    assert len(body["plan"]["actions"]) == 18
    assert body["metrics"]["total_actions"] == 18
    assert body["max_peek_depth"] is None


async def test_create_plan_auto_reports_peek_depth(client):
    response = await client.post("/api/v1/plans/", json={"instance": NINE})
    assert response.status_code == 200
    body = response.json()
    assert body["algorithm"] == "lpaths"
    assert body["max_peek_depth"] == 1


async def test_planning_error_is_422(client):
    instance = {"rows": 3, "cols": 2, "arrival": [1, 2, 3, 4, 5, 6]}
    response = await client.post("/api/v1/plans/", json={"instance": instance, "algorithm": "offline"})
    assert response.status_code == 422
    detail = response.json()["detail"]
    assert detail["error"] == "NarrowGrid"
    assert detail["cols"] == 2


async def test_invalid_instance_is_422(client):
    instance = {"rows": 2, "cols": 2, "arrival": [1, 1]}
    response = await client.post("/api/v1/plans/", json={"instance": instance})
    assert response.status_code == 422
    assert response.json()["detail"]["error"] == "InvalidInstance"


async def test_validate_and_trace(client):
    planned = await client.post("/api/v1/plans/", json={"instance": NINE, "algorithm": "offline"})
    plan = planned.json()["plan"]

    response = await client.post("/api/v1/plans/validate", json={"instance": NINE, "plan": plan})
    assert response.status_code == 200
    assert response.json()["retrieval_phase_actions"] == 9

    response = await client.post("/api/v1/plans/trace", json={"instance": NINE, "plan": plan})
    assert response.status_code == 200
    records = response.json()
    assert len(records) == 18
    assert records[-1]["occupancy"] == []


async def test_validate_reports_violation(client):
    plan = {"actions": [{"kind": "store", "load": 9, "path": [[2, 1]]}]}
    response = await client.post("/api/v1/plans/validate", json={"instance": NINE, "plan": plan})
    assert response.status_code == 422
    detail = response.json()["detail"]
    assert detail["action_index"] == 0


async def test_feasibility(client):
    buried = {"rows": 2, "cols": 2, "arrival": [1, 4, 2, 3]}
    response = await client.post("/api/v1/oracle/feasibility", json=buried)
    assert response.status_code == 200
    assert response.json()["feasible"] is False


async def test_characterize(client):
    response = await client.get("/api/v1/oracle/characterize", params={"rows": 2, "cols": 2})
    assert response.status_code == 200
    assert response.json()["total"] == 24

    response = await client.get("/api/v1/oracle/characterize", params={"rows": 4, "cols": 4})
    assert response.status_code == 400


async def test_lower_bound(client):
    response = await client.get("/api/v1/oracle/lower-bound", params={"rows": 10, "cols": 10, "n": 100})
    assert response.status_code == 200
    assert response.json()["lower_bound"] == 1100


async def test_density_curve(client):
    response = await client.get("/api/v1/bench/density-curve", params={"max_budget": 2})
    assert response.status_code == 200
    assert response.json() == [
        {"budget": 1, "numerator": 2, "denominator": 3},
        {"budget": 2, "numerator": 4, "denominator": 5},
    ]


async def test_bench(client):
    config = {"sizes": [4], "seeds_per_size": 2, "algorithms": ["offline"], "workers": 1}
    response = await client.post("/api/v1/bench/", json=config)
    assert response.status_code == 200
    (row,) = response.json()
    assert row["n"] == 16
    assert row["mean_relocations"] == 0
