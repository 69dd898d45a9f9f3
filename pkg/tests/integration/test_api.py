"""HTTP API through FastAPI's test client."""

import json

import pytest
from fastapi.testclient import TestClient

from src.api import app
from src.config import settings
from tests.conftest import SCENARIO_DIR


@pytest.fixture
def client():
    return TestClient(app)


@pytest.fixture
def worked():
    return json.loads((SCENARIO_DIR / "paper_example.json").read_text())


def test_root_lists_the_registries(client):
    response = client.get("/")
    assert response.status_code == 200
    data = response.json()
    assert data["status"] == "healthy"
    assert "cross3" in data["catalog"]
    assert "ideal" in data["ops"]
    assert "sum-ideal" in data["theorems"]


def test_detailed_health(client):
    data = client.get("/health/detailed").json()
    assert data["limits"]["max_prime"] == 31
    assert set(data["table_cache"]) >= {"hits", "misses", "size"}


def test_check_ideal(client, worked):
    response = client.post("/api/check", json={"scenario": worked, "op": "ideal", "sets": ["A"]})
    assert response.status_code == 200
    data = response.json()
    assert data["verdict"] == "FAIL"
    assert data["witness"]["elements"] == [[0, 0, 1], [1, 0, 0]]


def test_check_at_a_pair(client, worked):
    body = {"scenario": worked, "op": "ideal", "sets": ["A"], "at": [[1, 0, 0], [1, 1, 1]]}
    assert client.post("/api/check", json=body).json()["witness"]["detail"]["result"] == [0, 4, 1]


def test_check_unknown_op(client, worked):
    response = client.post("/api/check", json={"scenario": worked, "op": "kernel", "sets": ["A"]})
    assert response.status_code == 400
    assert "Unknown op" in response.json()["detail"]


def test_run_scenario(client, worked):
    data = client.post("/api/run", json={"scenario": worked}).json()
    assert data["ok"] is True
    assert len(data["results"]) == len(worked["checks"])


def test_bad_scenario(client):
    bad = json.loads((SCENARIO_DIR / "bad_field.json").read_text())
    response = client.post("/api/run", json={"scenario": bad})
    assert response.status_code == 400


def test_levels(client, worked):
    data = client.post("/api/levels", json={"scenario": worked, "set": "A"}).json()
    assert [lv["upper"]["size"] for lv in data["levels"]] == [125, 5, 1]

    cut = client.post("/api/levels", json={"scenario": worked, "set": "A", "alpha": "3/5", "beta_over_pi": "1/2"}).json()
    assert cut["size"] == 5


def test_levels_of_a_non_homogeneous_set(client):
    scenario = {
        "algebras": [{"name": "L", "field": 3, "catalog": "abelian-1"}],
        "fuzzy_sets": [
            {
                "name": "A",
                "algebra": "L",
                "default": {"r": "1/2", "w_over_pi": "1"},
                "entries": [{"element": [0], "r": "1", "w_over_pi": "1/2"}],
            }
        ],
    }
    response = client.post("/api/levels", json={"scenario": scenario, "set": "A"})
    assert response.status_code == 400
    assert response.json()["detail"]["verdict"] == "NOT_HOMOGENEOUS"


def test_verify(client):
    response = client.post("/api/verify", json={"trials": 2, "catalog": ["abelian-2/3"], "theorems": ["sum-ideal"]})
    assert response.status_code == 200
    data = response.json()
    assert data["verdict"] == "PASS"
    assert data["theorems"][0]["passes"] == 2


def test_verify_rejects_bad_config(client):
    assert client.post("/api/verify", json={"trials": -1}).status_code == 400
    assert client.post("/api/verify", json={"trials": 1, "theorems": ["fermat"]}).status_code == 400


def test_probe(client):
    body = {"theorem": "sum-ideal", "drop": "mutual-homogeneity", "catalog": ["abelian-1/3"], "budget": 500}
    data = client.post("/api/probe", json=body).json()
    assert data["status"] == "FOUND"
    assert data["instance"]["checks"][0]["op"] == "sum-ideal"


def test_probe_rejects_fixed_hypotheses(client):
    body = {"theorem": "negation-lemma", "drop": "subalgebra", "budget": 10}
    assert client.post("/api/probe", json=body).status_code == 400


def test_probe_budget_defaults_to_settings(client, monkeypatch):
    monkeypatch.setattr(settings, "probe_budget", 3)
    body = {"theorem": "sum-ideal", "drop": "mutual-homogeneity", "catalog": ["abelian-1/3"]}
    data = client.post("/api/probe", json=body).json()
    assert data["budget"] == 3
    assert data["tried"] <= 3
