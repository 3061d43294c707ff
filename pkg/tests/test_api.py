import json

import pytest
from fastapi.testclient import TestClient

from app.main import app

client = TestClient(app)


@pytest.fixture(scope="module")
def documents(fixtures_dir):
    return {
        name: json.loads((fixtures_dir / f"{name}.json").read_text(encoding="utf-8"))
        for name in ("pt", "vac22", "pair2", "thin22", "z2", "z4")
    }


def test_validate(documents):
    response = client.post("/groupoids/validate", json={"double_groupoid": documents["pair2"]})
    assert response.status_code == 200
    body = response.json()
    assert body["structure"]["boxes"] == 16
    assert body["structure"]["slim"]
    assert body["report"]["violations"] == []


def test_validate_with_filling(documents):
    body = {"double_groupoid": documents["thin22"]}
    response = client.post("/groupoids/validate", json=body)
    assert response.status_code == 200
    assert response.json()["report"]["violations"] == []
    response = client.post("/groupoids/validate", json={**body, "filling": True})
    assert response.status_code == 200
    kinds = {v["kind"] for v in response.json()["report"]["violations"]}
    assert kinds == {"filling"}


def test_core(documents):
    response = client.post("/groupoids/core", json={"double_groupoid": documents["pair2"]})
    assert response.status_code == 200
    assert len(response.json()["arrows"]) == 4


def test_kernel_bundle(documents):
    response = client.post("/groupoids/kernel-bundle", json={"double_groupoid": documents["vac22"]})
    assert response.status_code == 200
    assert all(fiber["group"]["order"] == 1 for fiber in response.json()["fibers"])


def test_total_cohomology(documents):
    response = client.post(
        "/cohomology/total",
        json={"double_groupoid": documents["vac22"], "bundle": documents["z4"], "degree": 0},
    )
    assert response.status_code == 200
    assert response.json()["group"]["invariant_factors"] == [2]


def test_classify(documents):
    response = client.post(
        "/extensions/classify", json={"double_groupoid": documents["vac22"], "bundle": documents["z2"]}
    )
    assert response.status_code == 200
    assert len(response.json()["classes"]) == 4


def test_cech_over_the_finest_cover(documents):
    response = client.post("/cech/h1", json={"double_groupoid": documents["vac22"]})
    assert response.status_code == 200
    body = response.json()
    assert body["group"]["invariant_factors"] == [2, 2]
    assert body["discrete"]["invariant_factors"] == [2, 2]


def test_bad_request_body():
    response = client.post("/groupoids/validate", json={"double_groupoid": {"points": "none"}})
    assert response.status_code == 422


def test_broken_tables_are_rejected(documents):
    doc = json.loads(json.dumps(documents["vac22"]))
    a, b, c = doc["hcomp"][0]
    doc["hcomp"].append([a, b, (c + 1) % 4])
    response = client.post("/groupoids/validate", json={"double_groupoid": doc})
    assert response.status_code == 422
