import pytest
from fastapi.testclient import TestClient

from symhodge import analysis
from symhodge.service import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


@pytest.fixture(scope="module")
def kt_text():
    with open(analysis.corpus_path("kodaira_thurston.lie"), encoding="utf-8") as fh:
        return fh.read()


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "ok"


def test_analyze_endpoint(client, kt_text):
    response = client.post("/analyze", json={"text": kt_text})
    assert response.status_code == 200
    payload = response.json()
    assert payload["betti"] == [1, 3, 4, 3, 1]
    assert payload["hdelta_dims"] == [1, 3, 4, 3, 1]
    assert payload["lefschetz_level"] == 0
    assert payload["consistent"] is True
    witnesses = {(w["kind"], w["degree"], w["form"]) for w in payload["witnesses"]}
    assert ("ddelta_failure", 1, "b") in witnesses


def test_analyze_endpoint_matches_cli_json(client, kt_text):
    from symhodge import dsl
    report = analysis.analyze(dsl.parse(kt_text))
    response = client.post("/analyze", json={"text": kt_text})
    assert response.json() == report.to_dict()


def test_analyze_parse_error_is_400(client):
    response = client.post("/analyze", json={"text": "dim 3\nomega = e1^e2\n"})
    assert response.status_code == 400
    detail = response.json()["detail"]
    assert detail["error"] == "parse"
    assert detail["line"] == 1


def test_analyze_validation_error_is_422(client):
    response = client.post("/analyze", json={"text": "dim 4\nomega = e1^e2\n"})
    assert response.status_code == 422
    assert response.json()["detail"]["error"] == "validation"


def test_check_endpoint(client, kt_text):
    response = client.post("/check", json={"text": kt_text})
    assert response.status_code == 200
    payload = response.json()
    assert payload["ok"] is True
    assert payload["dim"] == 4
    assert payload["canonical"].startswith("dim 4")


def test_suite_endpoint_on_document(client, kt_text):
    response = client.post("/suite", json={"text": kt_text})
    assert response.status_code == 200
    payload = response.json()
    assert payload["passed"] is True
    assert payload["instances"] == 1


def test_search_endpoint(client):
    response = client.post("/search", json={"dim": 4, "target_s": 0,
                                            "trials": 10, "seed": 3})
    assert response.status_code == 200
    docs = response.json()["documents"]
    for text in docs:
        assert text.startswith("dim 4")
    response = client.post("/search", json={"dim": 3, "target_s": 0})
    assert response.status_code == 400
