import warnings

import pytest
from fastapi.testclient import TestClient

from app.core.application import create_app
from app.core.errors import DivergentError, OutOfDomainError, PoleError


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_health(client):
    response = client.get("/v1/health")
    assert response.status_code == 200
    body = response.json()
    assert body["status"] == "ok"
    assert body["project"] == "mzv-workbench"
    assert body["version"] == "v0.1.0"
    assert body["precision_digits"] >= 1
    assert "duality" in body["checks"]


def test_evaluate_mzv(client):
    response = client.post("/v1/evaluate/mzv", json={"composition": "2,1", "digits": 20})
    assert response.status_code == 200
    body = response.json()
    assert body["argument"] == "zeta(2,1)"
    assert body["value"].startswith("1.2020569031595942854 ± ")
    assert body["mid"].startswith("1.20205690315959428539")
    assert body["rigorous"] is True
    assert body["digits"] == 20


def test_evaluate_euler_sum_with_bar(client):
    response = client.post("/v1/evaluate/euler-sum", json={"composition": "-1", "digits": 20})
    assert response.status_code == 200
    assert response.json()["value"].startswith("-0.6931471805599453094")


def test_evaluate_divergent_is_422(client):
    response = client.post("/v1/evaluate/euler-sum", json={"composition": "1,1"})
    assert response.status_code == 422
    body = response.json()
    assert body["code"] == "DIVERGENT"
    assert body["context"]["argument"] == "1,1"


def test_domain_errors_build_without_warnings():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        for error in (DivergentError("d"), OutOfDomainError("o"), PoleError("p")):
            assert error.status_code == 422


def test_evaluate_parse_error_is_400(client):
    response = client.post("/v1/evaluate/mzv", json={"composition": "3,0"})
    assert response.status_code == 400
    assert response.json()["context"]["position"] == 2


def test_evaluate_rejects_tiny_precision(client):
    response = client.post("/v1/evaluate/mzv", json={"composition": "3", "digits": 2})
    assert response.status_code == 422


@pytest.mark.parametrize("payload,result", [
    ({"type": "stuffle", "left": "2", "right": "2"}, "2*(2,2) + (4)"),
    ({"type": "qshuffle", "left": "a", "right": "bc"}, None),
])
def test_products(client, payload, result):
    response = client.post("/v1/products", json=payload)
    assert response.status_code == 200
    body = response.json()
    if result is not None:
        assert body["result"] == result
    else:
        assert body["terms"] == 3


def test_product_type_is_validated(client):
    response = client.post("/v1/products", json={"type": "concat", "left": "a", "right": "b"})
    assert response.status_code == 422


def test_list_checks(client):
    response = client.get("/v1/verify")
    assert response.status_code == 200
    names = [c["name"] for c in response.json()["checks"]]
    assert "duality" in names and "q_shuffle" in names


def test_verify_check(client):
    response = client.post("/v1/verify/sum_formula", json={"params": {"n": 4, "k": 2}, "digits": 20})
    assert response.status_code == 200
    body = response.json()
    assert body["id"].startswith("vrf_")
    assert body["passed"] is True
    assert body["results"][0]["pass"] is True


def test_verify_reports_check_failure_in_body(client):
    response = client.post("/v1/verify/sum_formula", json={"params": {"n": 2, "k": 3}})
    assert response.status_code == 200
    assert response.json()["passed"] is False


def test_verify_unknown_check_is_404(client):
    response = client.post("/v1/verify/goldbach", json={})
    assert response.status_code == 404
    assert response.json()["code"] == "NOT_FOUND"
