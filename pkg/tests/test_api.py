"""
HTTP API 测试
"""
import json
from pathlib import Path

import pytest

from src.api.server import app

EXAMPLES = Path(__file__).resolve().parent.parent / "data" / "examples"


@pytest.fixture
def client():
    app.config["TESTING"] = True
    with app.test_client() as c:
        yield c


class TestHealth:

    def test_health(self, client):
        resp = client.get("/health")
        assert resp.status_code == 200
        data = resp.get_json()
        assert data["status"] == "healthy"
        assert data["work_limit"] == 10 ** 9

    def test_api_docs(self, client):
        data = client.get("/api-docs").get_json()
        assert "/count" in data["paths"]


class TestCount:
    """点计数接口"""

    def test_affine(self, client):
        resp = client.post("/count", json={"poly": "x^2 + y^2 - 25", "bound": 5})
        assert resp.status_code == 200
        data = resp.get_json()
        assert data["count"] == 12
        assert "points" not in data

    def test_projective_with_list(self, client):
        resp = client.post("/count", json={"poly": "x*z - y^2", "vars": "x,y,z", "bound": 1,
                                           "mode": "projective", "list": True})
        data = resp.get_json()
        assert data["count"] == 4
        assert [1, 1, 1] in data["points"]

    def test_bad_mode(self, client):
        resp = client.post("/count", json={"poly": "x", "bound": 1, "mode": "weighted"})
        assert resp.status_code == 400

    def test_syntax_error(self, client):
        resp = client.post("/count", json={"poly": "2x", "bound": 1})
        assert resp.status_code == 400

    def test_missing_fields(self, client):
        assert client.post("/count", json={"bound": 1}).status_code == 400
        assert client.post("/count", json={"poly": "x"}).status_code == 400
        assert client.post("/count", data="not json").status_code == 400

    def test_work_limit(self, client, monkeypatch):
        """预算超限返回 413"""
        monkeypatch.setenv("DGC_WORK_LIMIT", "10")
        resp = client.post("/count", json={"poly": "x - y", "bound": 5})
        assert resp.status_code == 413
        data = resp.get_json()
        assert data["requested"] == 121
        assert data["limit"] == 10


class TestAlgorithms:

    def test_badness(self, client):
        resp = client.post("/badness", json={"poly": "x^2 - y^2 + 439", "prime_scan_limit": 450})
        data = resp.get_json()
        assert resp.status_code == 200
        assert data["bad_primes"] == [439]
        assert data["scan_agrees"] is True

    def test_auxpoly(self, client):
        resp = client.post("/auxpoly", json={"poly": "x*z - y^2", "vars": "x,y,z", "bound": 1})
        data = resp.get_json()
        assert resp.status_code == 200
        assert data["M"] == 2
        assert data["check"]["passed"] is True

    def test_auxpoly_reducible(self, client):
        resp = client.post("/auxpoly", json={"poly": "x^2 - y^2", "bound": 1, "mode": "affine"})
        assert resp.status_code == 400

    def test_witness(self, client):
        resp = client.get("/witness/3?verify=both")
        data = resp.get_json()
        assert data["f"] == "x^3 + y^2 - x + y"
        assert data["projective"]["count"] == 7
        assert data["affine"]["count"] == 6

    def test_witness_too_large(self, client):
        assert client.get("/witness/41").status_code == 400

    def test_padic_check(self, client):
        body = json.loads((EXAMPLES / "conic_p5.json").read_text(encoding="utf-8"))
        data = client.post("/padic-check", json=body).get_json()
        assert data["passed"] is True
        assert data["det"] == "5"

    def test_padic_missing_field(self, client):
        resp = client.post("/padic-check", json={"p": 5})
        assert resp.status_code == 400

    def test_chebyshev(self, client):
        data = client.get("/chebyshev/1000").get_json()
        assert data["holds"] is True
        assert client.get("/chebyshev/20000000").status_code == 400
