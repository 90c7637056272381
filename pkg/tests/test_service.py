import pytest

from main import create_app
from seqlibs.config import Settings


@pytest.fixture
def client():
    app = create_app(Settings())
    app.config["TESTING"] = True
    return app.test_client()


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.get_json()["status"] == "ok"


def test_stable(client):
    data = client.get("/stable").get_json()
    assert len(data["entries"]) == 25
    assert data["entries"][0] == {
        "vector": "(1)",
        "multiplicity": 4,
        "labels": ["constant", "linear", "quadratic", "cubic"],
    }
    assert data["primes_recognizer"] is True
    assert data["fallback_vector"] is None


def test_solve(client):
    response = client.post("/solve", json={"terms": "1, 4, 9, 16, 25"})
    assert response.status_code == 200
    data = response.get_json()
    assert data["prediction"] == "36"
    assert data["description"] == ["quadratic"]
    assert data["method"] == "search"
    assert data["interleaved"] is False
    assert data["vector"] == "(1, -3, 3)"
    assert data["weights"] == ["0", "0", "1"]


def test_solve_interleaved(client):
    data = client.post("/solve", json={"terms": "230, 460, 46, 92, 9.2"}).get_json()
    assert data["prediction"] == "92/5"
    assert data["interleaved"] is True


def test_solve_primes(client):
    data = client.post("/solve", json={"terms": "3, 5, 7, 11, 13"}).get_json()
    assert data["prediction"] == "17"
    assert data["method"] == "primes"
    assert data["vector"] is None


def test_solve_without_solution(client):
    response = client.post("/solve", json={"terms": "1, 11"})
    assert response.status_code == 404
    assert response.get_json() == {"error": "no solution"}


def test_solve_respects_the_search_cap():
    capped = create_app(Settings(max_length=2)).test_client()
    assert capped.post("/solve", json={"terms": "1, 4, 9, 16, 25"}).status_code == 404
    wider = create_app(Settings(max_length=3)).test_client()
    assert wider.post("/solve", json={"terms": "1, 4, 9, 16, 25"}).get_json()["prediction"] == "36"


@pytest.mark.parametrize("body", [None, {}, {"sequence": "1, 2"}, {"terms": "1, x"}])
def test_solve_bad_requests(client, body):
    response = client.post("/solve", json=body)
    assert response.status_code == 400
    assert "error" in response.get_json()


def test_compose(client):
    response = client.post("/compose", json={"vectors": ["(1)", "(1)", "(1)", "(1, 1)"]})
    assert response.get_json() == {"vector": "(-1, 2, 1, -5, 4)"}
    assert client.post("/compose", json={"vectors": "(1)"}).status_code == 400


def test_extend(client):
    response = client.post("/extend", json={"vector": "(1, 1)", "terms": "1, 1", "k": 3})
    assert response.get_json() == {"terms": "1, 1, 2, 3, 5"}
    response = client.post(
        "/extend", json={"vector": "(1, 1)", "terms": "1/2, 1/2", "k": 5, "direction": "backward"}
    )
    assert response.get_json() == {"terms": "-3/2, 1, -1/2, 1/2, 0, 1/2, 1/2"}


def test_extend_validation(client):
    assert client.post("/extend", json={"vector": "(1)", "terms": "1", "k": 0}).status_code == 400
    assert client.post(
        "/extend", json={"vector": "(1)", "terms": "1", "k": 1, "direction": "up"}
    ).status_code == 400
    assert client.post("/extend", json={"vector": "(1, 1)", "terms": "1", "k": 1}).status_code == 400


def test_custom_stable(tmp_path):
    path = tmp_path / "tiny.json"
    path.write_text('{"entries": [{"vector": "(2)", "multiplicity": 1, "labels": ["powers-of-2"]}]}')
    client = create_app(Settings(stable_path=str(path))).test_client()
    assert client.post("/solve", json={"terms": "3, 6, 12"}).get_json()["prediction"] == "24"
    assert client.post("/solve", json={"terms": "1, 2, 3"}).status_code == 404
