from dataclasses import replace

import pytest

from utils.config import Config
from web_dashboard.app import create_app


@pytest.fixture
def client(dicts, tmp_path):
    app = create_app(dicts, Config(str(tmp_path / "none.json")))
    app.config["TESTING"] = True
    return app.test_client()


def test_health(client, dicts):
    data = client.get("/api/health").get_json()
    assert data["status"] == "ok"
    assert data["patterns"] == len(dicts.patterns)
    assert data["rewrites"] == 3


def test_translate(client):
    response = client.post("/api/translate", json={"text": "kanojo-wa shokutaku-ni tēburukurosu-o kaketa."})
    assert response.status_code == 200
    data = response.get_json()
    assert data["translation"] == "She spread a tablecloth on a dining table."
    assert data["errors"] == []
    assert data["levels"]["valency"] == 1
    assert "trace" not in data


def test_translate_with_trace_and_no_rewrite(client):
    text = "kare-wa basu-ni notte gakkō-e itta."
    rewritten = client.post("/api/translate", json={"text": text, "trace": True}).get_json()
    assert rewritten["translation"] == "He went to school by bus."
    assert "rewrite" in [event["stage"] for event in rewritten["trace"]]

    literal = client.post("/api/translate", json={"text": text, "rewrite": False}).get_json()
    assert literal["translation"] != rewritten["translation"]


def test_requests_do_not_share_context(client):
    client.post("/api/translate", json={"text": "kare-wa gakkō-e itta."})
    data = client.post("/api/translate", json={"text": "hon-o katta."}).get_json()
    assert data["translation"] == "It bought a book."


def test_translate_reports_sentence_errors(client):
    data = client.post("/api/translate", json={"text": "zzz-o kaketa. kare-wa gakkō-e itta."}).get_json()
    assert data["translation"] == "He went to school."
    assert len(data["errors"]) == 1


@pytest.mark.parametrize("payload", [None, {}, {"text": 3}])
def test_translate_needs_text(client, payload):
    response = client.post("/api/translate", json=payload)
    assert response.status_code == 400
    assert "text" in response.get_json()["error"]


def test_validate(client):
    data = client.get("/api/validate").get_json()
    assert data == {"valid": True, "errors": []}


def test_validate_reports_broken_files(dict_copy, dicts, tmp_path):
    directory = dict_copy(("rewrites.tsv", "ni:@vehicle", "ni:@zzz"))
    app = create_app(replace(dicts, directory=directory), Config(str(tmp_path / "none.json")))
    data = app.test_client().get("/api/validate").get_json()
    assert not data["valid"]
    [error] = data["errors"]
    assert (error["file"], error["line"], error["id"]) == ("rewrites.tsv", 4, "rw-ride-vehicle")
