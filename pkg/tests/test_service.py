from __future__ import annotations

import json
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from ordeval import load_session
from ordeval.service import SessionStore, create_app


@pytest.fixture
def tutorial_doc(tutorial_path):
    return json.loads(tutorial_path.read_text(encoding="utf-8"))


@pytest.fixture
def client(tmp_path):
    store = SessionStore(path=tmp_path / "session.json")
    return TestClient(create_app(store))


@pytest.fixture
def loaded(client, tutorial_doc):
    response = client.put("/api/session", json=tutorial_doc)
    assert response.status_code == 200
    return client


class TestBeforeLoad:
    def test_report_404(self, client):
        response = client.get("/api/report")
        assert response.status_code == 404
        body = response.json()
        assert body["code"] == "not-found"
        assert body["details"] == []

    def test_session_404(self, client):
        assert client.get("/api/session").status_code == 404


class TestReads:
    def test_report_matches_tutorial(self, loaded):
        report = loaded.get("/api/report").json()["report"]
        overall = {entry["proposal"]: entry["grade"] for entry in report["overall"]}
        assert overall == {"alpha": "Medium", "beta": "High", "gamma": "Medium"}
        alpha = next(e for e in report["overall"] if e["proposal"] == "alpha")
        assert alpha["witness"] == {
            "position": 2,
            "satisfaction": "Medium",
            "score": "High",
            "expert": "e3",
        }

    def test_consecutive_reports_identical(self, loaded):
        assert loaded.get("/api/report").json() == loaded.get("/api/report").json()

    def test_session_round_trips_through_api(self, loaded, tutorial_doc):
        body = loaded.get("/api/session").json()
        assert body["version"] == 1
        # the served document normalizes aliases to full labels; compare as sessions
        served = load_session(json.dumps(body["session"]).encode())
        original = load_session(json.dumps(tutorial_doc).encode())
        assert served == original


class TestCommits:
    def test_importance_patch_updates_report(self, loaded):
        version = loaded.get("/api/report").json()["version"]
        response = loaded.patch(
            "/api/importances", json={"importances": {"c3": "Low"}, "version": version}
        )
        assert response.status_code == 200
        body = response.json()
        assert body["version"] == version + 1
        units = {
            (u["proposal"], u["expert"]): u["grade"] for u in body["report"]["unit_scores"]
        }
        assert units[("alpha", "e1")] == "Medium"

    def test_response_report_equals_subsequent_get(self, loaded):
        version = loaded.get("/api/report").json()["version"]
        patched = loaded.patch(
            "/api/importances", json={"importances": {"c3": "Low"}, "version": version}
        ).json()
        assert patched["report"] == loaded.get("/api/report").json()["report"]

    def test_off_scale_grade_gives_422_with_path(self, loaded):
        version = loaded.get("/api/report").json()["version"]
        response = loaded.patch(
            "/api/scores",
            json={
                "scores": [
                    {"proposal": "alpha", "expert": "e1", "criterion": "c1", "grade": "excellent"}
                ],
                "version": version,
            },
        )
        assert response.status_code == 422
        body = response.json()
        assert body["code"] == "validation"
        assert any("grade" in d["path"] for d in body["details"])

    def test_stale_version_conflicts(self, loaded):
        version = loaded.get("/api/report").json()["version"]
        first = loaded.patch(
            "/api/importances", json={"importances": {"c5": "Medium"}, "version": version}
        )
        assert first.status_code == 200
        second = loaded.patch(
            "/api/importances", json={"importances": {"c5": "High"}, "version": version}
        )
        assert second.status_code == 409
        assert second.json()["code"] == "conflict"

    def test_missing_version_rejected(self, loaded):
        response = loaded.patch("/api/importances", json={"importances": {"c5": "Medium"}})
        assert response.status_code == 422
        assert any(d["path"] == "version" for d in response.json()["details"])

    def test_quantifier_patch(self, loaded):
        version = loaded.get("/api/report").json()["version"]
        response = loaded.patch(
            "/api/quantifier", json={"quantifier": {"kind": "any"}, "version": version}
        )
        assert response.status_code == 200
        overall = {e["proposal"]: e["grade"] for e in response.json()["report"]["overall"]}
        assert overall["alpha"] == "Very High"

    def test_commit_persists_to_file(self, tmp_path, tutorial_doc):
        path = tmp_path / "session.json"
        store = SessionStore(path=path)
        client = TestClient(create_app(store))
        client.put("/api/session", json=tutorial_doc)
        version = client.get("/api/report").json()["version"]
        client.patch("/api/importances", json={"importances": {"c3": "Low"}, "version": version})
        on_disk = load_session(path.read_bytes())
        assert on_disk.importances["c3"].label == "Low"

    def test_put_with_stale_if_match(self, loaded, tutorial_doc):
        response = loaded.put("/api/session", json=tutorial_doc, headers={"If-Match": "99"})
        assert response.status_code == 409

    def test_put_invalid_session_422(self, client, tutorial_doc):
        bad = dict(tutorial_doc)
        bad["scores"] = tutorial_doc["scores"][1:]
        response = client.put("/api/session", json=bad)
        assert response.status_code == 422
        assert response.json()["code"] == "validation"

    def test_malformed_body_is_api_error(self, loaded):
        response = loaded.patch(
            "/api/importances",
            content=b"{not json",
            headers={"content-type": "application/json"},
        )
        assert response.status_code == 422
        assert response.json()["code"] == "validation"


class TestWhatIf:
    def test_preview_does_not_change_committed_state(self, loaded):
        before = loaded.get("/api/report").json()
        response = loaded.post("/api/whatif", json={"importances": {"c3": "Low"}})
        assert response.status_code == 200
        body = response.json()
        assert body["version"] == before["version"]
        changed = {
            (c["proposal"], c["expert"]): (c["old"], c["new"])
            for c in body["delta"]["unit_scores"]
        }
        assert changed[("alpha", "e1")] == ("Low", "Medium")
        assert loaded.get("/api/report").json() == before

    def test_empty_patch_empty_delta(self, loaded):
        body = loaded.post("/api/whatif", json={}).json()
        assert body["delta"] == {"overall": [], "unit_scores": []}
        assert body["report"] == loaded.get("/api/report").json()["report"]

    def test_quantifier_any_weakly_increases(self, loaded):
        committed = {
            e["proposal"]: e["grade"]
            for e in loaded.get("/api/report").json()["report"]["overall"]
        }
        preview = loaded.post("/api/whatif", json={"quantifier": {"kind": "any"}}).json()
        session_doc = loaded.get("/api/session").json()["session"]
        order = [entry["label"] for entry in session_doc["scale"]]
        for e in preview["report"]["overall"]:
            assert order.index(e["grade"]) >= order.index(committed[e["proposal"]])

    def test_invalid_patch_422(self, loaded):
        response = loaded.post("/api/whatif", json={"importances": {"c9": "Low"}})
        assert response.status_code == 422
        assert any("c9" in d["path"] for d in response.json()["details"])


class TestStaticPanel:
    def test_bundle_served_at_root(self, tmp_path):
        static = tmp_path / "dist"
        static.mkdir()
        (static / "index.html").write_text("<!doctype html><title>decision panel</title>")
        client = TestClient(create_app(SessionStore(), static_dir=static))
        response = client.get("/")
        assert response.status_code == 200
        assert "decision panel" in response.text

    def test_api_routes_win_over_static(self, tmp_path):
        static = tmp_path / "dist"
        static.mkdir()
        (static / "index.html").write_text("x")
        client = TestClient(create_app(SessionStore(), static_dir=static))
        assert client.get("/api/report").status_code == 404


class TestStartupFromFile:
    def test_load_file(self, tmp_path, tutorial_path):
        path = tmp_path / "session.json"
        path.write_bytes(tutorial_path.read_bytes())
        store = SessionStore(path=path)
        store.load_file()
        client = TestClient(create_app(store))
        body = client.get("/api/report").json()
        assert body["version"] == 1
        overall = {e["proposal"]: e["grade"] for e in body["report"]["overall"]}
        assert overall["alpha"] == "Medium"
