from __future__ import annotations

import json

import pytest
from fastapi.testclient import TestClient

from xaiwriter.eventlog import read_events
from xaiwriter.service import MAX_ABSTRACT_CHARS, create_app, replay_session
from conftest import DEMO_ABSTRACT


@pytest.fixture()
def service(tmp_path, demo_artifacts):
    logs_dir = tmp_path / "logs"
    app = create_app({"synthconf": demo_artifacts}, logs_dir)
    with TestClient(app) as client:
        yield client, logs_dir


def _create(client, conference="synthconf"):
    response = client.post("/sessions", json={"conference": conference})
    assert response.status_code == 201
    return response.json()["session_id"]


class TestSessions:
    def test_create_returns_documented_token_length(self, service):
        client, _ = service
        sid = _create(client)
        assert len(sid) == 32

    def test_two_creations_distinct_tokens(self, service):
        client, _ = service
        assert _create(client) != _create(client)

    def test_unknown_conference_names_available(self, service):
        client, _ = service
        response = client.post("/sessions", json={"conference": "nope"})
        assert response.status_code == 404
        assert "synthconf" in response.json()["detail"]

    def test_unknown_session_token(self, service):
        client, _ = service
        response = client.post("/sessions/deadbeef/chat", json={"utterance": "hi"})
        assert response.status_code == 404

    def test_unknown_fields_ignored_on_input(self, service):
        client, _ = service
        response = client.post(
            "/sessions", json={"conference": "synthconf", "wat": 1, "extra": {"x": 2}}
        )
        assert response.status_code == 201


class TestSubmit:
    def test_four_sentences_four_predictions(self, service):
        client, _ = service
        sid = _create(client)
        doc = client.post(f"/sessions/{sid}/abstract", json={"text": DEMO_ABSTRACT}).json()
        assert len(doc["sentences"]) == 4
        assert doc["revision"] == 1
        for s in doc["sentences"]:
            assert set(s) == {
                "index", "text", "span", "label", "confidence",
                "probabilities", "perplexity", "quality_score",
            }

    def test_identical_text_identical_predictions(self, service):
        client, _ = service
        sid = _create(client)
        a = client.post(f"/sessions/{sid}/abstract", json={"text": DEMO_ABSTRACT}).json()
        b = client.post(f"/sessions/{sid}/abstract", json={"text": DEMO_ABSTRACT}).json()
        a.pop("revision"), b.pop("revision")
        assert a == b

    def test_revision_increments(self, service):
        client, _ = service
        sid = _create(client)
        first = client.post(f"/sessions/{sid}/abstract", json={"text": DEMO_ABSTRACT}).json()
        second = client.post(f"/sessions/{sid}/abstract", json={"text": DEMO_ABSTRACT}).json()
        assert (first["revision"], second["revision"]) == (1, 2)

    def test_empty_text_rejected(self, service):
        client, _ = service
        sid = _create(client)
        assert client.post(f"/sessions/{sid}/abstract", json={"text": "  "}).status_code == 400

    def test_oversize_text_rejected(self, service):
        client, _ = service
        sid = _create(client)
        text = "word " * (MAX_ABSTRACT_CHARS // 4)
        assert client.post(f"/sessions/{sid}/abstract", json={"text": text}).status_code == 413

    def test_resubmission_clears_selection(self, service):
        client, _ = service
        sid = _create(client)
        client.post(f"/sessions/{sid}/abstract", json={"text": DEMO_ABSTRACT})
        client.post(f"/sessions/{sid}/select", json={"sentence_index": 0})
        client.post(f"/sessions/{sid}/abstract", json={"text": DEMO_ABSTRACT})
        response = client.post(f"/sessions/{sid}/chat", json={"utterance": "how confident is it"})
        assert "select a sentence" in response.json()["payload"]["text"]


class TestChatFlow:
    def test_selection_message_and_chat(self, service):
        client, _ = service
        sid = _create(client)
        client.post(f"/sessions/{sid}/abstract", json={"text": DEMO_ABSTRACT})
        selection = client.post(f"/sessions/{sid}/select", json={"sentence_index": 0}).json()
        assert selection["state_delta"]["selected_sentence"] == 0
        assert selection["state_delta"]["suggested_label"] == "background"

        chat = client.post(
            f"/sessions/{sid}/chat",
            json={"utterance": "how confident does the model make this prediction?"},
        ).json()
        assert chat["payload"]["intent"] == "confidence"

    def test_select_out_of_range(self, service):
        client, _ = service
        sid = _create(client)
        client.post(f"/sessions/{sid}/abstract", json={"text": DEMO_ABSTRACT})
        assert client.post(f"/sessions/{sid}/select", json={"sentence_index": 9}).status_code == 400

    def test_every_call_logs_exactly_one_event(self, service):
        client, logs_dir = service
        sid = _create(client)
        log_path = logs_dir / f"{sid}.jsonl"
        assert len(read_events(log_path)) == 1  # session_created
        client.post(f"/sessions/{sid}/abstract", json={"text": DEMO_ABSTRACT})
        assert len(read_events(log_path)) == 2
        client.post(f"/sessions/{sid}/select", json={"sentence_index": 0})
        assert len(read_events(log_path)) == 3
        client.post(f"/sessions/{sid}/chat", json={"utterance": "rewrite it"})
        assert len(read_events(log_path)) == 4

    def test_rejected_requests_do_not_log(self, service):
        client, logs_dir = service
        sid = _create(client)
        client.post(f"/sessions/{sid}/abstract", json={"text": " "})
        client.post(f"/sessions/{sid}/select", json={"sentence_index": 5})
        assert len(read_events(logs_dir / f"{sid}.jsonl")) == 1

    def test_websocket_chat(self, service):
        client, _ = service
        sid = _create(client)
        client.post(f"/sessions/{sid}/abstract", json={"text": DEMO_ABSTRACT})
        with client.websocket_connect(f"/sessions/{sid}/ws") as ws:
            ws.send_json({"select": 0})
            message = ws.receive_json()
            assert message["type"] == "selection"
            ws.send_json({"utterance": "rewrite it"})
            message = ws.receive_json()
            assert message["type"] == "chat_response"
            assert message["response"]["payload"]["intent"] == "counterfactual"

    def test_sessions_do_not_interfere(self, service):
        client, _ = service
        sid_a, sid_b = _create(client), _create(client)
        client.post(f"/sessions/{sid_a}/abstract", json={"text": DEMO_ABSTRACT})
        client.post(f"/sessions/{sid_a}/select", json={"sentence_index": 0})
        response = client.post(f"/sessions/{sid_b}/chat", json={"utterance": "how confident is it"})
        assert "submit an abstract" in response.json()["payload"]["text"]


class TestStatsAndLog:
    def test_fresh_deployment_zero_stats(self, service):
        client, _ = service
        stats = client.get("/stats", params={"scope": "all"}).json()
        assert all(v == 0 for v in stats["intents"].values())
        assert stats["fallback"] == 0

    def test_session_scope_equals_turns(self, service):
        client, _ = service
        sid = _create(client)
        client.post(f"/sessions/{sid}/abstract", json={"text": DEMO_ABSTRACT})
        client.post(f"/sessions/{sid}/select", json={"sentence_index": 0})
        for utterance in ["show me similar examples", "rewrite it", "???"]:
            client.post(f"/sessions/{sid}/chat", json={"utterance": utterance})
        stats = client.get("/stats", params={"scope": "session", "session_id": sid}).json()
        assert stats["intents"]["example"] == 1
        assert stats["intents"]["counterfactual"] == 1
        assert stats["fallback"] == 1

    def test_all_scope_is_sum_over_sessions(self, service):
        client, _ = service
        for _ in range(2):
            sid = _create(client)
            client.post(f"/sessions/{sid}/abstract", json={"text": DEMO_ABSTRACT})
            client.post(f"/sessions/{sid}/select", json={"sentence_index": 0})
            client.post(f"/sessions/{sid}/chat", json={"utterance": "show me similar examples"})
        stats = client.get("/stats", params={"scope": "all"}).json()
        assert stats["intents"]["example"] == 2

    def test_log_fetch_returns_events(self, service):
        client, _ = service
        sid = _create(client)
        client.post(f"/sessions/{sid}/abstract", json={"text": DEMO_ABSTRACT})
        log = client.get(f"/sessions/{sid}/log").json()
        assert [e["kind"] for e in log["events"]] == ["session_created", "abstract_submitted"]

    def test_health(self, service):
        client, _ = service
        health = client.get("/health").json()
        assert health["status"] == "ok"
        assert health["conferences"] == ["synthconf"]


class TestReplay:
    def test_replay_reproduces_responses(self, service, demo_artifacts, tmp_path):
        client, logs_dir = service
        sid = _create(client)
        live = [
            client.post(f"/sessions/{sid}/abstract", json={"text": DEMO_ABSTRACT}).json(),
            client.post(f"/sessions/{sid}/select", json={"sentence_index": 0}).json(),
            client.post(f"/sessions/{sid}/chat", json={"utterance": "how confident is it"}).json(),
            client.post(f"/sessions/{sid}/chat", json={"utterance": "rewrite it"}).json(),
            client.post(f"/sessions/{sid}/chat", json={"utterance": "show me similar examples"}).json(),
            client.post(f"/sessions/{sid}/chat", json={"utterance": "2 + background"}).json(),
        ]
        events = read_events(logs_dir / f"{sid}.jsonl")
        engine, replayed = replay_session(events, {"synthconf": demo_artifacts})
        assert json.dumps(replayed, sort_keys=True) == json.dumps(live, sort_keys=True)

    def test_live_stats_equal_replay_stats(self, service, demo_artifacts):
        client, logs_dir = service
        sid = _create(client)
        client.post(f"/sessions/{sid}/abstract", json={"text": DEMO_ABSTRACT})
        client.post(f"/sessions/{sid}/select", json={"sentence_index": 0})
        for utterance in ["show me similar examples", "top 3", "rewrite it"]:
            client.post(f"/sessions/{sid}/chat", json={"utterance": utterance})
        live_stats = client.get("/stats", params={"scope": "session", "session_id": sid}).json()

        from xaiwriter.dialogue import export_usage_stats

        engine, _ = replay_session(
            read_events(logs_dir / f"{sid}.jsonl"), {"synthconf": demo_artifacts}
        )
        replay_stats = export_usage_stats(engine.state.history).as_dict()
        assert live_stats == replay_stats
