"""Session-oriented web service wiring the models, review, explainers and
dialogue into a running system.

Per-session requests are handled strictly serially (one lock per session);
distinct sessions run concurrently over the shared read-only artifacts.
Every state-changing request is appended to the session's event log before
it is executed (write-ahead), which makes logs the replay oracle.
"""

from __future__ import annotations

import secrets
import threading
import time
from dataclasses import dataclass, replace
from pathlib import Path

from fastapi import FastAPI, HTTPException, WebSocket, WebSocketDisconnect
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, ConfigDict

from .dialogue import Artifacts, DialogueState, export_usage_stats, respond, select_sentence
from .document import AbstractDocument, analyze_abstract
from .eventlog import (
    EVENT_ABSTRACT_SUBMITTED,
    EVENT_CHAT_POSTED,
    EVENT_SENTENCE_SELECTED,
    EVENT_SESSION_CREATED,
    Event,
    EventLog,
    read_events,
)
from .wire import (
    WIRE_FORMAT_VERSION,
    dialogue_response_to_wire,
    document_to_wire,
    usage_stats_to_wire,
)

MAX_ABSTRACT_CHARS = 10_000
SESSION_TOKEN_BYTES = 16  # 32 hex characters


class SessionEngine:
    """Session logic shared by the live endpoints and log replay: identical
    code path, identical responses."""

    def __init__(
        self,
        session_id: str,
        conference: str,
        artifacts: Artifacts,
        max_abstract_chars: int = MAX_ABSTRACT_CHARS,
    ):
        self.session_id = session_id
        self.conference = conference
        self.artifacts = artifacts
        self.max_abstract_chars = max_abstract_chars
        self.state = DialogueState(session_id)
        self.document: AbstractDocument | None = None

    def submit_abstract(self, text: str) -> dict:
        if not text or not text.strip():
            raise ValueError("empty abstract")
        if len(text) > self.max_abstract_chars:
            raise ValueError(f"abstract exceeds {self.max_abstract_chars} characters")
        revision = (self.document.revision + 1) if self.document else 1
        self.document = analyze_abstract(
            text,
            self.artifacts.classifier,
            self.artifacts.style_lm,
            self.artifacts.profile,
            revision=revision,
        )
        self.state.clear_context()  # the old review no longer applies
        self.state.last_review_revision = revision
        return document_to_wire(self.document, self.conference)

    def select(self, index: int) -> dict:
        if self.document is None:
            raise ValueError("no abstract submitted yet")
        response = select_sentence(self.state, index, self.document, self.artifacts)
        return dialogue_response_to_wire(response)

    def chat(self, utterance: str, timestamp: float) -> dict:
        response = respond(
            self.state, utterance, self.document, self.artifacts, timestamp=timestamp
        )
        return dialogue_response_to_wire(response)


@dataclass
class LiveSession:
    engine: SessionEngine
    log: EventLog
    lock: threading.Lock


def replay_session(events: list[Event], artifacts_by_conference: dict[str, Artifacts]):
    """Rebuild a session from its event log; returns (engine, responses).

    The external generator is disabled during replay so responses are a
    pure function of the log and the artifacts.
    """
    engine: SessionEngine | None = None
    responses: list[dict] = []
    for event in events:
        if event.kind == EVENT_SESSION_CREATED:
            conference = event.payload["conference"]
            artifacts = replace(artifacts_by_conference[conference], generator=None)
            engine = SessionEngine(event.payload["session_id"], conference, artifacts)
        elif engine is None:
            raise ValueError("log does not start with session_created")
        elif event.kind == EVENT_ABSTRACT_SUBMITTED:
            responses.append(engine.submit_abstract(event.payload["text"]))
        elif event.kind == EVENT_SENTENCE_SELECTED:
            responses.append(engine.select(event.payload["sentence_index"]))
        elif event.kind == EVENT_CHAT_POSTED:
            responses.append(engine.chat(event.payload["utterance"], event.timestamp))
        else:
            raise ValueError(f"unknown event kind {event.kind!r}")
    if engine is None:
        raise ValueError("empty event log")
    return engine, responses


# --- request models (unknown fields ignored on input) ------------------------

class CreateSessionRequest(BaseModel):
    model_config = ConfigDict(extra="ignore")
    conference: str


class SubmitAbstractRequest(BaseModel):
    model_config = ConfigDict(extra="ignore")
    text: str


class SelectSentenceRequest(BaseModel):
    model_config = ConfigDict(extra="ignore")
    sentence_index: int


class ChatRequest(BaseModel):
    model_config = ConfigDict(extra="ignore")
    utterance: str


def create_app(
    artifacts_by_conference: dict[str, Artifacts],
    logs_dir: Path,
    max_abstract_chars: int = MAX_ABSTRACT_CHARS,
) -> FastAPI:
    logs_dir = Path(logs_dir)
    logs_dir.mkdir(parents=True, exist_ok=True)
    app = FastAPI(title="xaiwriter", version="0.1.0")
    # the browser client is served from a different origin at desk scale
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    sessions: dict[str, LiveSession] = {}
    registry_lock = threading.Lock()

    def _session(session_id: str) -> LiveSession:
        live = sessions.get(session_id)
        if live is None:
            raise HTTPException(status_code=404, detail="unknown session token")
        return live

    @app.get("/health")
    def health() -> dict:
        return {
            "status": "ok",
            "conferences": sorted(artifacts_by_conference),
            "wire_format_version": WIRE_FORMAT_VERSION,
        }

    @app.post("/sessions", status_code=201)
    def create_session(request: CreateSessionRequest) -> dict:
        if request.conference not in artifacts_by_conference:
            raise HTTPException(
                status_code=404,
                detail=(
                    f"unknown conference {request.conference!r}; "
                    f"available: {sorted(artifacts_by_conference)}"
                ),
            )
        session_id = secrets.token_hex(SESSION_TOKEN_BYTES)
        engine = SessionEngine(
            session_id,
            request.conference,
            artifacts_by_conference[request.conference],
            max_abstract_chars=max_abstract_chars,
        )
        log = EventLog(logs_dir / f"{session_id}.jsonl")
        log.append(
            EVENT_SESSION_CREATED,
            {"session_id": session_id, "conference": request.conference},
            time.time(),
        )
        with registry_lock:
            sessions[session_id] = LiveSession(engine=engine, log=log, lock=threading.Lock())
        return {"session_id": session_id, "conference": request.conference}

    @app.post("/sessions/{session_id}/abstract")
    def submit_abstract(session_id: str, request: SubmitAbstractRequest) -> dict:
        live = _session(session_id)
        with live.lock:
            if not request.text.strip():
                raise HTTPException(status_code=400, detail="abstract text is empty")
            if len(request.text) > max_abstract_chars:
                raise HTTPException(
                    status_code=413,
                    detail=f"abstract exceeds {max_abstract_chars} characters",
                )
            live.log.append(EVENT_ABSTRACT_SUBMITTED, {"text": request.text}, time.time())
            return live.engine.submit_abstract(request.text)

    @app.post("/sessions/{session_id}/select")
    def select(session_id: str, request: SelectSentenceRequest) -> dict:
        live = _session(session_id)
        with live.lock:
            if live.engine.document is None:
                raise HTTPException(status_code=400, detail="no abstract submitted yet")
            n = len(live.engine.document.sentences)
            if not (0 <= request.sentence_index < n):
                raise HTTPException(
                    status_code=400,
                    detail=f"sentence_index out of range (abstract has {n} sentences)",
                )
            live.log.append(
                EVENT_SENTENCE_SELECTED, {"sentence_index": request.sentence_index}, time.time()
            )
            return live.engine.select(request.sentence_index)

    @app.post("/sessions/{session_id}/chat")
    def chat(session_id: str, request: ChatRequest) -> dict:
        live = _session(session_id)
        with live.lock:
            timestamp = time.time()
            live.log.append(EVENT_CHAT_POSTED, {"utterance": request.utterance}, timestamp)
            return live.engine.chat(request.utterance, timestamp)

    @app.get("/sessions/{session_id}/log")
    def fetch_log(session_id: str) -> dict:
        path = logs_dir / f"{session_id}.jsonl"
        if not path.exists():
            raise HTTPException(status_code=404, detail="unknown session token")
        events = read_events(path)
        return {
            "session_id": session_id,
            "events": [
                {"seq": e.seq, "kind": e.kind, "payload": e.payload, "ts": e.timestamp}
                for e in events
            ],
        }

    @app.get("/stats")
    def stats(scope: str = "all", session_id: str | None = None) -> dict:
        if scope == "session":
            if not session_id:
                raise HTTPException(status_code=400, detail="session scope requires session_id")
            live = sessions.get(session_id)
            if live is not None:
                with live.lock:
                    return usage_stats_to_wire(export_usage_stats(live.engine.state.history))
            path = logs_dir / f"{session_id}.jsonl"
            if not path.exists():
                raise HTTPException(status_code=404, detail="unknown session token")
            engine, _ = replay_session(read_events(path), artifacts_by_conference)
            return usage_stats_to_wire(export_usage_stats(engine.state.history))
        if scope != "all":
            raise HTTPException(status_code=400, detail="scope must be 'all' or 'session'")
        history = []
        for path in sorted(logs_dir.glob("*.jsonl")):
            engine, _ = replay_session(read_events(path), artifacts_by_conference)
            history.extend(engine.state.history)
        return usage_stats_to_wire(export_usage_stats(history))

    @app.websocket("/sessions/{session_id}/ws")
    async def chat_ws(websocket: WebSocket, session_id: str) -> None:
        live = sessions.get(session_id)
        if live is None:
            await websocket.close(code=4404)
            return
        await websocket.accept()
        try:
            while True:
                message = await websocket.receive_json()
                if "utterance" in message:
                    with live.lock:
                        timestamp = time.time()
                        live.log.append(
                            EVENT_CHAT_POSTED, {"utterance": message["utterance"]}, timestamp
                        )
                        wire = live.engine.chat(message["utterance"], timestamp)
                    await websocket.send_json({"type": "chat_response", "response": wire})
                elif "select" in message:
                    with live.lock:
                        live.log.append(
                            EVENT_SENTENCE_SELECTED, {"sentence_index": message["select"]}, time.time()
                        )
                        wire = live.engine.select(message["select"])
                    await websocket.send_json({"type": "selection", "response": wire})
                else:
                    await websocket.send_json({"type": "error", "detail": "unknown message"})
        except WebSocketDisconnect:
            return

    return app
