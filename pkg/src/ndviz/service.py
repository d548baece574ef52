"""HTTP JSON session service.

A session precomputes the whole visualization (forest, frames, decorations)
for one (machine, word, options) and then serves immutable frames and
diagrams.  Responses carry strong ETags and are byte-identical to the CLI's
output for the same inputs.

Routes:
    POST   /sessions
    GET    /sessions/{id}/frames/{n}
    GET    /sessions/{id}/diagram/{n}?format=dot|svg
    GET    /sessions/{id}/jump?from=n&dir=next|prev
    DELETE /sessions/{id}
    GET    /healthz
"""

from __future__ import annotations

import hashlib
import time
import uuid
from collections import OrderedDict
from dataclasses import dataclass

from fastapi import FastAPI, Query, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .diagram import DiagramSpec, emit_dot, render_svg
from .engine import ExploreOptions, InputWordError, NodeLimitError
from .frames import NEXT, PREV, Visualization, build_visualization, frame_json, jump_to_invariant_failure
from .machine import MachineJsonError, machine_from_json, validate

# Server caps: PDAs can explode combinatorially, so precomputation is bounded.
MAX_WORD_LENGTH = 64
MAX_MAX_STEPS = 10_000
MAX_FOREST_NODES = 1_000_000
DEFAULT_SESSION_CAPACITY = 64


@dataclass
class Session:
    id: str
    viz: Visualization
    created_at: float


class SessionStore:
    """In-memory LRU store; sessions are cheap to recreate."""

    def __init__(self, capacity: int = DEFAULT_SESSION_CAPACITY):
        self.capacity = capacity
        self._sessions: OrderedDict[str, Session] = OrderedDict()

    def put(self, session: Session) -> None:
        self._sessions[session.id] = session
        self._sessions.move_to_end(session.id)
        while len(self._sessions) > self.capacity:
            self._sessions.popitem(last=False)

    def get(self, session_id: str) -> Session | None:
        session = self._sessions.get(session_id)
        if session is not None:
            self._sessions.move_to_end(session_id)
        return session

    def delete(self, session_id: str) -> bool:
        return self._sessions.pop(session_id, None) is not None


class CreateSessionBody(BaseModel):
    machine: dict
    word: list[str] = []
    options: dict = {}


def _error(status: int, message: str, **extra) -> JSONResponse:
    return JSONResponse({"error": message, **extra}, status_code=status)


def _etagged(content: str, media_type: str) -> Response:
    etag = '"' + hashlib.sha256(content.encode("utf-8")).hexdigest() + '"'
    return Response(
        content,
        media_type=media_type,
        headers={"ETag": etag, "Cache-Control": "max-age=86400, immutable"},
    )


def create_app(
    ui_dir: str | None = None,
    session_capacity: int = DEFAULT_SESSION_CAPACITY,
) -> FastAPI:
    app = FastAPI(title="ndviz session service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = SessionStore(session_capacity)
    app.state.store = store

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.post("/sessions")
    def create_session(body: CreateSessionBody):
        try:
            machine = machine_from_json(body.machine)
        except MachineJsonError as exc:
            return _error(400, "invalid machine", violations=[str(exc)])
        report = validate(machine)
        if not report.ok:
            return _error(400, "invalid machine", violations=list(report.violations))

        raw_options = body.options or {}
        max_steps = raw_options.get("max_steps", 100)
        add_dead = bool(raw_options.get("add_dead", False))
        if not isinstance(max_steps, int) or max_steps < 1:
            return _error(400, "options.max_steps must be a positive integer")
        if len(body.word) > MAX_WORD_LENGTH:
            return _error(413, f"word longer than {MAX_WORD_LENGTH} symbols", violations=[])
        if max_steps > MAX_MAX_STEPS:
            return _error(413, f"max_steps above {MAX_MAX_STEPS}")

        options = ExploreOptions(
            max_steps=max_steps, add_dead=add_dead, max_nodes=MAX_FOREST_NODES
        )
        try:
            viz = build_visualization(machine, tuple(body.word), options)
        except InputWordError as exc:
            return _error(400, "invalid word", violations=[str(exc)])
        except NodeLimitError as exc:
            return _error(413, str(exc))

        session = Session(id=uuid.uuid4().hex, viz=viz, created_at=time.time())
        store.put(session)
        final = viz.frames[-1]
        return {
            "id": session.id,
            "frame_count": len(viz.frames),
            "verdict": viz.verdict,
            "stats": {
                "computations_final": final.computation_count,
                "accepting_leaves": len(viz.forest.accepting_leaves),
                "cutoff_count": viz.forest.cutoff_count,
                "nodes": len(viz.forest.nodes),
            },
        }

    def _session_frame(session_id: str, n: int):
        session = store.get(session_id)
        if session is None:
            return None, _error(404, "unknown session")
        if not 0 <= n < len(session.viz.frames):
            return None, _error(416, "frame index out of range")
        return session, None

    @app.get("/sessions/{session_id}/frames/{n}")
    def get_frame(session_id: str, n: int):
        session, err = _session_frame(session_id, n)
        if err is not None:
            return err
        return _etagged(frame_json(session.viz.frames[n]), "application/json")

    @app.get("/sessions/{session_id}/diagram/{n}")
    def get_diagram(session_id: str, n: int, format: str = "svg"):
        if format not in ("dot", "svg"):
            return _error(400, "format must be dot or svg")
        session, err = _session_frame(session_id, n)
        if err is not None:
            return err
        spec = DiagramSpec(session.viz.machine, session.viz.frames[n])
        dot = emit_dot(spec)
        if format == "dot":
            return _etagged(dot, "text/vnd.graphviz")
        return _etagged(render_svg(dot), "image/svg+xml")

    @app.get("/sessions/{session_id}/jump")
    def jump(session_id: str, frm: int = Query(alias="from"), dir: str = "next"):
        if dir not in ("next", "prev"):
            return _error(400, "dir must be next or prev")
        session, err = _session_frame(session_id, frm)
        if err is not None:
            return err
        target = jump_to_invariant_failure(
            session.viz.frames, frm, NEXT if dir == "next" else PREV
        )
        return {"frame": target}

    @app.delete("/sessions/{session_id}", status_code=204)
    def delete_session(session_id: str):
        if not store.delete(session_id):
            return _error(404, "unknown session")
        return Response(status_code=204)

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
