"""HTTP service exposing the script document, search, inspect, and edits.

Single-writer service: mutations (POST /edits, POST /undo) serialize
behind a lock, persist to the project directory, and push the new
revision number to every /events subscriber; reads serve immutable
snapshots.  The companion UI is a pure client of this API.
"""

from __future__ import annotations

import asyncio
import json
import os
import queue
import threading

from fastapi import Body, FastAPI, Query
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, StreamingResponse
from fastapi.staticfiles import StaticFiles

from .avdoc import doc_to_dict, inspect_frame, outline
from .editing import EditKind, EditOp, edl_to_dict, op_from_dict
from .errors import ConflictError, InvalidOp, OutOfRange
from .project import Project
from .search import build_index, query as run_query

KEEPALIVE_SECONDS = 15.0
POLL_SECONDS = 0.1


class EventHub:
    def __init__(self):
        self._lock = threading.Lock()
        self._subscribers: list[queue.Queue] = []

    def subscribe(self) -> queue.Queue:
        q: queue.Queue = queue.Queue()
        with self._lock:
            self._subscribers.append(q)
        return q

    def unsubscribe(self, q: queue.Queue) -> None:
        with self._lock:
            if q in self._subscribers:
                self._subscribers.remove(q)

    def broadcast(self, payload: dict) -> None:
        with self._lock:
            targets = list(self._subscribers)
        for q in targets:
            q.put(payload)


def create_app(project: Project) -> FastAPI:
    state = project.load_state()
    session = state.session
    records = state.records
    hub = EventHub()
    write_lock = threading.Lock()
    index_cache = {"revision": -1, "index": None}

    app = FastAPI(title="avse")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    def current_index():
        with write_lock:
            revision = session.doc.revision
            if index_cache["revision"] != revision:
                index_cache["index"] = build_index(session.doc, records)
                index_cache["revision"] = revision
            return index_cache["index"]

    def mutate(op: EditOp) -> JSONResponse:
        try:
            with write_lock:
                doc, _ = session.apply(op)
                project.persist_after_edit(session, op)
                revision = doc.revision
        except ConflictError as exc:
            return JSONResponse(
                {"detail": str(exc), "expected": exc.expected, "got": exc.got},
                status_code=409)
        except InvalidOp as exc:
            return JSONResponse({"detail": str(exc)}, status_code=422)
        hub.broadcast({"revision": revision})
        return JSONResponse({"revision": revision})

    @app.get("/script")
    def get_script():
        return doc_to_dict(session.doc)

    @app.get("/outline")
    def get_outline():
        return [
            {"kind": it.kind.value, "time": it.time, "label": it.label,
             "target_block_id": it.target_block_id}
            for it in outline(session.doc)
        ]

    @app.get("/search")
    def get_search(q: str = Query("")):
        hits = run_query(current_index(), q)
        return [
            {"kind": h.kind.value, "time": h.time, "snippet": h.snippet,
             "target_block_id": h.target_block_id}
            for h in hits
        ]

    @app.get("/inspect")
    def get_inspect(t: float = Query(...)):
        try:
            labels = inspect_frame(records, t, session.doc.source_duration)
        except OutOfRange as exc:
            return JSONResponse({"detail": str(exc)}, status_code=422)
        return labels

    @app.get("/edl")
    def get_edl():
        return edl_to_dict(session.edl)

    @app.post("/edits")
    def post_edits(payload: dict = Body(...)):
        try:
            op = op_from_dict(payload)
        except InvalidOp as exc:
            return JSONResponse({"detail": str(exc)}, status_code=422)
        return mutate(op)

    @app.post("/undo")
    def post_undo(payload: dict = Body(...)):
        if "revision" not in payload:
            return JSONResponse({"detail": "revision required"}, status_code=422)
        try:
            revision = int(payload["revision"])
        except (TypeError, ValueError):
            return JSONResponse({"detail": "revision must be an integer"},
                                status_code=422)
        return mutate(EditOp(EditKind.UNDO, revision))

    @app.get("/events")
    async def get_events():
        q = hub.subscribe()

        # async polling keeps the generator cancellable on disconnect
        async def gen():
            yield f"data: {json.dumps({'revision': session.doc.revision})}\n\n"
            idle = 0.0
            try:
                while True:
                    try:
                        item = q.get_nowait()
                    except queue.Empty:
                        await asyncio.sleep(POLL_SECONDS)
                        idle += POLL_SECONDS
                        if idle >= KEEPALIVE_SECONDS:
                            idle = 0.0
                            yield ": keep-alive\n\n"
                        continue
                    idle = 0.0
                    yield f"data: {json.dumps(item)}\n\n"
            finally:
                hub.unsubscribe(q)

        return StreamingResponse(gen(), media_type="text/event-stream")

    ui_dir = os.environ.get("AVSE_UI_DIR")
    if ui_dir and os.path.isdir(ui_dir):
        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

    app.state.session = session
    app.state.hub = hub
    return app
