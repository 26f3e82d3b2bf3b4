import asyncio
import json

import pytest
from fastapi.testclient import TestClient

from avse.project import Project
from avse.server import EventHub, create_app

from conftest import find_block


@pytest.fixture
def service(mini_project):
    project = Project(mini_project)
    project.run_analysis()
    project.run_script()
    app = create_app(project)
    with TestClient(app) as client:
        yield client, project


def get_script(client):
    resp = client.get("/script")
    assert resp.status_code == 200
    return resp.json()


def delete_pause_op(doc, revision=0):
    pause = find_block(doc, "Pause", 8.05)
    return {"kind": "DeleteBlocks", "revision": revision,
            "targets": [pause["id"]]}


def test_script_route(service):
    client, _ = service
    doc = get_script(client)
    assert doc["revision"] == 0
    assert doc["source_duration"] == 40.0
    assert len(doc["blocks"]) == 9


def test_outline_route(service):
    client, _ = service
    items = client.get("/outline").json()
    kinds = [it["kind"] for it in items]
    assert kinds.count("Scene") == 2
    assert kinds.count("Error") == 1
    assert kinds.count("Pause") == 2
    assert items == sorted(items, key=lambda it: it["time"])
    doc = get_script(client)
    ids = {b["id"] for b in doc["blocks"]}
    assert all(it["target_block_id"] in ids for it in items)


def test_search_route(service):
    client, _ = service
    hits = client.get("/search", params={"q": "Lamp"}).json()
    assert [h["time"] for h in hits] == [20.0]
    assert client.get("/search", params={"q": ""}).json() == []
    assert client.get("/search").json() == []


def test_inspect_route(service):
    client, _ = service
    assert client.get("/inspect", params={"t": 25.0}).json() == ["lamp", "sofa"]
    resp = client.get("/inspect", params={"t": 45.0})
    assert resp.status_code == 422
    assert client.get("/inspect").status_code == 422


def test_edl_route(service):
    client, _ = service
    edl = client.get("/edl").json()
    assert edl["source_duration"] == 40.0
    assert len(edl["segments"]) == 1


def test_edit_applies_and_persists(service):
    client, project = service
    doc = get_script(client)
    resp = client.post("/edits", json=delete_pause_op(doc))
    assert resp.status_code == 200
    assert resp.json() == {"revision": 1}

    updated = get_script(client)
    assert updated["revision"] == 1
    assert len(updated["blocks"]) == 8
    on_disk = json.loads(project.script_path.read_text())
    assert on_disk == updated
    log_lines = project.log_path.read_text().splitlines()
    assert len(log_lines) == 1


def test_stale_revision_conflict(service):
    client, project = service
    doc = get_script(client)
    op = delete_pause_op(doc)
    assert client.post("/edits", json=op).status_code == 200
    before = get_script(client)

    resp = client.post("/edits", json=op)
    assert resp.status_code == 409
    body = resp.json()
    assert body["expected"] == 1 and body["got"] == 0
    assert "stale" in body["detail"] or "revision" in body["detail"]
    # state must be untouched
    assert get_script(client) == before
    assert len(project.log_path.read_text().splitlines()) == 1


def test_invalid_op_rejected(service):
    client, _ = service
    resp = client.post("/edits", json={"kind": "explode", "revision": 0})
    assert resp.status_code == 422
    resp = client.post("/edits", json={
        "kind": "DeleteBlocks", "revision": 0, "targets": ["b999"]})
    assert resp.status_code == 422


def test_undo_route(service):
    client, _ = service
    original = get_script(client)
    client.post("/edits", json=delete_pause_op(original))
    resp = client.post("/undo", json={"revision": 1})
    assert resp.status_code == 200
    assert resp.json() == {"revision": 2}
    restored = get_script(client)
    assert restored["blocks"] == original["blocks"]

    assert client.post("/undo", json={}).status_code == 422
    assert client.post("/undo", json={"revision": "x"}).status_code == 422
    # nothing left to undo
    assert client.post("/undo", json={"revision": 2}).status_code == 422


def test_search_index_follows_revision(service):
    client, _ = service
    assert len(client.get("/search", params={"q": "tidy"}).json()) == 1
    doc = get_script(client)
    line = find_block(doc, "Narration", 5.5)
    client.post("/edits", json={"kind": "DeleteBlocks", "revision": 0,
                                "targets": [line["id"]]})
    assert client.get("/search", params={"q": "tidy"}).json() == []


def test_events_stream_first_message(service):
    client, _ = service
    handler = next(r.endpoint for r in client.app.routes
                   if getattr(r, "path", "") == "/events")

    async def first_event():
        resp = await handler()
        assert resp.media_type == "text/event-stream"
        gen = resp.body_iterator
        try:
            return await gen.__anext__()
        finally:
            await gen.aclose()

    assert asyncio.run(first_event()) == 'data: {"revision": 0}\n\n'


def test_events_sees_later_edits(service):
    client, _ = service
    handler = next(r.endpoint for r in client.app.routes
                   if getattr(r, "path", "") == "/events")

    async def collect():
        resp = await handler()
        gen = resp.body_iterator
        try:
            first = await gen.__anext__()
            loop = asyncio.get_running_loop()
            doc = await loop.run_in_executor(None, get_script, client)
            await loop.run_in_executor(
                None, lambda: client.post("/edits", json=delete_pause_op(doc)))
            second = await asyncio.wait_for(gen.__anext__(), timeout=2.0)
            return first, second
        finally:
            await gen.aclose()

    first, second = asyncio.run(collect())
    assert first == 'data: {"revision": 0}\n\n'
    assert second == 'data: {"revision": 1}\n\n'


def test_edit_broadcasts_revision(service):
    client, _ = service
    app = client.app
    queue_ = app.state.hub.subscribe()
    doc = get_script(client)
    client.post("/edits", json=delete_pause_op(doc))
    assert queue_.get(timeout=1.0) == {"revision": 1}
    app.state.hub.unsubscribe(queue_)


def test_event_hub_unsubscribe_is_idempotent():
    hub = EventHub()
    q = hub.subscribe()
    hub.broadcast({"revision": 7})
    assert q.get_nowait() == {"revision": 7}
    hub.unsubscribe(q)
    hub.unsubscribe(q)
    hub.broadcast({"revision": 8})
    assert q.empty()
