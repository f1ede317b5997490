"""Wire formats and event sourcing.

Single source of truth for every JSON shape the engine exposes: rooms,
placed objects (encoded as {id, spec, position:[x,y,z], rotation, scale}),
wireframes, workspace documents, session documents, validation reports, and
the revision-tagged change events pushed to clients.  ``replay_events``
folds an event log from revision 0 back into the exact workspace document,
which is what makes the push channel a faithful synchronization primitive.

``canonical_json`` is the byte-stable serializer used wherever documents
are compared or persisted.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import SchemaError
from .scene import Opening, Room, SceneObject, Wireframe
from .workspace import Change, Workspace

PROTOCOL_VERSION = 1


def canonical_json(doc: Any) -> str:
    """Deterministic serialization: sorted keys, no whitespace."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), allow_nan=False)


# ------------------------------------------------------------------ rooms


def encode_opening(op: Opening) -> dict:
    return {
        "kind": op.kind,
        "edge_index": op.edge_index,
        "offset": op.offset,
        "width": op.width,
        "sill_height": op.sill_height,
        "head_height": op.head_height,
    }


def decode_opening(doc: dict) -> Opening:
    try:
        return Opening(
            kind=doc["kind"],
            edge_index=int(doc["edge_index"]),
            offset=float(doc["offset"]),
            width=float(doc["width"]),
            sill_height=float(doc.get("sill_height", 0.0)),
            head_height=float(doc.get("head_height", 2.0)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad opening record: {exc}") from exc


def encode_room(room: Room) -> dict:
    return {
        "id": room.id,
        "room_type": room.room_type,
        "footprint": [[x, z] for x, z in room.footprint],
        "ceiling_height": room.ceiling_height,
        "openings": [encode_opening(op) for op in room.openings],
    }


def decode_room(doc: dict) -> Room:
    try:
        return Room(
            id=str(doc["id"]),
            room_type=str(doc["room_type"]),
            footprint=tuple((float(p[0]), float(p[1])) for p in doc["footprint"]),
            ceiling_height=float(doc["ceiling_height"]),
            openings=tuple(decode_opening(o) for o in doc.get("openings", [])),
        )
    except (KeyError, TypeError, IndexError) as exc:
        raise SchemaError(f"bad room record: {exc}") from exc


# ---------------------------------------------------------------- objects


def encode_object(obj: SceneObject) -> dict:
    return {
        "id": obj.instance_id,
        "spec": obj.spec_id,
        "position": list(obj.position),
        "rotation": obj.yaw,
        "scale": obj.scale,
    }


def decode_object(doc: dict) -> SceneObject:
    try:
        return SceneObject(
            instance_id=str(doc["id"]),
            spec_id=str(doc["spec"]),
            position=tuple(float(v) for v in doc["position"]),
            yaw=float(doc["rotation"]),
            scale=float(doc.get("scale", 1.0)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad object record: {exc}") from exc


def encode_wireframe(wf: Wireframe) -> dict:
    return {
        "id": wf.wf_id,
        "center": list(wf.center),
        "width": wf.width,
        "depth": wf.depth,
        "yaw": wf.yaw,
        "label": wf.label,
        "origin": wf.origin,
        "hidden": wf.hidden,
    }


def decode_wireframe(doc: dict) -> Wireframe:
    try:
        return Wireframe(
            wf_id=str(doc["id"]),
            center=(float(doc["center"][0]), float(doc["center"][1])),
            width=float(doc["width"]),
            depth=float(doc["depth"]),
            yaw=float(doc["yaw"]),
            label=str(doc["label"]),
            origin=str(doc.get("origin", "user_drawn")),
            hidden=bool(doc.get("hidden", False)),
        )
    except (KeyError, TypeError, IndexError, ValueError) as exc:
        raise SchemaError(f"bad wireframe record: {exc}") from exc


# -------------------------------------------------------------- documents


def encode_workspace(ws: Workspace) -> dict:
    """Full workspace document; object and wireframe order is insertion
    order, which replay reproduces exactly."""
    return {
        "version": PROTOCOL_VERSION,
        "ws_id": ws.ws_id,
        "name": ws.name,
        "revision": ws.revision,
        "room": encode_room(ws.room),
        "objects": [encode_object(o) for o in ws.objects.values()],
        "wireframes": [encode_wireframe(w) for w in ws.wireframes.values()],
    }


def decode_workspace(doc: dict) -> Workspace:
    try:
        ws = Workspace(str(doc["ws_id"]), decode_room(doc["room"]), name=str(doc.get("name", "")))
        for rec in doc.get("objects", []):
            obj = decode_object(rec)
            ws.objects[obj.instance_id] = obj
        for rec in doc.get("wireframes", []):
            wf = decode_wireframe(rec)
            ws.wireframes[wf.wf_id] = wf
        ws.revision = int(doc.get("revision", 0))
        return ws
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"bad workspace document: {exc}") from exc


# ----------------------------------------------------------------- events


def encode_change(change: Change) -> dict:
    doc: dict = {}
    if change.objects_added:
        doc["objects_added"] = [encode_object(o) for o in change.objects_added]
    if change.objects_removed:
        doc["objects_removed"] = list(change.objects_removed)
    if change.objects_updated:
        doc["objects_updated"] = [encode_object(o) for o in change.objects_updated]
    if change.wireframes_added:
        doc["wireframes_added"] = [encode_wireframe(w) for w in change.wireframes_added]
    if change.wireframes_removed:
        doc["wireframes_removed"] = list(change.wireframes_removed)
    if change.wireframes_updated:
        doc["wireframes_updated"] = [encode_wireframe(w) for w in change.wireframes_updated]
    return doc


def make_created_event(ws: Workspace) -> dict:
    return {
        "revision": 0,
        "action": "created",
        "ws_id": ws.ws_id,
        "name": ws.name,
        "room": encode_room(ws.room),
    }


def make_change_event(revision: int, action: str, change: Change) -> dict:
    return {"revision": revision, "action": action, "changes": encode_change(change)}


def make_import_event(revision: int, doc: dict) -> dict:
    return {"revision": revision, "action": "imported", "document": doc}


def replay_events(events: list[dict]) -> dict:
    """Fold an event log from revision 0 into the workspace document it
    describes.  The result is byte-identical (under canonical_json) to the
    document exported by the live workspace at the same revision."""
    if not events or events[0].get("action") != "created":
        raise SchemaError("event log must start with a created event")
    head = events[0]
    ws = Workspace(str(head["ws_id"]), decode_room(head["room"]), name=str(head.get("name", "")))
    for event in events[1:]:
        action = event.get("action")
        if action == "imported":
            ws = decode_workspace(event["document"])
            continue
        changes = event.get("changes", {})
        for oid in changes.get("objects_removed", []):
            ws.objects.pop(oid, None)
        for rec in changes.get("objects_added", []):
            obj = decode_object(rec)
            ws.objects[obj.instance_id] = obj
        for rec in changes.get("objects_updated", []):
            obj = decode_object(rec)
            ws.objects[obj.instance_id] = obj
        for wid in changes.get("wireframes_removed", []):
            ws.wireframes.pop(wid, None)
        for rec in changes.get("wireframes_added", []):
            wf = decode_wireframe(rec)
            ws.wireframes[wf.wf_id] = wf
        for rec in changes.get("wireframes_updated", []):
            wf = decode_wireframe(rec)
            ws.wireframes[wf.wf_id] = wf
        ws.revision = int(event["revision"])
    return encode_workspace(ws)


# ----------------------------------------------------------------- reports


def encode_report(report) -> dict:
    return {
        "checks": [
            {"check_id": c.check_id, "passed": c.passed, "details": list(c.details)}
            for c in report.checks
        ],
        "violations": [
            {"kind": v.kind, "ids": list(v.ids), "detail": v.detail} for v in report.violations
        ],
        "score": report.score,
        "passed": report.passed,
    }


def encode_warnings(warnings) -> list[dict]:
    return [{"code": w.code, "category": w.category, "message": w.message} for w in warnings]
