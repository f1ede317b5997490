"""Wire format round trips and event-sourced replay."""

import pytest

from colayout import protocol
from colayout.errors import SchemaError
from colayout.scene import SceneObject, Wireframe
from colayout.workspace import Session, mutate


def test_room_round_trip(bedroom):
    doc = protocol.encode_room(bedroom)
    again = protocol.decode_room(doc)
    assert again == bedroom
    assert protocol.canonical_json(protocol.encode_room(again)) == protocol.canonical_json(doc)


def test_object_encoding_shape():
    obj = SceneObject(
        instance_id="chair#1", spec_id="chair-01", position=(1.0, 0.0, 2.0), yaw=45.0, scale=1.1
    )
    doc = protocol.encode_object(obj)
    assert doc == {
        "id": "chair#1",
        "spec": "chair-01",
        "position": [1.0, 0.0, 2.0],
        "rotation": 45.0,
        "scale": 1.1,
    }
    assert protocol.decode_object(doc) == obj


def test_wireframe_round_trip():
    wf = Wireframe(
        wf_id="wf#1", center=(1.5, 2.5), width=2.0, depth=1.6, yaw=30.0, label="bed",
        origin="generated", hidden=True,
    )
    assert protocol.decode_wireframe(protocol.encode_wireframe(wf)) == wf


def test_workspace_document_round_trip(bedroom, catalog):
    session = Session("s", bedroom)
    ws = session.create_workspace()
    mutate(ws, catalog, {"kind": "add", "spec_id": "bed-01", "position": (2.0, 0.0, 1.2)})
    mutate(ws, catalog, {"kind": "wf_add", "center": (1.0, 2.4), "width": 0.5, "depth": 0.4,
                         "label": "nightstand"})
    doc = protocol.encode_workspace(ws)
    clone = protocol.decode_workspace(doc)
    assert protocol.canonical_json(protocol.encode_workspace(clone)) == protocol.canonical_json(doc)


def test_bad_documents_raise_schema_error():
    with pytest.raises(SchemaError):
        protocol.decode_room({"id": "x"})
    with pytest.raises(SchemaError):
        protocol.decode_object({"id": "a"})
    with pytest.raises(SchemaError):
        protocol.decode_workspace({"ws_id": "w"})


def test_replay_rebuilds_exact_document(bedroom, catalog):
    session = Session("s", bedroom)
    ws = session.create_workspace()
    events = [protocol.make_created_event(ws)]

    def record(action, result):
        events.append(protocol.make_change_event(result.revision, action, result.change))

    record("mutate", mutate(ws, catalog, {"kind": "add", "spec_id": "bed-01",
                                          "position": (2.0, 0.0, 1.2)}))
    record("mutate", mutate(ws, catalog, {"kind": "add", "spec_id": "nightstand-01",
                                          "position": (0.5, 0.0, 0.5)}))
    record("mutate", mutate(ws, catalog, {"kind": "move", "id": "bed#1", "to": (2.2, 1.3)}))
    record("mutate", mutate(ws, catalog, {"kind": "wf_add", "center": (1.0, 2.4), "width": 0.6,
                                          "depth": 0.5, "label": "stool"}))
    record("mutate", mutate(ws, catalog, {"kind": "delete", "ids": ["nightstand#1"]}))
    record("mutate", mutate(ws, catalog, {"kind": "rotate", "id": "bed#1", "yaw": 90.0}))

    replayed = protocol.replay_events(events)
    live = protocol.encode_workspace(ws)
    assert protocol.canonical_json(replayed) == protocol.canonical_json(live)


def test_replay_requires_created_head():
    with pytest.raises(SchemaError):
        protocol.replay_events([{"revision": 1, "action": "mutate", "changes": {}}])
