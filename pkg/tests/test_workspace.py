"""Workspace lifecycle: CRUD, clipboard, direct manipulation."""

import copy
import math

import pytest

from colayout.errors import OutOfBounds, PasteBlocked, UnknownInstance, UnknownWorkspace
from colayout.geom import convex_clip_area
from colayout.scene import SceneObject, oriented_rect_footprint
from colayout.workspace import Session, mutate, paste


@pytest.fixture()
def session(bedroom):
    return Session("s-1", bedroom)


def add_bed(ws, catalog, x=2.0, z=0.85):
    return mutate(ws, catalog, {"kind": "add", "spec_id": "bed-01", "position": (x, 0.0, z)})


# ------------------------------------------------------------- workspaces


def test_create_switch_list(session):
    for _ in range(3):
        session.create_workspace()
    ws2 = session.workspaces[1]
    session.switch_workspace(ws2.ws_id)
    assert len(session.workspaces) == 3
    assert session.active is ws2
    assert session.active_index == 1


def test_new_workspace_has_room_and_no_objects(session, bedroom):
    ws = session.create_workspace()
    assert ws.room == bedroom
    assert ws.objects == {}
    assert ws.wireframes == {}
    assert ws.revision == 0


def test_switch_to_removed_workspace_fails(session):
    ws = session.create_workspace()
    session.create_workspace()
    session.remove_workspace(ws.ws_id)
    with pytest.raises(UnknownWorkspace):
        session.switch_workspace(ws.ws_id)


# ---------------------------------------------------------------- revision


def test_revision_increments_by_one(session, catalog):
    ws = session.create_workspace()
    r1 = add_bed(ws, catalog).revision
    r2 = mutate(ws, catalog, {"kind": "move", "id": "bed#1", "to": (2.1, 0.9)}).revision
    assert (r1, r2) == (1, 2)


def test_failed_mutation_leaves_state_identical(session, catalog):
    ws = session.create_workspace()
    add_bed(ws, catalog)
    objects_before = copy.deepcopy(ws.objects)
    revision_before = ws.revision
    with pytest.raises(UnknownInstance):
        mutate(ws, catalog, {"kind": "move", "id": "ghost#1", "to": (1.0, 1.0)})
    with pytest.raises(OutOfBounds):
        mutate(ws, catalog, {"kind": "rescale", "id": "bed#1", "scale": 5.0})
    assert ws.objects == objects_before
    assert ws.revision == revision_before


# ------------------------------------------------------------------ mutate


def test_move_in_open_space(session, catalog):
    ws = session.create_workspace()
    add_bed(ws, catalog)
    result = mutate(ws, catalog, {"kind": "move", "id": "bed#1", "to": (1.8, 1.0)})
    assert ws.objects["bed#1"].position == (1.8, 0.0, 1.0)
    assert result.clamped == ()


def test_move_beyond_wall_clamps(session, catalog):
    ws = session.create_workspace()
    add_bed(ws, catalog)
    result = mutate(ws, catalog, {"kind": "move", "id": "bed#1", "to": (10.0, 0.85)})
    assert result.clamped == ("bed#1",)
    spec = catalog.spec("bed-01")
    corners = oriented_rect_footprint(ws.objects["bed#1"], spec.footprint_dims)
    assert ws.room.contains_rect(corners)
    # flush against the x=4 wall within the clamp resolution
    assert max(c[0] for c in corners) == pytest.approx(4.0, abs=1e-6)


def test_rescale_updates_footprint(session, catalog):
    ws = session.create_workspace()
    add_bed(ws, catalog, z=1.2)
    mutate(ws, catalog, {"kind": "rescale", "id": "bed#1", "scale": 1.1})
    spec = catalog.spec("bed-01")
    corners = oriented_rect_footprint(ws.objects["bed#1"], spec.footprint_dims)
    xs = [c[0] for c in corners]
    assert max(xs) - min(xs) == pytest.approx(2.0 * 1.1)


def test_user_moves_may_overlap(session, catalog):
    # direct manipulation is free: stacking is allowed and left to the validator
    ws = session.create_workspace()
    add_bed(ws, catalog)
    mutate(ws, catalog, {"kind": "add", "spec_id": "nightstand-01", "position": (0.5, 0.0, 2.5)})
    mutate(ws, catalog, {"kind": "move", "id": "nightstand#1", "to": (2.0, 0.85)})
    spec_b = catalog.spec("bed-01")
    spec_n = catalog.spec("nightstand-01")
    area = convex_clip_area(
        oriented_rect_footprint(ws.objects["bed#1"], spec_b.footprint_dims),
        oriented_rect_footprint(ws.objects["nightstand#1"], spec_n.footprint_dims),
    )
    assert area > 0.01


def test_duplicate_offsets_and_fresh_id(session, catalog):
    ws = session.create_workspace()
    mutate(ws, catalog, {"kind": "add", "spec_id": "chair-01", "position": (1.0, 0.0, 1.0)})
    result = mutate(ws, catalog, {"kind": "duplicate", "ids": ["chair#1"]})
    (new_id,) = result.new_ids
    assert new_id != "chair#1"
    dup = ws.objects[new_id]
    # target is original + (0.3, 0.3); a 0.5 m chair needs a further 0.2 m
    # nudge to clear its original (verified against the 1 cm nudge grid)
    spec = catalog.spec("chair-01")

    def clear_at(dx, dz):
        probe = SceneObject(
            instance_id="?", spec_id="chair-01", position=(1.3 + dx, 0.0, 1.3 + dz), yaw=0.0
        )
        return convex_clip_area(
            oriented_rect_footprint(probe, spec.footprint_dims),
            oriented_rect_footprint(ws.objects["chair#1"], spec.footprint_dims),
        ) <= 1e-4

    oracle = min(
        k * 0.01
        for k in range(0, 51)
        for d in ((k * 0.01, 0), (-k * 0.01, 0), (0, k * 0.01), (0, -k * 0.01))
        if clear_at(*d)
    )
    dist = max(abs(dup.position[0] - 1.3), abs(dup.position[2] - 1.3))
    assert dist == pytest.approx(oracle, abs=1e-9)
    assert clear_at(dup.position[0] - 1.3, dup.position[2] - 1.3)


def test_duplicate_nudges_when_offset_collides(session, catalog):
    ws = session.create_workspace()
    mutate(ws, catalog, {"kind": "add", "spec_id": "chair-01", "position": (1.0, 0.0, 1.0)})
    # occupy the natural duplicate spot; the duplicate must shift elsewhere
    mutate(ws, catalog, {"kind": "add", "spec_id": "chair-02", "position": (1.3, 0.0, 1.3)})
    result = mutate(ws, catalog, {"kind": "duplicate", "ids": ["chair#1"]})
    (new_id,) = result.new_ids
    dup = ws.objects[new_id]
    spec = catalog.spec("chair-01")
    dup_fp = oriented_rect_footprint(dup, spec.footprint_dims)
    for other_id in ("chair#1", "chair#2"):
        other = ws.objects[other_id]
        other_fp = oriented_rect_footprint(other, catalog.spec(other.spec_id).footprint_dims)
        assert convex_clip_area(dup_fp, other_fp) <= 1e-4


# ------------------------------------------------------------------ paste


def test_copy_paste_preserves_relative_offsets(session, catalog):
    ws_a = session.create_workspace()
    ws_b = session.create_workspace()
    add_bed(ws_a, catalog)
    mutate(ws_a, catalog, {"kind": "add", "spec_id": "nightstand-01", "position": (3.3, 0.0, 0.85)})
    session.copy(ws_a.ws_id, ["bed#1", "nightstand#1"])
    result = paste(session, ws_b.ws_id, (2.0, 1.5), catalog)
    assert len(result.new_ids) == 2
    positions = [ws_b.objects[i].position for i in result.new_ids]
    got_dx = positions[1][0] - positions[0][0]
    got_dz = positions[1][2] - positions[0][2]
    assert got_dx == pytest.approx(3.3 - 2.0, abs=1e-3)
    assert got_dz == pytest.approx(0.0, abs=1e-3)


def test_paste_nudges_off_occupied_spot(session, catalog):
    ws = session.create_workspace()
    mutate(ws, catalog, {"kind": "add", "spec_id": "chair-01", "position": (2.0, 0.0, 1.5)})
    session.copy(ws.ws_id, ["chair#1"])
    result = paste(session, ws.ws_id, (2.0, 1.5), catalog)
    (new_id,) = result.new_ids
    moved = ws.objects[new_id]
    d = math.hypot(moved.position[0] - 2.0, moved.position[2] - 1.5)
    assert 0.0 < d <= 0.5 + 1e-9
    spec = catalog.spec("chair-01")
    assert convex_clip_area(
        oriented_rect_footprint(moved, spec.footprint_dims),
        oriented_rect_footprint(ws.objects["chair#1"], spec.footprint_dims),
    ) <= 1e-4


def test_paste_nudge_matches_exhaustive_grid_oracle(session, catalog):
    # oracle: 5 cm exhaustive grid over axis-aligned nudges; whenever it finds
    # a clearing nudge, paste must succeed with one at most as large
    ws = session.create_workspace()
    mutate(
        ws, catalog,
        {"kind": "add", "spec_id": "nightstand-01", "position": (2.0, 0.0, 1.5), "yaw": 0},
    )
    session.copy(ws.ws_id, ["nightstand#1"])
    anchor = (2.2, 1.5)
    spec = catalog.spec("nightstand-01")
    ns_fp = oriented_rect_footprint(ws.objects["nightstand#1"], spec.footprint_dims)

    def clears(dx, dz):
        probe = SceneObject(
            instance_id="?", spec_id="nightstand-01",
            position=(anchor[0] + dx, 0.0, anchor[1] + dz), yaw=0.0,
        )
        fp = oriented_rect_footprint(probe, spec.footprint_dims)
        return ws.room.contains_rect(fp) and convex_clip_area(fp, ns_fp) <= 1e-4

    oracle_hits = []
    for k in range(0, 11):
        m = k * 0.05
        for dx, dz in ((m, 0), (-m, 0), (0, m), (0, -m)):
            if clears(dx, dz):
                oracle_hits.append(abs(m))
    assert oracle_hits, "oracle setup must leave an escape nudge"
    result = paste(session, ws.ws_id, anchor, catalog)
    (new_id,) = result.new_ids
    moved = ws.objects[new_id]
    dist = max(
        abs(moved.position[0] - anchor[0]), abs(moved.position[2] - anchor[1])
    )
    assert dist <= min(oracle_hits) + 1e-9
    assert clears(moved.position[0] - anchor[0], moved.position[2] - anchor[1])


def test_paste_into_fully_packed_room_blocked(session, catalog):
    ws = session.create_workspace()
    for x in (0.85, 2.0, 3.15):
        for z in (0.7, 2.1):
            mutate(
                ws, catalog,
                {"kind": "add", "spec_id": "bed-01", "position": (x, 0.0, z), "scale": 0.8},
            )
    session.copy(ws.ws_id, ["bed#1"])
    with pytest.raises(PasteBlocked):
        paste(session, ws.ws_id, (2.0, 1.5), catalog)


def test_clipboard_survives_workspace_switch(session, catalog):
    ws_a = session.create_workspace()
    ws_b = session.create_workspace()
    add_bed(ws_a, catalog)
    session.copy(ws_a.ws_id, ["bed#1"])
    session.switch_workspace(ws_b.ws_id)
    result = paste(session, ws_b.ws_id, (2.0, 1.5), catalog)
    assert len(result.new_ids) == 1


# -------------------------------------------------------------- wireframes


def test_wireframe_lifecycle(session, catalog):
    ws = session.create_workspace()
    result = mutate(
        ws, catalog,
        {"kind": "wf_add", "center": (2.0, 1.5), "width": 2.0, "depth": 1.6, "label": "bed"},
    )
    (wf_id,) = result.new_ids
    mutate(ws, catalog, {"kind": "wf_move", "id": wf_id, "to": (1.8, 1.4)})
    mutate(ws, catalog, {"kind": "wf_resize", "id": wf_id, "width": 1.9})
    mutate(ws, catalog, {"kind": "wf_label", "id": wf_id, "label": "sofa"})
    wf = ws.wireframes[wf_id]
    assert (wf.center, wf.width, wf.label) == ((1.8, 1.4), 1.9, "sofa")
    mutate(ws, catalog, {"kind": "wf_delete", "ids": [wf_id]})
    assert ws.wireframes == {}


def test_wireframe_must_stay_inside_room(session, catalog):
    ws = session.create_workspace()
    with pytest.raises(OutOfBounds):
        mutate(
            ws, catalog,
            {"kind": "wf_add", "center": (3.9, 1.5), "width": 2.0, "depth": 1.0, "label": "bed"},
        )
