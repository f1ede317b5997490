"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line (run with -s or look at the pytest summary).

Tolerances are pinned here and nowhere else:
  - pairwise footprint overlap: <= 1 cm^2 (1e-4 m^2)
  - generator safety: >= 95% of 200 seeds x 3 rooms warning-free, < 5 s
  - byte-identical determinism over 50 cases
  - intent corpus: 100% exact match on >= 60 lines
  - suggestion probes: 100 random (location, filter) pairs
  - round trip: labels exact, centers <= 1 cm, dims within [0.8, 1.2],
    yaw modulo 90-degree transposition
  - ceiling rule: y == ceiling - 0.5 - height*scale, exact
  - min-area rects within 1e-6 m^2 of a 0.1-degree sweep, 50 clouds
  - clip areas within 1e-2 of Monte-Carlo estimates
  - protocol replay: byte-identical document after a 30-operation session
"""

import json
import math
import random
import time
from pathlib import Path

import numpy as np
import pytest

from colayout import protocol
from colayout.catalog import CatalogFilter, load_default_catalog
from colayout.errors import NoCandidates, OutOfBounds, ParseError
from colayout.generator import (
    GenConfig,
    abstract_scene,
    complete_scene,
    generate_wireframes,
    load_default_priors,
    populate_wireframes,
    suggest_objects,
)
from colayout.geom import convex_clip_area, poly_min_distance
from colayout.geom.shapes import (
    min_area_bounding_rect,
    oriented_rect_corners,
    rects_equivalent,
)
from colayout.intent import Command, Parser, load_lexicon
from colayout.scene import OVERLAP_TOLERANCE, Opening, Room, oriented_rect_footprint
from colayout.service import CoCreationService
from colayout.validate import DesignGoals, bands_overlap, validate_layout, vertical_interval

DATA = Path(__file__).parent / "data"

CATALOG = load_default_catalog()
PRIORS = load_default_priors()

BEDROOM = Room(
    id="bedroom-1", room_type="bedroom",
    footprint=((0.0, 0.0), (4.0, 0.0), (4.0, 3.0), (0.0, 3.0)), ceiling_height=2.8,
    openings=(
        Opening("door", 0, 1.5, 0.9, 0.0, 2.1),
        Opening("window", 2, 1.2, 1.4, 0.9, 2.0),
    ),
)
LIVING = Room(
    id="living-1", room_type="living_room",
    footprint=((0.0, 0.0), (6.0, 0.0), (6.0, 4.0), (0.0, 4.0)), ceiling_height=2.8,
    openings=(
        Opening("door", 3, 1.0, 0.9, 0.0, 2.1),
        Opening("window", 1, 1.0, 1.6, 0.9, 2.0),
        Opening("window", 2, 2.0, 1.6, 0.9, 2.0),
    ),
)
LSHAPE = Room(
    id="lshape-1", room_type="bedroom",
    footprint=((0.0, 0.0), (5.0, 0.0), (5.0, 3.0), (3.0, 3.0), (3.0, 5.0), (0.0, 5.0)),
    ceiling_height=2.8,
    openings=(
        Opening("door", 0, 2.0, 0.9, 0.0, 2.1),
        Opening("window", 5, 1.5, 1.4, 0.9, 2.0),
    ),
)
ROOMS = (BEDROOM, LIVING, LSHAPE)


def report_line(name: str, ok: bool, detail: str = ""):
    print(f"ACCEPTANCE {name}: {'PASS' if ok else 'FAIL'}{'  (' + detail + ')' if detail else ''}")
    assert ok, f"{name}: {detail}"


# ---------------------------------------------------------------------------


def test_generator_safety_suite():
    """200 seeds x 3 rooms: overlap <= 1 cm^2 pairwise, all in bounds,
    >= 95% of seeds warning-free, total runtime < 5 s."""
    t0 = time.perf_counter()
    clean = 0
    total = 0
    for seed in range(200):
        for room in ROOMS:
            result = complete_scene(room, [], CATALOG, PRIORS, GenConfig(seed=seed))
            total += 1
            if not result.warnings:
                clean += 1
            objs = list(result.objects)
            specs = {o.instance_id: CATALOG.spec(o.spec_id) for o in objs}
            fps = {
                o.instance_id: oriented_rect_footprint(o, specs[o.instance_id].footprint_dims)
                for o in objs
            }
            for o in objs:
                assert room.contains_rect(fps[o.instance_id]), (seed, room.id, o.instance_id)
            for i in range(len(objs)):
                for j in range(i + 1, len(objs)):
                    a, b = objs[i], objs[j]
                    if not bands_overlap(
                        vertical_interval(specs[a.instance_id], a),
                        vertical_interval(specs[b.instance_id], b),
                    ):
                        continue
                    area = convex_clip_area(fps[a.instance_id], fps[b.instance_id])
                    assert area <= OVERLAP_TOLERANCE, (seed, room.id, a.instance_id, b.instance_id)
    elapsed = time.perf_counter() - t0
    rate = clean / total
    report_line(
        "generator-safety", rate >= 0.95 and elapsed < 5.0,
        f"{rate:.1%} warning-free, {elapsed:.2f}s",
    )


def test_determinism_suite():
    """50 cases across generators and parser: byte-identical serialized output."""
    parser = Parser(load_lexicon(CATALOG))
    lines = (DATA / "corpus.txt").read_text().splitlines()
    expected = json.loads((DATA / "corpus_expected.json").read_text())
    cases = 0
    ok = True

    def run_twice(fn):
        nonlocal cases, ok
        a, b = fn(), fn()
        ok = ok and (a == b)
        cases += 1

    for seed in range(10):
        for room in ROOMS:
            run_twice(lambda room=room, seed=seed: protocol.canonical_json(
                [protocol.encode_object(o) for o in
                 complete_scene(room, [], CATALOG, PRIORS, GenConfig(seed=seed)).objects]
            ))
    for seed in range(5):
        run_twice(lambda seed=seed: protocol.canonical_json(
            [protocol.encode_wireframe(w) for w in
             generate_wireframes(BEDROOM, [], CATALOG, PRIORS, GenConfig(seed=seed)).wireframes]
        ))
    for i in (0, 2, 29, 36, 41, 47, 52, 58, 13, 20, 25, 31, 44, 55, 60):
        entry = expected[i]
        given = entry.get("given", {})
        cmd = Command(
            text=lines[i],
            pointer=tuple(given["pointer"]) if given.get("pointer") else None,
            stroke=tuple(tuple(p) for p in given["stroke"]) if given.get("stroke") else None,
            selection=tuple(given.get("selection", ())),
        )
        run_twice(lambda cmd=cmd: repr(parser.parse(cmd)))
    report_line("determinism", ok and cases >= 50, f"{cases} cases")


def test_intent_corpus_exact():
    """100% exact-match intents over the >= 60-line corpus."""
    lines = (DATA / "corpus.txt").read_text().splitlines()
    expected = json.loads((DATA / "corpus_expected.json").read_text())
    parser = Parser(load_lexicon(CATALOG))
    assert len(lines) >= 60
    kinds = set()
    flagged = 0
    matched = 0
    for text, entry in zip(lines, expected):
        given = entry.get("given", {})
        cmd = Command(
            text=text,
            pointer=tuple(given["pointer"]) if given.get("pointer") else None,
            stroke=tuple(tuple(p) for p in given["stroke"]) if given.get("stroke") else None,
            selection=tuple(given.get("selection", ())),
        )
        want = entry["expect"]
        try:
            result = parser.parse(cmd)
        except ParseError:
            continue
        intent = result.intent
        kinds.add(intent.kind.value)
        if want["ignored"]:
            flagged += 1
        got = {
            "kind": intent.kind.value,
            "filter": {
                "category": intent.filter.category,
                "style": intent.filter.style,
                "material": intent.filter.material,
            },
            "location": list(intent.location) if intent.location else None,
            "targets": list(intent.targets),
            "label": intent.label,
            "ignored": list(result.ignored_terms),
            "confidence": result.confidence,
        }
        if got == want:
            matched += 1
    exact = matched == len(lines)
    report_line(
        "intent-corpus",
        exact and len(kinds) == 7 and flagged >= 5,
        f"{matched}/{len(lines)} exact, {len(kinds)} kinds, {flagged} out-of-range lines",
    )
    assert "Generate a minimalist wooden chair here" in lines
    assert "Mark this area as a bed" in lines


def test_suggestion_contract():
    """100 random probes: every candidate passes a brute-force filter scan
    and a brute-force fit check; <= 3 distinct spec ids."""
    rng = random.Random(777)
    probes = 0
    while probes < 100:
        room = ROOMS[probes % 3]
        min_x, min_z, max_x, max_z = room.bbox
        loc = (rng.uniform(min_x, max_x), rng.uniform(min_z, max_z))
        if not room.contains_point(*loc):
            continue
        field = rng.choice(("category", "style", "material"))
        value = rng.choice(
            {
                "category": CATALOG.categories,
                "style": CATALOG.styles,
                "material": CATALOG.materials,
            }[field]
        )
        flt = CatalogFilter(**{field: value})
        existing = list(
            complete_scene(room, [], CATALOG, PRIORS, GenConfig(seed=probes)).objects
        )
        try:
            suggestions = suggest_objects(
                room, existing, CATALOG, PRIORS, loc, flt, GenConfig(seed=0)
            )
        except (NoCandidates, OutOfBounds):
            probes += 1
            continue
        assert 1 <= len(suggestions) <= 3
        ids = [s.spec.spec_id for s in suggestions]
        assert len(set(ids)) == len(ids)
        matching = {s.spec_id for s in CATALOG if flt.matches(s)}
        for s in suggestions:
            assert s.spec.spec_id in matching  # brute-force filter scan
            fp = oriented_rect_corners(
                loc[0], loc[1], s.spec.footprint_dims[0], s.spec.footprint_dims[1], s.pose.yaw
            )
            assert room.contains_rect(fp)
            if s.spec.placement_class == "ceiling":
                y = room.ceiling_height - 0.5 - s.spec.height
                band = (y, y + s.spec.height)
            else:
                band = (0.0, s.spec.height)
            for other in existing:
                other_spec = CATALOG.spec(other.spec_id)
                if not bands_overlap(band, vertical_interval(other_spec, other)):
                    continue
                area = convex_clip_area(
                    fp, oriented_rect_footprint(other, other_spec.footprint_dims)
                )
                assert area <= OVERLAP_TOLERANCE
        probes += 1
    report_line("suggestion-contract", True, "100 probes")


def test_wireframe_round_trip():
    """abstract(populate(W)) preserves labels exactly, centers within 1 cm,
    dims within the scale clamp, yaw modulo 90-degree transposition."""
    cases = 0
    for case in range(100):
        room = ROOMS[case % 3]
        wireframes = list(
            generate_wireframes(room, [], CATALOG, PRIORS, GenConfig(seed=5000 + case)).wireframes
        )
        assert wireframes
        populated = populate_wireframes(room, wireframes, CATALOG, GenConfig(seed=0))
        back = abstract_scene(list(populated.objects), CATALOG)
        assert len(back) == len(wireframes)
        for orig, rt in zip(wireframes, back):
            assert rt.label == orig.label
            assert math.hypot(
                rt.center[0] - orig.center[0], rt.center[1] - orig.center[1]
            ) <= 0.01
            lo, hi = 0.8, 1.2
            pairs = sorted((rt.width / orig.width, rt.depth / orig.depth))
            pairs_t = sorted((rt.width / orig.depth, rt.depth / orig.width))
            assert (all(lo - 1e-9 <= r <= hi + 1e-9 for r in pairs)
                    or all(lo - 1e-9 <= r <= hi + 1e-9 for r in pairs_t))
            assert rects_equivalent(
                (rt.width, rt.depth, rt.yaw), (orig.width, orig.depth, orig.yaw),
                dim_tol=max(orig.width, orig.depth) * (hi - 1.0) + 1e-9, yaw_tol=1e-6,
            )
        cases += 1
    report_line("wireframe-round-trip", cases == 100, f"{cases} sets")


def test_ceiling_rule_exact():
    """Every ceiling placement satisfies y = ceiling - 0.5 - height*scale."""
    checked = 0
    for seed in range(40):
        room = ROOMS[seed % 3]
        result = complete_scene(room, [], CATALOG, PRIORS, GenConfig(seed=seed))
        for obj in result.objects:
            spec = CATALOG.spec(obj.spec_id)
            if spec.placement_class == "ceiling":
                assert obj.position[1] == room.ceiling_height - 0.5 - spec.height * obj.scale
                checked += 1
        wfs = generate_wireframes(room, [], CATALOG, PRIORS, GenConfig(seed=seed)).wireframes
        pop = populate_wireframes(room, list(wfs), CATALOG, GenConfig(seed=0))
        for obj in pop.objects:
            spec = CATALOG.spec(obj.spec_id)
            if spec.placement_class == "ceiling":
                assert obj.position[1] == room.ceiling_height - 0.5 - spec.height * obj.scale
                checked += 1
    report_line("ceiling-rule", checked > 0, f"{checked} ceiling placements")


def test_validator_oracles():
    """Overlap counts equal the O(n^2) scan; navigability agrees with an
    independent flood fill at 0.1 m and 0.05 m on 10 fixtures, including the
    doorway-blocking nightstand and window-blocking wardrobe fixtures."""
    from scipy import ndimage
    from colayout.scene import SceneObject
    from colayout.validate import _door_cell_groups, build_occupancy_grid

    def mk(iid, sid, x, z, yaw=0.0):
        return SceneObject(instance_id=iid, spec_id=sid, position=(x, 0.0, z), yaw=yaw)

    blocking_nightstand = [mk("nightstand#1", "nightstand-01", 1.8, 0.3)]
    blocking_wardrobe = [mk("wardrobe#1", "wardrobe-01", 2.0, 2.65, yaw=180.0)]
    bisecting = [
        mk("w#1", "wardrobe-01", 0.71, 1.5),
        mk("w#2", "wardrobe-02", 2.0, 1.5),
        mk("w#3", "wardrobe-04", 3.3, 1.5),
    ]
    fixtures = [
        (BEDROOM, []),
        (BEDROOM, blocking_nightstand),
        (BEDROOM, blocking_wardrobe),
        (BEDROOM, bisecting),
        (BEDROOM, [mk("bed#1", "bed-01", 3.0, 1.9), mk("sofa#1", "sofa-03", 1.0, 2.5, 180.0)]),
        (LIVING, []),
        (LIVING, [mk("sofa#1", "sofa-01", 3.0, 3.5, 180.0), mk("tv#1", "tv_stand-01", 3.0, 0.25)]),
        (LSHAPE, []),
        (LSHAPE, [mk("bed#1", "bed-01", 1.5, 4.0)]),
        (LSHAPE, [mk("bookshelf#1", "bookshelf-01", 0.5, 2.0, 90.0)]),
    ]
    # the two study-style regressions
    rep = validate_layout(BEDROOM, blocking_nightstand, CATALOG, DesignGoals())
    ok = not rep.check("door_clearance").passed
    rep = validate_layout(BEDROOM, blocking_wardrobe, CATALOG, DesignGoals())
    ok = ok and not rep.check("window_top").passed

    rng = np.random.default_rng(11)
    for room, scene in fixtures:
        report = validate_layout(room, scene, CATALOG, DesignGoals())
        # overlap completeness against the quadratic scan
        want = 0
        for i in range(len(scene)):
            si = CATALOG.spec(scene[i].spec_id)
            for j in range(i + 1, len(scene)):
                sj = CATALOG.spec(scene[j].spec_id)
                if not bands_overlap(
                    vertical_interval(si, scene[i]), vertical_interval(sj, scene[j])
                ):
                    continue
                if convex_clip_area(
                    oriented_rect_footprint(scene[i], si.footprint_dims),
                    oriented_rect_footprint(scene[j], sj.footprint_dims),
                ) > OVERLAP_TOLERANCE:
                    want += 1
        got = sum(1 for v in report.violations if v.kind == "overlap")
        ok = ok and got == want
        # navigability at two grid resolutions against scipy flood fill
        for res in (0.1, 0.05):
            verdict = validate_layout(
                room, scene, CATALOG, DesignGoals(grid_resolution=res)
            ).check("navigability").passed
            floor_fps = [
                oriented_rect_footprint(o, CATALOG.spec(o.spec_id).footprint_dims)
                for o in scene
                if CATALOG.spec(o.spec_id).placement_class == "floor"
            ]
            grid = build_occupancy_grid(room, floor_fps, res)
            free = np.array(grid.free, dtype=bool)
            labels, _ = ndimage.label(
                free, structure=np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]])
            )
            door_labels = set()
            oracle = free.sum() > 0
            for group in _door_cell_groups(room, grid):
                if not group:
                    oracle = False
                    break
                door_labels |= {labels[c] for c in group}
            if oracle:
                oracle = len(door_labels) == 1
            if oracle:
                component = door_labels.pop()
                oracle = (labels == component).sum() >= 0.6 * free.sum()
            ok = ok and verdict == oracle
    report_line("validator-oracles", ok, "10 fixtures x 2 resolutions")


def test_geometry_oracles():
    """Min-area rects within 1e-6 m^2 of an exhaustive 0.1-degree sweep on 50
    random clouds; clip areas within 1e-2 of Monte-Carlo estimates."""
    rng = random.Random(4321)
    ok = True
    for case in range(50):
        pts = [(rng.uniform(-3, 3), rng.uniform(-2, 2)) for _ in range(rng.randint(5, 50))]
        rect = min_area_bounding_rect(pts)
        arr = np.asarray(pts)
        best = math.inf
        for k in range(900):
            theta = math.radians(k * 0.1)
            c, s = math.cos(theta), math.sin(theta)
            u = arr[:, 0] * c + arr[:, 1] * s
            v = -arr[:, 0] * s + arr[:, 1] * c
            best = min(best, (u.max() - u.min()) * (v.max() - v.min()))
        ok = ok and rect.width * rect.depth <= best + 1e-6

    mc_rng = np.random.default_rng(99)
    for case in range(6):
        a = oriented_rect_corners(
            rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(0.5, 2.5),
            rng.uniform(0.5, 2.5), rng.uniform(0, 360),
        )
        b = oriented_rect_corners(
            rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(0.5, 2.5),
            rng.uniform(0.5, 2.5), rng.uniform(0, 360),
        )
        exact = convex_clip_area(a, b)
        all_pts = a + b
        lo_x = min(p[0] for p in all_pts)
        hi_x = max(p[0] for p in all_pts)
        lo_z = min(p[1] for p in all_pts)
        hi_z = max(p[1] for p in all_pts)
        xs = mc_rng.uniform(lo_x, hi_x, 1_000_000)
        zs = mc_rng.uniform(lo_z, hi_z, 1_000_000)

        def inside(poly):
            mask = np.ones(len(xs), dtype=bool)
            n = len(poly)
            area2 = sum(
                poly[i][0] * poly[(i + 1) % n][1] - poly[(i + 1) % n][0] * poly[i][1]
                for i in range(n)
            )
            ordered = poly if area2 > 0 else list(reversed(poly))
            for i in range(n):
                x0, z0 = ordered[i]
                x1, z1 = ordered[(i + 1) % n]
                mask &= (x1 - x0) * (zs - z0) - (z1 - z0) * (xs - x0) >= 0
            return mask

        estimate = (inside(a) & inside(b)).mean() * (hi_x - lo_x) * (hi_z - lo_z)
        ok = ok and abs(exact - estimate) <= 1e-2
    report_line("geometry-oracles", ok, "50 clouds + 6 Monte-Carlo areas")


def test_protocol_replay_three_workflows():
    """A scripted 30-operation session driving all three workflows headlessly;
    replaying the push events from revision 0 rebuilds the document byte-for-
    byte."""
    service = CoCreationService(CATALOG, PRIORS)
    room_doc = protocol.encode_room(BEDROOM)
    session = service.create_session(room_doc, workspace_count=3)
    sid = session["session_id"]
    ws_auto, ws_manual, ws_scaffold = [w["ws_id"] for w in session["workspaces"]]

    # automatic workflow: complete, rearrange, delete, complete again, tweak
    service.complete(sid, ws_auto, {"seed": 42})
    auto_doc = service.export_workspace(sid, ws_auto)
    first, second = auto_doc["objects"][0], auto_doc["objects"][1]
    service.apply_mutation(sid, ws_auto, {"kind": "move", "id": first["id"], "to": (2.2, 1.4)})
    service.apply_mutation(sid, ws_auto, {"kind": "delete", "ids": [second["id"]]})
    service.complete(sid, ws_auto, {"seed": 7})
    service.apply_mutation(sid, ws_auto, {"kind": "move", "id": first["id"], "to": (2.0, 1.3)})
    service.apply_mutation(sid, ws_auto, {"kind": "rescale", "id": first["id"], "scale": 0.95})
    service.apply_mutation(
        sid, ws_auto,
        {"kind": "rotate", "id": first["id"], "yaw": first["rotation"]},
    )
    service.apply_mutation(
        sid, ws_auto,
        {"kind": "wf_add", "center": (2.0, 1.5), "width": 0.4, "depth": 0.4, "label": "stool"},
    )
    auto_doc = service.export_workspace(sid, ws_auto)
    service.apply_mutation(
        sid, ws_auto, {"kind": "wf_move", "id": auto_doc["wireframes"][0]["id"], "to": (2.1, 1.6)}
    )
    service.apply_mutation(
        sid, ws_auto, {"kind": "wf_delete", "ids": [auto_doc["wireframes"][0]["id"]]}
    )

    # manual workflow: pin + command + choose, repeated; duplicate and clipboard
    added_ids = []
    for text, ptr in (
        ("Generate a minimalist wooden chair here", (0.8, 0.8)),
        ("place a modern sofa here", (2.0, 2.3)),
        ("create a nightstand here", (0.5, 2.45)),
        ("add an art deco bedside table here", (3.4, 0.7)),
    ):
        doc = service.submit_command(sid, ws_manual, {"text": text, "pointer": list(ptr)})
        assert doc["effect"]["type"] == "suggestion", doc
        choice = service.choose(sid, ws_manual, doc["effect"]["suggestion_id"], 0)
        assert choice["type"] == "mutation"
        added_ids.append(choice["added"][0])
    doc = service.submit_command(
        sid, ws_manual, {"text": "duplicate this", "selection": [added_ids[-1]]}
    )
    assert doc["effect"]["type"] == "mutation"
    service.apply_mutation(sid, ws_manual, {"kind": "move", "id": added_ids[0], "to": (0.9, 0.9)})
    service.apply_mutation(
        sid, ws_manual, {"kind": "rotate", "id": added_ids[2], "yaw": 45.0}
    )
    service.submit_command(sid, ws_manual, {"text": "delete this", "selection": [added_ids[3]]})
    service.apply_mutation(
        sid, ws_manual,
        {"kind": "wf_add", "center": (3.3, 2.4), "width": 0.9, "depth": 0.3, "label": "shelf"},
    )
    service.clipboard_copy(sid, ws_manual, [added_ids[2]])
    paste_doc = service.clipboard_paste(sid, ws_manual, (3.2, 0.6))
    assert paste_doc["added"]

    # scaffolded workflow: draw + label, generate wireframes, adjust, populate,
    # fine-tune, abstract back, populate again, then trim
    stroke = [[1.1, 0.9], [2.05, 0.95], [2.0, 1.75], [1.15, 1.7]]
    doc = service.submit_command(
        sid, ws_scaffold, {"text": "Mark this area as a bed", "stroke": stroke}
    )
    assert doc["intent"]["kind"] == "wireframe_labelling"
    service.gen_wireframes(sid, ws_scaffold, {"seed": 11})
    wf_doc = service.export_workspace(sid, ws_scaffold)
    some_wf = wf_doc["wireframes"][0]["id"]
    service.apply_mutation(sid, ws_scaffold, {"kind": "wf_move", "id": some_wf, "to": (1.4, 1.1)})
    service.apply_mutation(
        sid, ws_scaffold, {"kind": "wf_resize", "id": some_wf, "width": 1.9}
    )
    service.populate(sid, ws_scaffold, {})
    pop_doc = service.export_workspace(sid, ws_scaffold)
    moved = pop_doc["objects"][0]
    service.apply_mutation(
        sid, ws_scaffold, {"kind": "rotate", "id": moved["id"], "yaw": moved["rotation"]}
    )
    service.abstract(sid, ws_scaffold)
    service.populate(sid, ws_scaffold, {})
    sc_doc = service.export_workspace(sid, ws_scaffold)
    victim = sc_doc["objects"][0]["id"]
    service.submit_command(sid, ws_scaffold, {"text": "delete this", "selection": [victim]})
    survivor = service.export_workspace(sid, ws_scaffold)["objects"][0]["id"]
    service.apply_mutation(sid, ws_scaffold, {"kind": "move", "id": survivor, "to": (2.0, 1.5)})

    total_ops = 0
    ok = True
    for ws_id in (ws_auto, ws_manual, ws_scaffold):
        live = service.export_workspace(sid, ws_id)
        events = service.events_since(sid, ws_id, 0)
        total_ops += live["revision"]
        rebuilt = protocol.replay_events(events)
        ok = ok and protocol.canonical_json(rebuilt) == protocol.canonical_json(live)
    report_line(
        "protocol-replay", ok and total_ops >= 30,
        f"{total_ops} operations replayed across 3 workflows",
    )
