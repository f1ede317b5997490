"""HTTP gateway for co-creation sessions.

Request/response endpoints live under /v1; every state change is appended
to a per-workspace event log and fanned out on the push channel at
/v1/events (server-sent events), tagged with the new revision.  Clients
replaying the log from revision 0 rebuild the workspace document exactly.

Mutations targeting one workspace are serialized by a per-workspace lock;
different workspaces proceed concurrently.
"""

from __future__ import annotations

import itertools
import json
import logging
import queue
import re
import threading
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from .catalog import Catalog, CatalogFilter
from .errors import (
    DegenerateStroke,
    LayoutError,
    NoCandidates,
    OutOfBounds,
    ParseError,
    PasteBlocked,
    PlacementExhausted,
    SceneInvariantError,
    SchemaError,
    UnknownInstance,
    UnknownWorkspace,
)
from .generator import (
    GenConfig,
    PriorTable,
    Suggestion,
    abstract_scene,
    complete_scene,
    generate_wireframes,
    populate_wireframes,
    suggest_objects,
    suggest_placement,
)
from .geom.shapes import min_area_bounding_rect
from .intent import Command, Intent, IntentKind, Parser, load_lexicon
from .scene import Room, SceneObject, fresh_id, oriented_rect_footprint
from .validate import DesignGoals, validate_layout
from .workspace import Change, Session, Workspace, mutate, paste
from . import protocol

logger = logging.getLogger(__name__)

DEFAULT_WIREFRAME_SIZE = 0.5  # fallback square for degenerate strokes


class AlreadyResolved(LayoutError):
    code = "already_resolved"


class SuggestionExpired(LayoutError):
    code = "suggestion_expired"


@dataclass
class PendingSuggestion:
    suggestion_id: str
    candidates: list[Suggestion]
    expires: int  # revision at which the panel is superseded
    resolved_instance: str | None = None


def _goals_from_doc(doc: dict | None) -> DesignGoals:
    if not doc:
        return DesignGoals()
    known = {
        "min_furniture_types", "require_seating", "window_top_clear", "navigable",
        "tall_threshold", "window_strip_depth", "door_swing_radius",
        "grid_resolution", "connectivity_fraction",
    }
    bad = set(doc) - known
    if bad:
        raise SchemaError(f"unknown goal fields: {sorted(bad)}")
    return DesignGoals(**doc)


def _encode_pose(pose) -> dict:
    return {"position": list(pose.position), "rotation": pose.yaw, "scale": pose.scale}


def _encode_spec(spec) -> dict:
    return {
        "spec_id": spec.spec_id,
        "category": spec.category,
        "style": spec.style,
        "material": spec.material,
        "dims": list(spec.dims),
        "placement_class": spec.placement_class,
        "display_name": spec.display_name,
    }


def _encode_intent(intent: Intent) -> dict:
    return {
        "kind": intent.kind.value,
        "filter": {
            "category": intent.filter.category,
            "style": intent.filter.style,
            "material": intent.filter.material,
        },
        "location": list(intent.location) if intent.location else None,
        "targets": list(intent.targets),
        "label": intent.label,
        "wf_id": intent.wf_id,
    }


class CoCreationService:
    """Engine behind the HTTP surface; usable directly in-process."""

    def __init__(
        self,
        catalog: Catalog,
        priors: PriorTable,
        gen_config: GenConfig | None = None,
        persist_dir: str | Path | None = None,
        llm_parse=None,
        remote_generate=None,
    ):
        self.catalog = catalog
        self.priors = priors
        self.gen_config = gen_config or GenConfig()
        self.persist_dir = Path(persist_dir) if persist_dir else None
        self.parser = Parser(load_lexicon(catalog))
        self.llm_parse = llm_parse
        self.remote_generate = remote_generate
        self.sessions: dict[str, Session] = {}
        self.events: dict[tuple[str, str], list[dict]] = {}
        self.pending: dict[tuple[str, str], PendingSuggestion] = {}
        self._subscribers: dict[tuple[str, str], list[queue.Queue]] = {}
        self._locks: dict[tuple[str, str], threading.RLock] = {}
        self._global_lock = threading.RLock()
        self._session_counter = itertools.count(1)
        self._suggestion_counter = itertools.count(1)
        if self.persist_dir:
            self.persist_dir.mkdir(parents=True, exist_ok=True)
            self._load_persisted()

    # ------------------------------------------------------------ plumbing

    def _lock(self, sid: str, ws_id: str) -> threading.RLock:
        with self._global_lock:
            return self._locks.setdefault((sid, ws_id), threading.RLock())

    def session(self, sid: str) -> Session:
        try:
            return self.sessions[sid]
        except KeyError:
            raise UnknownWorkspace(f"no session {sid!r}", session_id=sid) from None

    def _emit(self, sid: str, ws: Workspace, event: dict) -> None:
        key = (sid, ws.ws_id)
        self.events.setdefault(key, []).append(event)
        with self._global_lock:
            subscribers = list(self._subscribers.get(key, ()))
        for q in subscribers:
            q.put(event)
        self._persist(sid)

    def _record_change(self, sid: str, ws: Workspace, action: str, result) -> None:
        self._emit(
            sid, ws, protocol.make_change_event(result.revision, action, result.change)
        )

    def subscribe(self, sid: str, ws_id: str) -> queue.Queue:
        q: queue.Queue = queue.Queue()
        with self._global_lock:
            self._subscribers.setdefault((sid, ws_id), []).append(q)
        return q

    def unsubscribe(self, sid: str, ws_id: str, q: queue.Queue) -> None:
        with self._global_lock:
            subs = self._subscribers.get((sid, ws_id), [])
            if q in subs:
                subs.remove(q)

    def events_since(self, sid: str, ws_id: str, from_revision: int = 0) -> list[dict]:
        self.session(sid).workspace(ws_id)
        return [
            e for e in self.events.get((sid, ws_id), []) if e["revision"] >= from_revision
        ]

    def _persist(self, sid: str) -> None:
        if not self.persist_dir:
            return
        session = self.sessions[sid]
        doc = {
            "session_id": sid,
            "active_index": session.active_index,
            "workspaces": [protocol.encode_workspace(ws) for ws in session.workspaces],
            "events": {
                ws.ws_id: self.events.get((sid, ws.ws_id), []) for ws in session.workspaces
            },
            "room_template": protocol.encode_room(session.room_template),
        }
        path = self.persist_dir / f"{sid}.json"
        path.write_text(protocol.canonical_json(doc), encoding="utf-8")

    def _load_persisted(self) -> None:
        for path in sorted(self.persist_dir.glob("*.json")):
            try:
                doc = json.loads(path.read_text(encoding="utf-8"))
                session = Session(
                    doc["session_id"], protocol.decode_room(doc["room_template"])
                )
                for ws_doc in doc["workspaces"]:
                    ws = protocol.decode_workspace(ws_doc)
                    session.workspaces.append(ws)
                    self.events[(session.session_id, ws.ws_id)] = doc["events"].get(
                        ws.ws_id, []
                    )
                session.active_index = int(doc.get("active_index", 0))
                # keep fresh workspace ids clear of the restored ones
                used = [
                    int(m.group(1))
                    for ws in session.workspaces
                    if (m := re.match(r"ws-(\d+)$", ws.ws_id))
                ]
                session._ws_counter = itertools.count(max(used, default=0) + 1)
                self.sessions[session.session_id] = session
            except (KeyError, ValueError, SchemaError) as exc:
                logger.warning("skipping unreadable session file %s: %s", path, exc)

    # ------------------------------------------------------------ sessions

    def create_session(self, room_doc: dict, workspace_count: int = 1) -> dict:
        room = protocol.decode_room(room_doc)
        sid = f"session-{next(self._session_counter)}"
        session = Session(sid, room)
        self.sessions[sid] = session
        for _ in range(max(1, workspace_count)):
            ws = session.create_workspace()
            self._emit(sid, ws, protocol.make_created_event(ws))
        return self.describe_session(sid)

    def describe_session(self, sid: str) -> dict:
        session = self.session(sid)
        return {
            "session_id": sid,
            "active_ws": session.active.ws_id if session.workspaces else None,
            "workspaces": [
                {"ws_id": ws.ws_id, "name": ws.name, "revision": ws.revision}
                for ws in session.workspaces
            ],
        }

    def create_workspace(self, sid: str, name: str = "") -> dict:
        session = self.session(sid)
        ws = session.create_workspace(name)
        self._emit(sid, ws, protocol.make_created_event(ws))
        return protocol.encode_workspace(ws)

    def switch_workspace(self, sid: str, ws_id: str) -> dict:
        self.session(sid).switch_workspace(ws_id)
        return self.describe_session(sid)

    def export_workspace(self, sid: str, ws_id: str) -> dict:
        return protocol.encode_workspace(self.session(sid).workspace(ws_id))

    def import_workspace(self, sid: str, ws_id: str, doc: dict) -> dict:
        """Validate, then replace the workspace content wholesale."""
        session = self.session(sid)
        ws = session.workspace(ws_id)
        with self._lock(sid, ws_id):
            imported = protocol.decode_workspace(doc)  # raises SchemaError when malformed
            for obj in imported.objects.values():
                spec = self.catalog.spec(obj.spec_id)
                if not imported.room.contains_rect(
                    oriented_rect_footprint(obj, spec.footprint_dims)
                ):
                    raise OutOfBounds(
                        f"imported object {obj.instance_id} is outside the room",
                        instance_id=obj.instance_id,
                    )
            ws.room = imported.room
            ws.objects = imported.objects
            ws.wireframes = imported.wireframes
            ws.revision = imported.revision
            ws.name = imported.name
            exported = protocol.encode_workspace(ws)
            self._emit(sid, ws, protocol.make_import_event(ws.revision, exported))
            return exported

    # ------------------------------------------------------------ commands

    def submit_command(self, sid: str, ws_id: str, payload: dict) -> dict:
        session = self.session(sid)
        ws = session.workspace(ws_id)
        command = Command(
            text=str(payload.get("text", "")),
            pointer=tuple(payload["pointer"]) if payload.get("pointer") else None,
            stroke=tuple(tuple(p) for p in payload["stroke"]) if payload.get("stroke") else None,
            selection=tuple(payload.get("selection", ())),
        )
        if self.llm_parse is not None:
            result = self.llm_parse(command)
        else:
            result = self.parser.parse(command)
        with self._lock(sid, ws_id):
            effect, status = self._dispatch(sid, session, ws, command, result.intent)
        return {
            "intent": _encode_intent(result.intent),
            "ignored_terms": list(result.ignored_terms),
            "confidence": result.confidence,
            "status": status,
            "effect": effect,
        }

    def _dispatch(self, sid, session, ws, command, intent):
        kind = intent.kind
        if kind is IntentKind.OBJECT_GENERATION:
            return self._effect_suggestion(sid, ws, intent)
        if kind is IntentKind.SCENE_COMPLETION:
            return self._effect_complete(sid, ws, {})
        if kind is IntentKind.WIREFRAME_GENERATION:
            return self._effect_wireframes(sid, ws, {})
        if kind is IntentKind.WIREFRAME_LABELLING:
            return self._effect_label(sid, ws, intent)
        if kind is IntentKind.DELETION:
            targets = self._resolve_targets(ws, intent)
            result = mutate(ws, self.catalog, {"kind": "delete", "ids": list(targets)})
            self._record_change(sid, ws, "mutate", result)
            return (
                self._mutation_effect(result),
                f"Removed {len(targets)} object{'s' if len(targets) != 1 else ''}.",
            )
        if kind is IntentKind.OBJECT_DUPLICATION:
            targets = self._resolve_targets(ws, intent)
            result = mutate(ws, self.catalog, {"kind": "duplicate", "ids": list(targets)})
            self._record_change(sid, ws, "mutate", result)
            return (
                self._mutation_effect(result),
                f"Duplicated {len(targets)} object{'s' if len(targets) != 1 else ''}.",
            )
        if kind is IntentKind.OBJECT_REGENERATION:
            return self._effect_regenerate(sid, ws, intent)
        raise ParseError(f"unsupported intent {kind}")

    def _resolve_targets(self, ws: Workspace, intent: Intent) -> tuple[str, ...]:
        if intent.targets:
            for t in intent.targets:
                ws.object(t)
            return intent.targets
        if intent.location is not None:
            hit = self._object_at(ws, intent.location)
            if hit is not None:
                return (hit,)
        raise UnknownInstance("nothing is selected or under the pointer")

    def _object_at(self, ws: Workspace, location) -> str | None:
        """Smallest object whose footprint contains the point."""
        from .geom import point_in_polygon

        x, z = location
        best = None
        best_area = None
        for obj in ws.objects.values():
            spec = self.catalog.spec(obj.spec_id)
            corners = oriented_rect_footprint(obj, spec.footprint_dims)
            if point_in_polygon(x, z, corners):
                area = spec.footprint_dims[0] * spec.footprint_dims[1] * obj.scale**2
                if best_area is None or area < best_area:
                    best = obj.instance_id
                    best_area = area
        return best

    def _mutation_effect(self, result) -> dict:
        change = result.change
        return {
            "type": "mutation",
            "revision": result.revision,
            "added": [o.instance_id for o in change.objects_added]
            + [w.wf_id for w in change.wireframes_added],
            "removed": list(change.objects_removed) + list(change.wireframes_removed),
            "updated": [o.instance_id for o in change.objects_updated]
            + [w.wf_id for w in change.wireframes_updated],
            "clamped": list(result.clamped),
        }

    # ----------------------------------------------------------- effects

    def _gen_config(self, overrides: dict) -> GenConfig:
        cfg = self.gen_config
        return GenConfig(
            seed=int(overrides.get("seed", cfg.seed)),
            max_retries_per_object=cfg.max_retries_per_object,
            suggestion_count=cfg.suggestion_count,
            scale_clamp=cfg.scale_clamp,
            lamp_drop=cfg.lamp_drop,
            respect_openings=bool(overrides.get("respect_openings", cfg.respect_openings)),
        )

    def _effect_suggestion(self, sid: str, ws: Workspace, intent: Intent):
        config = self._gen_config({})
        existing = list(ws.objects.values())
        if intent.location is not None:
            candidates = suggest_objects(
                ws.room, existing, self.catalog, self.priors,
                intent.location, intent.filter, config,
            )
        else:
            # no pointer: suggest rule-based placements for the top matches
            specs = self.catalog.query(intent.filter)
            if not specs:
                raise NoCandidates("nothing in the catalog matches", filter=intent.filter.describe())
            candidates = []
            for spec in specs:
                if len(candidates) >= config.suggestion_count:
                    break
                try:
                    pose = suggest_placement(
                        ws.room, existing, self.catalog, self.priors, spec, config
                    )
                except PlacementExhausted:
                    continue
                candidates.append(Suggestion(spec=spec, pose=pose, clearance=0.0))
            if not candidates:
                raise NoCandidates("nothing fits anywhere", filter=intent.filter.describe())
        suggestion = PendingSuggestion(
            suggestion_id=f"sug-{next(self._suggestion_counter)}",
            candidates=list(candidates),
            expires=ws.revision,
        )
        self.pending[(sid, ws.ws_id)] = suggestion
        effect = {
            "type": "suggestion",
            "suggestion_id": suggestion.suggestion_id,
            "expires": suggestion.expires,
            "candidates": [
                {
                    "spec": _encode_spec(c.spec),
                    "pose": _encode_pose(c.pose),
                    "clearance": c.clearance,
                }
                for c in suggestion.candidates
            ],
        }
        n = len(suggestion.candidates)
        status = f"Here {'is' if n == 1 else 'are'} {n} suggestion{'s' if n != 1 else ''} for {intent.filter.describe()}."
        return effect, status

    def choose(self, sid: str, ws_id: str, suggestion_id: str, index: int) -> dict:
        session = self.session(sid)
        ws = session.workspace(ws_id)
        with self._lock(sid, ws_id):
            suggestion = self.pending.get((sid, ws_id))
            if suggestion is None or suggestion.suggestion_id != suggestion_id:
                raise UnknownInstance(f"no pending suggestion {suggestion_id!r}")
            if suggestion.resolved_instance is not None:
                return {
                    "type": "already_resolved",
                    "revision": ws.revision,
                    "instance_id": suggestion.resolved_instance,
                    "status": "That suggestion was already placed.",
                }
            if ws.revision != suggestion.expires:
                raise SuggestionExpired(
                    "the workspace changed since these suggestions were made",
                    suggestion_id=suggestion_id,
                )
            if not 0 <= index < len(suggestion.candidates):
                raise SchemaError(f"candidate index {index} out of range")
            cand = suggestion.candidates[index]
            result = mutate(
                ws, self.catalog,
                {
                    "kind": "add",
                    "spec_id": cand.spec.spec_id,
                    "position": cand.pose.position,
                    "yaw": cand.pose.yaw,
                    "scale": cand.pose.scale,
                },
            )
            suggestion.resolved_instance = result.new_ids[0]
            self._record_change(sid, ws, "choose", result)
            return {
                "type": "mutation",
                "revision": result.revision,
                "added": list(result.new_ids),
                "status": f"Placed the {cand.spec.display_name}.",
            }

    def _effect_complete(self, sid: str, ws: Workspace, overrides: dict):
        config = self._gen_config(overrides)
        existing = list(ws.objects.values())
        if self.remote_generate is not None:
            objects, warnings = self.remote_generate(ws.room, existing)
            gen = None
        else:
            gen = complete_scene(ws.room, existing, self.catalog, self.priors, config)
            objects, warnings = gen.objects, gen.warnings
        change = Change(objects_added=tuple(objects))
        revision = ws.apply(change)
        result_like = _Applied(revision, change)
        self._record_change(sid, ws, "complete", result_like)
        effect = {
            "type": "report",
            "revision": revision,
            "added": [o.instance_id for o in objects],
            "warnings": protocol.encode_warnings(warnings),
        }
        status = f"Added {len(objects)} items to complete the room."
        if warnings:
            status += f" ({len(warnings)} placement warning{'s' if len(warnings) != 1 else ''}.)"
        return effect, status

    def _effect_wireframes(self, sid: str, ws: Workspace, overrides: dict):
        config = self._gen_config(overrides)
        existing = [wf for wf in ws.wireframes.values() if not wf.hidden]
        gen = generate_wireframes(ws.room, existing, self.catalog, self.priors, config)
        change = Change(wireframes_added=gen.wireframes)
        revision = ws.apply(change)
        self._record_change(sid, ws, "wireframes", _Applied(revision, change))
        effect = {
            "type": "report",
            "revision": revision,
            "added": [w.wf_id for w in gen.wireframes],
            "warnings": protocol.encode_warnings(gen.warnings),
        }
        return effect, f"Sketched {len(gen.wireframes)} wireframes."

    def _effect_label(self, sid: str, ws: Workspace, intent: Intent):
        if intent.wf_id is not None:
            result = mutate(
                ws, self.catalog, {"kind": "wf_label", "id": intent.wf_id, "label": intent.label}
            )
            self._record_change(sid, ws, "mutate", result)
            return self._mutation_effect(result), f"Relabeled {intent.wf_id} as {intent.label}."
        rect = self._normalize_stroke(ws.room, intent.stroke)
        op = {
            "kind": "wf_add",
            "center": rect["center"],
            "width": rect["width"],
            "depth": rect["depth"],
            "yaw": rect["yaw"],
            "label": intent.label,
        }
        result = mutate(ws, self.catalog, op)
        self._record_change(sid, ws, "mutate", result)
        effect = self._mutation_effect(result)
        return effect, f"Marked the area as {intent.label}."

    def _normalize_stroke(self, room: Room, stroke) -> dict:
        """Stroke -> oriented rectangle, with the documented fallbacks:
        a two-point drag becomes its axis-aligned bounds, anything thinner
        becomes a half-meter square at the centroid; the rectangle is then
        nudged inside the room if a wall clipped it."""
        pts = list(stroke)
        try:
            rect = min_area_bounding_rect(pts)
            center, width, depth, yaw = rect.center, rect.width, rect.depth, rect.yaw
        except DegenerateStroke:
            xs = [p[0] for p in pts]
            zs = [p[1] for p in pts]
            cx, cz = sum(xs) / len(xs), sum(zs) / len(zs)
            if len(set(map(tuple, pts))) == 2 and max(xs) > min(xs) and max(zs) > min(zs):
                center = (cx, cz)
                width = max(xs) - min(xs)
                depth = max(zs) - min(zs)
                yaw = 0.0
            else:
                center = (cx, cz)
                width = depth = DEFAULT_WIREFRAME_SIZE
                yaw = 0.0
        width = max(width, 0.05)
        depth = max(depth, 0.05)
        # nudge toward the room centroid until the rectangle fits
        from .geom.shapes import oriented_rect_corners

        gx, gz = room.centroid
        for t in range(0, 101):
            f = t / 100.0
            cx = center[0] + (gx - center[0]) * f
            cz = center[1] + (gz - center[1]) * f
            if room.contains_rect(oriented_rect_corners(cx, cz, width, depth, yaw)):
                return {"center": (cx, cz), "width": width, "depth": depth, "yaw": yaw}
        raise OutOfBounds("the stroke does not fit inside the room")

    def _effect_regenerate(self, sid: str, ws: Workspace, intent: Intent):
        """Replace each target with a fresh same-category suggestion (or the
        filtered category when the command named one)."""
        targets = self._resolve_targets(ws, intent)
        config = self._gen_config({})
        removed: list[str] = []
        added: list[SceneObject] = []
        for target in targets:
            old = ws.object(target)
            old_spec = self.catalog.spec(old.spec_id)
            flt = CatalogFilter(
                category=intent.filter.category or old_spec.category,
                style=intent.filter.style,
                material=intent.filter.material,
            )
            specs = [s for s in self.catalog.query(flt) if s.spec_id != old.spec_id]
            if not specs:
                specs = self.catalog.query(flt)
            if not specs:
                raise NoCandidates("nothing to regenerate into", filter=flt.describe())
            others = [o for o in ws.objects.values() if o.instance_id != target]
            pose = None
            spec = None
            for spec in specs:
                try:
                    pose = suggest_placement(
                        ws.room, others + added, self.catalog, self.priors, spec, config
                    )
                    break
                except PlacementExhausted:
                    continue
            if pose is None:
                raise PlacementExhausted(
                    f"no placement for a replacement {flt.describe()}", category=flt.category
                )
            removed.append(target)
            taken = ws.all_ids() | {o.instance_id for o in added}
            added.append(
                SceneObject(
                    instance_id=fresh_id(spec.category, taken),
                    spec_id=spec.spec_id,
                    position=pose.position,
                    yaw=pose.yaw,
                    scale=1.0,
                )
            )
        change = Change(objects_added=tuple(added), objects_removed=tuple(removed))
        revision = ws.apply(change)
        self._record_change(sid, ws, "mutate", _Applied(revision, change))
        effect = {
            "type": "mutation",
            "revision": revision,
            "added": [o.instance_id for o in added],
            "removed": removed,
            "updated": [],
            "clamped": [],
        }
        return effect, f"Regenerated {len(removed)} object{'s' if len(removed) != 1 else ''}."

    # ------------------------------------------------------- plain actions

    def complete(self, sid: str, ws_id: str, overrides: dict | None = None) -> dict:
        ws = self.session(sid).workspace(ws_id)
        with self._lock(sid, ws_id):
            effect, status = self._effect_complete(sid, ws, overrides or {})
        effect["status"] = status
        return effect

    def gen_wireframes(self, sid: str, ws_id: str, overrides: dict | None = None) -> dict:
        ws = self.session(sid).workspace(ws_id)
        with self._lock(sid, ws_id):
            effect, status = self._effect_wireframes(sid, ws, overrides or {})
        effect["status"] = status
        return effect

    def populate(self, sid: str, ws_id: str, overrides: dict | None = None) -> dict:
        """Turn the visible wireframes into furniture; the wireframes stay,
        hidden, so the scaffold can be revisited."""
        ws = self.session(sid).workspace(ws_id)
        with self._lock(sid, ws_id):
            config = self._gen_config(overrides or {})
            visible = [wf for wf in ws.wireframes.values() if not wf.hidden]
            gen = populate_wireframes(
                ws.room, visible, self.catalog, config, existing_ids=ws.all_ids()
            )
            import dataclasses

            hidden = tuple(dataclasses.replace(wf, hidden=True) for wf in visible)
            change = Change(objects_added=gen.objects, wireframes_updated=hidden)
            revision = ws.apply(change)
            self._record_change(sid, ws, "populate", _Applied(revision, change))
            return {
                "type": "report",
                "revision": revision,
                "added": [o.instance_id for o in gen.objects],
                "warnings": protocol.encode_warnings(gen.warnings),
                "status": f"Populated {len(gen.objects)} furniture pieces from wireframes.",
            }

    def abstract(self, sid: str, ws_id: str) -> dict:
        """Collapse furniture back to wireframes for another design round."""
        ws = self.session(sid).workspace(ws_id)
        with self._lock(sid, ws_id):
            objects = list(ws.objects.values())
            wireframes = abstract_scene(objects, self.catalog)
            change = Change(
                objects_removed=tuple(ws.objects.keys()),
                wireframes_removed=tuple(ws.wireframes.keys()),
                wireframes_added=tuple(wireframes),
            )
            revision = ws.apply(change)
            self._record_change(sid, ws, "abstract", _Applied(revision, change))
            return {
                "type": "report",
                "revision": revision,
                "added": [w.wf_id for w in wireframes],
                "warnings": [],
                "status": f"Switched {len(wireframes)} pieces back to wireframes.",
            }

    def validate_workspace(self, sid: str, ws_id: str, goals_doc: dict | None = None) -> dict:
        ws = self.session(sid).workspace(ws_id)
        report = validate_layout(
            ws.room, list(ws.objects.values()), self.catalog, _goals_from_doc(goals_doc)
        )
        doc = protocol.encode_report(report)
        doc["revision"] = ws.revision
        return doc

    def apply_mutation(self, sid: str, ws_id: str, op: dict) -> dict:
        ws = self.session(sid).workspace(ws_id)
        with self._lock(sid, ws_id):
            result = mutate(ws, self.catalog, op)
            self._record_change(sid, ws, "mutate", result)
            return self._mutation_effect(result)

    def clipboard_copy(self, sid: str, ws_id: str, targets: list[str]) -> dict:
        session = self.session(sid)
        count = session.copy(ws_id, targets)
        return {"copied": count}

    def clipboard_paste(self, sid: str, ws_id: str, anchor) -> dict:
        session = self.session(sid)
        with self._lock(sid, ws_id):
            result = paste(session, ws_id, tuple(anchor), self.catalog)
            if not result.change.is_empty():
                ws = session.workspace(ws_id)
                self._record_change(sid, ws, "paste", result)
            return self._mutation_effect(result)


@dataclass
class _Applied:
    revision: int
    change: Change
    clamped: tuple = ()
    new_ids: tuple = ()


# ----------------------------------------------------------------- HTTP


ERROR_STATUS = {
    "unknown_workspace": 404,
    "unknown_instance": 404,
    "schema_error": 400,
    "unknown_attribute": 400,
    "parse_error": 400,
    "no_intent": 400,
    "missing_deixis": 400,
    "missing_target": 400,
    "invalid_scene": 400,
    "degenerate_stroke": 400,
    "out_of_bounds": 400,
    "invalid_priors": 400,
    "paste_blocked": 409,
    "placement_exhausted": 409,
    "no_candidates": 409,
    "suggestion_expired": 409,
    "already_resolved": 409,
    "backend_unavailable": 502,
    "decode_error": 502,
}

SPOKEN_ERRORS = {
    "no_intent": "Sorry, I did not catch what you want to do.",
    "missing_deixis": "Please point where you mean.",
    "missing_target": "Please select what you mean first.",
    "no_candidates": "Nothing in the catalog fits that request here.",
    "placement_exhausted": "I could not find room for that.",
    "paste_blocked": "There is no space to paste that here.",
}


class _Handler(BaseHTTPRequestHandler):
    service: CoCreationService
    ui_dir: Path | None = None
    protocol_version = "HTTP/1.1"

    # route table: (method, compiled pattern) -> handler name
    ROUTES = [
        ("POST", re.compile(r"^/v1/sessions$"), "h_create_session"),
        ("GET", re.compile(r"^/v1/sessions/([^/]+)$"), "h_get_session"),
        ("POST", re.compile(r"^/v1/sessions/([^/]+)/workspaces$"), "h_create_workspace"),
        ("GET", re.compile(r"^/v1/sessions/([^/]+)/workspaces$"), "h_list_workspaces"),
        ("POST", re.compile(r"^/v1/sessions/([^/]+)/workspaces/([^/]+)/switch$"), "h_switch"),
        ("GET", re.compile(r"^/v1/sessions/([^/]+)/workspaces/([^/]+)$"), "h_export"),
        ("POST", re.compile(r"^/v1/sessions/([^/]+)/workspaces/([^/]+)/import$"), "h_import"),
        ("POST", re.compile(r"^/v1/sessions/([^/]+)/workspaces/([^/]+)/command$"), "h_command"),
        ("POST", re.compile(r"^/v1/sessions/([^/]+)/workspaces/([^/]+)/choose$"), "h_choose"),
        ("POST", re.compile(r"^/v1/sessions/([^/]+)/workspaces/([^/]+)/complete$"), "h_complete"),
        (
            "POST",
            re.compile(r"^/v1/sessions/([^/]+)/workspaces/([^/]+)/wireframes/generate$"),
            "h_wireframes",
        ),
        ("POST", re.compile(r"^/v1/sessions/([^/]+)/workspaces/([^/]+)/populate$"), "h_populate"),
        ("POST", re.compile(r"^/v1/sessions/([^/]+)/workspaces/([^/]+)/abstract$"), "h_abstract"),
        ("POST", re.compile(r"^/v1/sessions/([^/]+)/workspaces/([^/]+)/validate$"), "h_validate"),
        ("GET", re.compile(r"^/v1/sessions/([^/]+)/workspaces/([^/]+)/validate$"), "h_validate"),
        ("POST", re.compile(r"^/v1/sessions/([^/]+)/workspaces/([^/]+)/mutate$"), "h_mutate"),
        ("POST", re.compile(r"^/v1/sessions/([^/]+)/clipboard/copy$"), "h_copy"),
        ("POST", re.compile(r"^/v1/sessions/([^/]+)/workspaces/([^/]+)/paste$"), "h_paste"),
        ("GET", re.compile(r"^/v1/sessions/([^/]+)/workspaces/([^/]+)/events$"), "h_events_log"),
        ("GET", re.compile(r"^/v1/catalog$"), "h_catalog"),
        ("GET", re.compile(r"^/v1/catalog/page$"), "h_catalog_page"),
    ]

    def log_message(self, fmt, *args):  # quiet by default; logging captures it
        logger.debug("%s - %s", self.address_string(), fmt % args)

    # ------------------------------------------------------------- helpers

    _raw_body: bytes = b""

    def _drain_body(self) -> None:
        # always consume the request body, even for handlers that ignore it;
        # leftover bytes would corrupt the next request on a kept-alive
        # connection
        length = int(self.headers.get("Content-Length") or 0)
        self._raw_body = self.rfile.read(length) if length else b""

    def _read_json(self) -> dict:
        if not self._raw_body:
            return {}
        try:
            return json.loads(self._raw_body)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"request body is not valid JSON: {exc}") from exc

    def _send_json(self, doc, status: int = 200) -> None:
        body = json.dumps(doc).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def _send_error_envelope(self, exc: LayoutError) -> None:
        status = ERROR_STATUS.get(exc.code, 400)
        doc = {
            "error": {
                "code": exc.code,
                "message": str(exc),
                "details": getattr(exc, "details", {}),
            }
        }
        spoken = SPOKEN_ERRORS.get(exc.code)
        if spoken:
            doc["status"] = spoken
        self._send_json(doc, status)

    def _query_params(self) -> dict:
        from urllib.parse import parse_qs, urlparse

        return {k: v[0] for k, v in parse_qs(urlparse(self.path).query).items()}

    def _route(self, method: str):
        from urllib.parse import urlparse

        path = urlparse(self.path).path
        for m, pattern, name in self.ROUTES:
            if m != method:
                continue
            match = pattern.match(path)
            if match:
                return name, match.groups()
        return None, ()

    # ------------------------------------------------------------ verbs

    def do_GET(self):
        from urllib.parse import urlparse

        path = urlparse(self.path).path
        if path == "/v1/events":
            return self._stream_events()
        if self.ui_dir is not None and (path == "/" or path.startswith("/ui")):
            return self._serve_static(path)
        self._handle("GET")

    def do_POST(self):
        self._handle("POST")

    def _handle(self, method: str):
        self._drain_body()
        name, groups = self._route(method)
        if name is None:
            self._send_json({"error": {"code": "not_found", "message": "no such route"}}, 404)
            return
        try:
            getattr(self, name)(*groups)
        except LayoutError as exc:
            self._send_error_envelope(exc)
        except Exception as exc:  # pragma: no cover - defensive
            logger.exception("unhandled error")
            self._send_json(
                {"error": {"code": "internal", "message": str(exc), "details": {}}}, 500
            )

    # ------------------------------------------------------------ handlers

    def h_create_session(self):
        body = self._read_json()
        doc = self.service.create_session(
            body.get("room") or {}, int(body.get("workspace_count", 1))
        )
        self._send_json(doc, 201)

    def h_get_session(self, sid):
        self._send_json(self.service.describe_session(sid))

    def h_create_workspace(self, sid):
        body = self._read_json()
        self._send_json(self.service.create_workspace(sid, body.get("name", "")), 201)

    def h_list_workspaces(self, sid):
        self._send_json(self.service.describe_session(sid)["workspaces"])

    def h_switch(self, sid, ws_id):
        self._send_json(self.service.switch_workspace(sid, ws_id))

    def h_export(self, sid, ws_id):
        self._send_json(self.service.export_workspace(sid, ws_id))

    def h_import(self, sid, ws_id):
        self._send_json(self.service.import_workspace(sid, ws_id, self._read_json()))

    def h_command(self, sid, ws_id):
        self._send_json(self.service.submit_command(sid, ws_id, self._read_json()))

    def h_choose(self, sid, ws_id):
        body = self._read_json()
        self._send_json(
            self.service.choose(
                sid, ws_id, str(body.get("suggestion_id")), int(body.get("index", 0))
            )
        )

    def h_complete(self, sid, ws_id):
        self._send_json(self.service.complete(sid, ws_id, self._read_json()))

    def h_wireframes(self, sid, ws_id):
        self._send_json(self.service.gen_wireframes(sid, ws_id, self._read_json()))

    def h_populate(self, sid, ws_id):
        self._send_json(self.service.populate(sid, ws_id, self._read_json()))

    def h_abstract(self, sid, ws_id):
        self._send_json(self.service.abstract(sid, ws_id))

    def h_validate(self, sid, ws_id):
        body = self._read_json() if self.command == "POST" else {}
        self._send_json(self.service.validate_workspace(sid, ws_id, body.get("goals")))

    def h_mutate(self, sid, ws_id):
        self._send_json(self.service.apply_mutation(sid, ws_id, self._read_json()))

    def h_copy(self, sid):
        body = self._read_json()
        self._send_json(
            self.service.clipboard_copy(sid, body.get("ws_id"), body.get("targets", []))
        )

    def h_paste(self, sid, ws_id):
        body = self._read_json()
        self._send_json(self.service.clipboard_paste(sid, ws_id, body.get("anchor", (0, 0))))

    def h_events_log(self, sid, ws_id):
        params = self._query_params()
        self._send_json(
            self.service.events_since(sid, ws_id, int(params.get("from", 0)))
        )

    def h_catalog(self):
        params = self._query_params()
        flt = CatalogFilter(
            category=params.get("category"),
            style=params.get("style"),
            material=params.get("material"),
        )
        specs = self.service.catalog.query(flt)
        self._send_json(
            {
                "items": [_encode_spec(s) for s in specs],
                "categories": list(self.service.catalog.categories),
                "styles": list(self.service.catalog.styles),
                "materials": list(self.service.catalog.materials),
            }
        )

    def h_catalog_page(self):
        params = self._query_params()
        items = self.service.catalog.page(
            params.get("category", ""), int(params.get("page", 0))
        )
        self._send_json({"items": [_encode_spec(s) for s in items]})

    # ----------------------------------------------------------- push/SSE

    def _stream_events(self):
        params = self._query_params()
        sid = params.get("session", "")
        ws_id = params.get("ws", "")
        from_rev = int(params.get("from", 0))
        try:
            history = self.service.events_since(sid, ws_id, from_rev)
        except LayoutError as exc:
            self._send_error_envelope(exc)
            return
        q = self.service.subscribe(sid, ws_id)
        try:
            self.send_response(200)
            self.send_header("Content-Type", "text/event-stream")
            self.send_header("Cache-Control", "no-cache")
            self.send_header("Access-Control-Allow-Origin", "*")
            self.send_header("Transfer-Encoding", "chunked")
            self.end_headers()
            last = from_rev - 1
            for event in history:
                self._write_event(event)
                last = event["revision"]
            while True:
                try:
                    event = q.get(timeout=1.0)
                except queue.Empty:
                    self._write_chunk(b": ping\n\n")
                    continue
                if event["revision"] > last:
                    self._write_event(event)
                    last = event["revision"]
        except (BrokenPipeError, ConnectionResetError):
            pass
        finally:
            self.service.unsubscribe(sid, ws_id, q)

    def _write_chunk(self, data: bytes):
        # chunked framing keeps intermediaries and clients streaming
        self.wfile.write(f"{len(data):X}\r\n".encode("ascii") + data + b"\r\n")
        self.wfile.flush()

    def _write_event(self, event: dict):
        payload = json.dumps(event)
        self._write_chunk(f"id: {event['revision']}\ndata: {payload}\n\n".encode("utf-8"))

    # --------------------------------------------------------- static UI

    def _serve_static(self, path: str):
        rel = "index.html" if path in ("/", "/ui", "/ui/") else path[len("/ui/"):]
        target = (self.ui_dir / rel).resolve()
        if not str(target).startswith(str(self.ui_dir.resolve())) or not target.is_file():
            self._send_json({"error": {"code": "not_found", "message": "no such file"}}, 404)
            return
        content_types = {
            ".html": "text/html", ".js": "text/javascript", ".css": "text/css",
            ".svg": "image/svg+xml", ".json": "application/json", ".map": "application/json",
        }
        body = target.read_bytes()
        self.send_response(200)
        self.send_header("Content-Type", content_types.get(target.suffix, "application/octet-stream"))
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)


def make_server(
    service: CoCreationService, host: str = "127.0.0.1", port: int = 8700,
    ui_dir: str | Path | None = None,
) -> ThreadingHTTPServer:
    handler = type(
        "BoundHandler",
        (_Handler,),
        {"service": service, "ui_dir": Path(ui_dir) if ui_dir else None},
    )
    server = ThreadingHTTPServer((host, port), handler)
    server.daemon_threads = True
    return server
