"""Sessions, workspaces, clipboard, and the object/wireframe lifecycle.

A session holds ordered design variants (workspaces) over a shared room
template plus one clipboard.  Every successful mutation bumps the workspace
revision by exactly one and is described by a Change record, which doubles
as the event payload for persistence and push replay.  Failed operations
raise before anything is applied, leaving the workspace untouched.

User manipulation may stack or abut furniture (the validator reports such
overlaps); only room bounds are enforced here, with moves clamped to the
walls.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace

from .catalog import Catalog
from .errors import OutOfBounds, PasteBlocked, UnknownInstance, UnknownWorkspace
from .geom import convex_clip_area
from .scene import (
    OVERLAP_TOLERANCE,
    Room,
    SceneObject,
    Wireframe,
    fresh_id,
    oriented_rect_footprint,
)
from .validate import bands_overlap, vertical_interval

DUPLICATE_OFFSET = (0.3, 0.3)
NUDGE_MAX = 0.5
NUDGE_STEP = 0.01


@dataclass(frozen=True)
class Change:
    """Everything one mutation did; replaying changes rebuilds the workspace."""

    objects_added: tuple[SceneObject, ...] = ()
    objects_removed: tuple[str, ...] = ()
    objects_updated: tuple[SceneObject, ...] = ()
    wireframes_added: tuple[Wireframe, ...] = ()
    wireframes_removed: tuple[str, ...] = ()
    wireframes_updated: tuple[Wireframe, ...] = ()

    def is_empty(self) -> bool:
        return not (
            self.objects_added
            or self.objects_removed
            or self.objects_updated
            or self.wireframes_added
            or self.wireframes_removed
            or self.wireframes_updated
        )


@dataclass(frozen=True)
class MutationResult:
    revision: int
    change: Change
    clamped: tuple[str, ...] = ()
    new_ids: tuple[str, ...] = ()


class Workspace:
    """One design variant: a room plus placed objects and wireframes."""

    def __init__(self, ws_id: str, room: Room, name: str = ""):
        self.ws_id = ws_id
        self.name = name or ws_id
        self.room = room
        self.objects: dict[str, SceneObject] = {}
        self.wireframes: dict[str, Wireframe] = {}
        self.revision = 0

    # ------------------------------------------------------------- access

    def object(self, instance_id: str) -> SceneObject:
        try:
            return self.objects[instance_id]
        except KeyError:
            raise UnknownInstance(
                f"no object {instance_id!r} in workspace {self.ws_id}", instance_id=instance_id
            ) from None

    def wireframe(self, wf_id: str) -> Wireframe:
        try:
            return self.wireframes[wf_id]
        except KeyError:
            raise UnknownInstance(
                f"no wireframe {wf_id!r} in workspace {self.ws_id}", wf_id=wf_id
            ) from None

    def all_ids(self):
        return set(self.objects) | set(self.wireframes)

    # -------------------------------------------------------------- apply

    def apply(self, change: Change) -> int:
        """The single choke point for state mutation: applies a change and
        bumps the revision."""
        for oid in change.objects_removed:
            self.objects.pop(oid, None)
        for obj in change.objects_added:
            self.objects[obj.instance_id] = obj
        for obj in change.objects_updated:
            self.objects[obj.instance_id] = obj
        for wid in change.wireframes_removed:
            self.wireframes.pop(wid, None)
        for wf in change.wireframes_added:
            self.wireframes[wf.wf_id] = wf
        for wf in change.wireframes_updated:
            self.wireframes[wf.wf_id] = wf
        self.revision += 1
        return self.revision


@dataclass
class ClipboardItem:
    spec_id: str
    rel_offset: tuple[float, float]
    y: float
    yaw: float
    scale: float


class Session:
    """Ordered workspaces plus one clipboard shared across them."""

    def __init__(self, session_id: str, room_template: Room):
        self.session_id = session_id
        self.room_template = room_template
        self.workspaces: list[Workspace] = []
        self.active_index = 0
        self.clipboard: list[ClipboardItem] = []
        self._ws_counter = itertools.count(1)

    # --------------------------------------------------------- workspaces

    def create_workspace(self, name: str = "") -> Workspace:
        """New variants start from the session's room template, unfurnished."""
        ws_id = f"ws-{next(self._ws_counter)}"
        ws = Workspace(ws_id, self.room_template, name=name)
        self.workspaces.append(ws)
        return ws

    def workspace(self, ws_id: str) -> Workspace:
        for ws in self.workspaces:
            if ws.ws_id == ws_id:
                return ws
        raise UnknownWorkspace(f"no workspace {ws_id!r}", ws_id=ws_id)

    def switch_workspace(self, ws_id: str) -> Workspace:
        for i, ws in enumerate(self.workspaces):
            if ws.ws_id == ws_id:
                self.active_index = i
                return ws
        raise UnknownWorkspace(f"no workspace {ws_id!r}", ws_id=ws_id)

    def remove_workspace(self, ws_id: str) -> None:
        ws = self.workspace(ws_id)
        idx = self.workspaces.index(ws)
        self.workspaces.remove(ws)
        if self.active_index >= len(self.workspaces):
            self.active_index = max(0, len(self.workspaces) - 1)
        elif idx < self.active_index:
            self.active_index -= 1

    @property
    def active(self) -> Workspace:
        if not self.workspaces:
            raise UnknownWorkspace("session has no workspaces")
        return self.workspaces[self.active_index]

    # ----------------------------------------------------------- clipboard

    def copy(self, ws_id: str, targets) -> int:
        """Copy objects relative to the group centroid; returns item count."""
        ws = self.workspace(ws_id)
        objs = [ws.object(t) for t in targets]
        if not objs:
            self.clipboard = []
            return 0
        cx = sum(o.position[0] for o in objs) / len(objs)
        cz = sum(o.position[2] for o in objs) / len(objs)
        self.clipboard = [
            ClipboardItem(
                spec_id=o.spec_id,
                rel_offset=(o.position[0] - cx, o.position[2] - cz),
                y=o.position[1],
                yaw=o.yaw,
                scale=o.scale,
            )
            for o in objs
        ]
        return len(self.clipboard)


# ---------------------------------------------------------------- helpers


def _group_poses(items: list[ClipboardItem], anchor: tuple[float, float]):
    return [
        (item, (anchor[0] + item.rel_offset[0], anchor[1] + item.rel_offset[1]))
        for item in items
    ]


def _placement_ok(
    ws: Workspace,
    catalog: Catalog,
    spec_id: str,
    center: tuple[float, float],
    y: float,
    yaw: float,
    scale: float,
    ignore_ids: set[str] | None = None,
    group: list | None = None,
) -> bool:
    """Inside the room and clear of existing objects (and of earlier group
    members when pasting several at once)."""
    spec = catalog.spec(spec_id)
    probe = SceneObject(
        instance_id="?", spec_id=spec_id, position=(center[0], y, center[1]), yaw=yaw, scale=scale
    )
    corners = oriented_rect_footprint(probe, spec.footprint_dims)
    if not ws.room.contains_rect(corners):
        return False
    band = vertical_interval(spec, probe)
    ignore = ignore_ids or set()
    for other in ws.objects.values():
        if other.instance_id in ignore:
            continue
        other_spec = catalog.spec(other.spec_id)
        if not bands_overlap(band, vertical_interval(other_spec, other)):
            continue
        if convex_clip_area(
            corners, oriented_rect_footprint(other, other_spec.footprint_dims)
        ) > OVERLAP_TOLERANCE:
            return False
    for prev_corners, prev_band in group or []:
        if bands_overlap(band, prev_band) and convex_clip_area(
            corners, prev_corners
        ) > OVERLAP_TOLERANCE:
            return False
    return True


def _nudge_offsets():
    """Axis-aligned nudges in increasing magnitude: (0,0), then +-x/+-z at
    1 cm steps up to 0.5 m."""
    yield (0.0, 0.0)
    steps = int(round(NUDGE_MAX / NUDGE_STEP))
    for k in range(1, steps + 1):
        m = k * NUDGE_STEP
        yield (m, 0.0)
        yield (-m, 0.0)
        yield (0.0, m)
        yield (0.0, -m)


def _place_group(
    ws: Workspace, catalog: Catalog, items: list[ClipboardItem], anchor: tuple[float, float]
):
    """Find the smallest axis-aligned nudge that lets the whole group land
    collision-free; raise PasteBlocked when 0.5 m is not enough."""
    for dx, dz in _nudge_offsets():
        group: list = []
        ok = True
        for item, (px, pz) in _group_poses(items, anchor):
            center = (px + dx, pz + dz)
            if not _placement_ok(
                ws, catalog, item.spec_id, center, item.y, item.yaw, item.scale, group=group
            ):
                ok = False
                break
            spec = catalog.spec(item.spec_id)
            probe = SceneObject(
                instance_id="?", spec_id=item.spec_id,
                position=(center[0], item.y, center[1]), yaw=item.yaw, scale=item.scale,
            )
            group.append(
                (
                    oriented_rect_footprint(probe, spec.footprint_dims),
                    vertical_interval(spec, probe),
                )
            )
        if ok:
            return (dx, dz)
    raise PasteBlocked(
        "no axis-aligned nudge up to 0.5 m clears the paste", anchor=list(anchor)
    )


def paste(
    session: Session, ws_id: str, anchor: tuple[float, float], catalog: Catalog
) -> MutationResult:
    """Paste the clipboard group re-anchored at ``anchor``; relative offsets
    are preserved exactly, modulo one shared collision nudge."""
    ws = session.workspace(ws_id)
    if not session.clipboard:
        return MutationResult(revision=ws.revision, change=Change())
    dx, dz = _place_group(ws, catalog, session.clipboard, anchor)
    taken = ws.all_ids()
    added = []
    for item, (px, pz) in _group_poses(session.clipboard, anchor):
        spec = catalog.spec(item.spec_id)
        new_id = fresh_id(spec.category, taken)
        taken.add(new_id)
        added.append(
            SceneObject(
                instance_id=new_id,
                spec_id=item.spec_id,
                position=(px + dx, item.y, pz + dz),
                yaw=item.yaw,
                scale=item.scale,
            )
        )
    change = Change(objects_added=tuple(added))
    revision = ws.apply(change)
    return MutationResult(
        revision=revision, change=change, new_ids=tuple(o.instance_id for o in added)
    )


# ---------------------------------------------------------------- mutate


def _clamp_move(ws: Workspace, catalog: Catalog, obj: SceneObject, to: tuple[float, float]):
    """Largest step toward the target that keeps the footprint in the room
    (binary search along the displacement)."""
    spec = catalog.spec(obj.spec_id)

    def inside(t: float) -> bool:
        x = obj.position[0] + (to[0] - obj.position[0]) * t
        z = obj.position[2] + (to[1] - obj.position[2]) * t
        return ws.room.contains_rect(
            oriented_rect_footprint(obj.moved_to(x, z), spec.footprint_dims)
        )

    if inside(1.0):
        return to, False
    if not inside(0.0):
        return (obj.position[0], obj.position[2]), True
    lo, hi = 0.0, 1.0
    for _ in range(40):
        mid = (lo + hi) / 2
        if inside(mid):
            lo = mid
        else:
            hi = mid
    x = obj.position[0] + (to[0] - obj.position[0]) * lo
    z = obj.position[2] + (to[1] - obj.position[2]) * lo
    return (x, z), True


def mutate(ws: Workspace, catalog: Catalog, op: dict) -> MutationResult:
    """Apply one direct-manipulation operation.

    op kinds: add {spec_id, position, yaw, scale}, move {id, to},
    rotate {id, yaw}, rescale {id, scale}, delete {ids}, duplicate {ids},
    and the wireframe twins wf_add / wf_move / wf_rotate / wf_resize /
    wf_delete / wf_label.
    """
    kind = op.get("kind")
    if kind == "add":
        spec = catalog.spec(op["spec_id"])
        position = tuple(op.get("position", (0.0, 0.0, 0.0)))
        obj = SceneObject(
            instance_id=fresh_id(spec.category, ws.all_ids()),
            spec_id=spec.spec_id,
            position=position,
            yaw=float(op.get("yaw", 0.0)),
            scale=float(op.get("scale", 1.0)),
        )
        corners = oriented_rect_footprint(obj, spec.footprint_dims)
        if not ws.room.contains_rect(corners):
            raise OutOfBounds("cannot add an object outside the room", spec_id=spec.spec_id)
        change = Change(objects_added=(obj,))
        return MutationResult(ws.apply(change), change, new_ids=(obj.instance_id,))

    if kind == "move":
        obj = ws.object(op["id"])
        (x, z), clamped = _clamp_move(ws, catalog, obj, tuple(op["to"]))
        moved = obj.moved_to(x, z)
        change = Change(objects_updated=(moved,))
        return MutationResult(
            ws.apply(change), change, clamped=(obj.instance_id,) if clamped else ()
        )

    if kind == "rotate":
        obj = ws.object(op["id"])
        spec = catalog.spec(obj.spec_id)
        rotated = replace(obj, yaw=float(op["yaw"]))
        if not ws.room.contains_rect(oriented_rect_footprint(rotated, spec.footprint_dims)):
            raise OutOfBounds(
                "rotation would push the object outside the room", instance_id=obj.instance_id
            )
        change = Change(objects_updated=(rotated,))
        return MutationResult(ws.apply(change), change)

    if kind == "rescale":
        obj = ws.object(op["id"])
        spec = catalog.spec(obj.spec_id)
        factor = float(op["scale"])
        if factor <= 0:
            raise OutOfBounds("scale must be positive", instance_id=obj.instance_id)
        scaled = replace(obj, scale=factor)
        if spec.placement_class == "ceiling":
            # keep the hanging gap: the ceiling offset tracks the new height
            y = ws.room.ceiling_height - (
                ws.room.ceiling_height - obj.position[1] - spec.height * obj.scale
            ) - spec.height * factor
            scaled = replace(scaled, position=(obj.position[0], y, obj.position[2]))
        if not ws.room.contains_rect(oriented_rect_footprint(scaled, spec.footprint_dims)):
            raise OutOfBounds(
                "rescale would push the object outside the room", instance_id=obj.instance_id
            )
        change = Change(objects_updated=(scaled,))
        return MutationResult(ws.apply(change), change)

    if kind == "delete":
        ids = tuple(op["ids"])
        for oid in ids:
            ws.object(oid)
        change = Change(objects_removed=ids)
        return MutationResult(ws.apply(change), change)

    if kind == "duplicate":
        ids = tuple(op["ids"])
        originals = [ws.object(oid) for oid in ids]
        taken = ws.all_ids()
        added = []
        group: list = []
        for obj in originals:
            spec = catalog.spec(obj.spec_id)
            target = (
                obj.position[0] + DUPLICATE_OFFSET[0],
                obj.position[2] + DUPLICATE_OFFSET[1],
            )
            placednear = None
            for dx, dz in _nudge_offsets():
                center = (target[0] + dx, target[1] + dz)
                if _placement_ok(
                    ws, catalog, obj.spec_id, center, obj.position[1], obj.yaw, obj.scale,
                    group=group,
                ):
                    placednear = center
                    break
            if placednear is None:
                raise PasteBlocked(
                    "no nudge clears the duplicate", instance_id=obj.instance_id
                )
            new_id = fresh_id(spec.category, taken)
            taken.add(new_id)
            dup = SceneObject(
                instance_id=new_id,
                spec_id=obj.spec_id,
                position=(placednear[0], obj.position[1], placednear[1]),
                yaw=obj.yaw,
                scale=obj.scale,
            )
            added.append(dup)
            group.append(
                (oriented_rect_footprint(dup, spec.footprint_dims), vertical_interval(spec, dup))
            )
        change = Change(objects_added=tuple(added))
        return MutationResult(
            ws.apply(change), change, new_ids=tuple(o.instance_id for o in added)
        )

    if kind == "wf_add":
        wf = Wireframe(
            wf_id=fresh_id("wf", ws.all_ids()),
            center=tuple(op["center"]),
            width=float(op["width"]),
            depth=float(op["depth"]),
            yaw=float(op.get("yaw", 0.0)),
            label=op["label"],
            origin=op.get("origin", "user_drawn"),
        )
        if not ws.room.contains_rect(wf.corners()):
            raise OutOfBounds("wireframe outside the room", wf_id=wf.wf_id)
        change = Change(wireframes_added=(wf,))
        return MutationResult(ws.apply(change), change, new_ids=(wf.wf_id,))

    if kind in ("wf_move", "wf_rotate", "wf_resize", "wf_label"):
        wf = ws.wireframe(op["id"])
        if kind == "wf_move":
            updated = replace(wf, center=tuple(op["to"]))
        elif kind == "wf_rotate":
            updated = replace(wf, yaw=float(op["yaw"]))
        elif kind == "wf_resize":
            updated = replace(
                wf, width=float(op.get("width", wf.width)), depth=float(op.get("depth", wf.depth))
            )
        else:
            updated = replace(wf, label=op["label"])
        if not ws.room.contains_rect(updated.corners()):
            raise OutOfBounds("wireframe would leave the room", wf_id=wf.wf_id)
        change = Change(wireframes_updated=(updated,))
        return MutationResult(ws.apply(change), change)

    if kind == "wf_delete":
        ids = tuple(op["ids"])
        for wid in ids:
            ws.wireframe(wid)
        change = Change(wireframes_removed=ids)
        return MutationResult(ws.apply(change), change)

    raise UnknownInstance(f"unknown mutation kind {kind!r}", kind=kind)
