"""Rule-driven layout generation.

A seeded sampler stands in for a learned layout model: per-room-type
category menus (with count ranges and priority ranks) plus per-category
placement and orientation rules, realized through rejection sampling.
Every operation is a pure function of its inputs and the seed, so repeated
runs are byte-identical.

By default the sampler ignores doors and windows, reproducing the known
blind spot of layout models that are not trained on opening clearance; the
validator owns those checks.  Setting ``respect_openings`` on the config
adds door-swing and window-front clearance to the feasible region.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from pathlib import Path

from .catalog import Catalog, CatalogFilter, FurnitureSpec
from .errors import (
    NoCandidates,
    NoSpecForLabel,
    OutOfBounds,
    PlacementExhausted,
    PriorError,
    UnknownAttribute,
)
from .geom import convex_clip_area, poly_boundary_distance, poly_min_distance
from .geom.shapes import normalize_yaw, oriented_rect_corners, rotate_xz
from .scene import (
    OVERLAP_TOLERANCE,
    Pose,
    Room,
    SceneObject,
    Wireframe,
    fresh_id,
    oriented_rect_footprint,
)
from .validate import bands_overlap, door_swing_region, vertical_interval, window_strip

WALL_GAP = 0.01  # breathing room between a back-to-wall footprint and the wall

PLACEMENT_RULES = ("against_wall", "corner", "room_center", "near_parent", "ceiling_center")
ORIENTATION_RULES = ("face_room_center", "back_to_wall", "align_parent")


@dataclass(frozen=True)
class GenConfig:
    """Knobs of the sampler; the seed pins every random draw."""

    seed: int = 0
    max_retries_per_object: int = 20
    suggestion_count: int = 3
    scale_clamp: tuple[float, float] = (0.8, 1.2)
    lamp_drop: float = 0.5
    respect_openings: bool = False

    def __post_init__(self):
        if self.suggestion_count < 1:
            raise ValueError("suggestion_count must be at least 1")
        lo, hi = self.scale_clamp
        if not lo <= 1.0 <= hi:
            raise ValueError("scale_clamp must straddle 1.0")
        if self.max_retries_per_object < 1:
            raise ValueError("max_retries_per_object must be at least 1")


@dataclass(frozen=True)
class MenuEntry:
    category: str
    min_count: int
    max_count: int
    rank: int


@dataclass(frozen=True)
class PlacementRule:
    rule: str
    parent: str | None = None
    max_gap: float | None = None


class PriorTable:
    """Menus and rules driving the sampler, loadable from JSON."""

    def __init__(
        self,
        menus: dict[str, list[MenuEntry]],
        placement: dict[str, PlacementRule],
        orientation: dict[str, str],
        room_placement: dict[str, dict[str, PlacementRule]] | None = None,
        room_orientation: dict[str, dict[str, str]] | None = None,
    ):
        self._menus = {rt: sorted(entries, key=lambda e: e.rank) for rt, entries in menus.items()}
        self._placement = placement
        self._orientation = orientation
        self._room_placement = room_placement or {}
        self._room_orientation = room_orientation or {}

    def room_types(self):
        return tuple(sorted(self._menus))

    def menu(self, room_type: str) -> list[MenuEntry]:
        try:
            return self._menus[room_type]
        except KeyError:
            raise PriorError(f"no menu for room type {room_type!r}") from None

    def placement(self, room_type: str, category: str) -> PlacementRule:
        rule = self._room_placement.get(room_type, {}).get(category)
        if rule is None:
            rule = self._placement.get(category)
        if rule is None:
            raise PriorError(f"no placement rule for category {category!r}")
        return rule

    def orientation(self, room_type: str, category: str) -> str:
        rule = self._room_orientation.get(room_type, {}).get(category)
        if rule is None:
            rule = self._orientation.get(category)
        if rule is None:
            raise PriorError(f"no orientation rule for category {category!r}")
        return rule

    def validate(self, catalog: Catalog) -> None:
        """Menus must reference known catalog categories with usable rules,
        and near-parent parents must rank before their children."""
        for room_type, menu in self._menus.items():
            ranks = {e.category: e.rank for e in menu}
            for entry in menu:
                if entry.category not in catalog.categories:
                    raise PriorError(
                        f"{room_type} menu names unknown category {entry.category!r}"
                    )
                if entry.min_count < 0 or entry.max_count < entry.min_count:
                    raise PriorError(f"bad count range for {entry.category!r} in {room_type}")
                rule = self.placement(room_type, entry.category)
                if rule.rule not in PLACEMENT_RULES:
                    raise PriorError(f"unknown placement rule {rule.rule!r}")
                orient = self.orientation(room_type, entry.category)
                if orient not in ORIENTATION_RULES:
                    raise PriorError(f"unknown orientation rule {orient!r}")
                if rule.rule == "near_parent":
                    if not rule.parent or rule.max_gap is None or rule.max_gap <= 0:
                        raise PriorError(
                            f"near_parent rule for {entry.category!r} needs a parent and max_gap"
                        )
                    parent_rank = ranks.get(rule.parent)
                    if parent_rank is not None and parent_rank >= entry.rank:
                        raise PriorError(
                            f"{entry.category!r} must rank after its parent {rule.parent!r}"
                            f" in the {room_type} menu"
                        )


def _parse_rule(raw: dict) -> PlacementRule:
    return PlacementRule(
        rule=raw["rule"], parent=raw.get("parent"), max_gap=raw.get("max_gap")
    )


def load_priors(source) -> PriorTable:
    """Load a prior table from a JSON document (path, file object, or dict)."""
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    elif hasattr(source, "read"):
        doc = json.load(source)
    else:
        doc = source
    try:
        menus = {
            rt: [
                MenuEntry(e["category"], int(e["min"]), int(e["max"]), int(e["rank"]))
                for e in spec["menu"]
            ]
            for rt, spec in doc["rooms"].items()
        }
        placement = {cat: _parse_rule(raw) for cat, raw in doc["placement"].items()}
        orientation = dict(doc["orientation"])
        room_placement = {
            rt: {cat: _parse_rule(raw) for cat, raw in spec.get("placement", {}).items()}
            for rt, spec in doc["rooms"].items()
        }
        room_orientation = {
            rt: dict(spec.get("orientation", {})) for rt, spec in doc["rooms"].items()
        }
    except (KeyError, TypeError, ValueError) as exc:
        raise PriorError(f"malformed prior table: {exc}") from exc
    return PriorTable(menus, placement, orientation, room_placement, room_orientation)


def default_priors_path() -> Path:
    return Path(__file__).parent / "data" / "priors.json"


def load_default_priors() -> PriorTable:
    return load_priors(default_priors_path())


# --------------------------------------------------------------- obstacles


@dataclass(frozen=True)
class _Obstacle:
    corners: tuple
    band: tuple[float, float]
    category: str
    yaw: float
    center: tuple[float, float]


def _obstacle_from_object(obj: SceneObject, catalog: Catalog) -> _Obstacle:
    spec = catalog.spec(obj.spec_id)
    return _Obstacle(
        corners=tuple(oriented_rect_footprint(obj, spec.footprint_dims)),
        band=vertical_interval(spec, obj),
        category=spec.category,
        yaw=obj.yaw,
        center=(obj.position[0], obj.position[2]),
    )


# wireframes only conflict within their own layer (floor vs ceiling)
_WF_FLOOR_BAND = (0.0, 1.0)
_WF_CEILING_BAND = (10.0, 11.0)


def _obstacle_from_wireframe(wf: Wireframe, catalog: Catalog) -> _Obstacle:
    placement = "floor"
    for spec in catalog.query(CatalogFilter(category=wf.label)):
        placement = spec.placement_class
        break
    return _Obstacle(
        corners=tuple(wf.corners()),
        band=_WF_FLOOR_BAND if placement == "floor" else _WF_CEILING_BAND,
        category=wf.label,
        yaw=wf.yaw,
        center=wf.center,
    )


def _conflicts(corners, band, obstacles) -> bool:
    for obs in obstacles:
        if not bands_overlap(band, obs.band):
            continue
        if convex_clip_area(corners, obs.corners) > OVERLAP_TOLERANCE:
            return True
    return False


def _clearance_zones(room: Room, goals_depth: float = 0.6, swing_radius: float = 0.8):
    """Keep-out regions derived from openings: door swings always apply,
    window strips only to objects tall enough to reach the window head."""
    swings = [door_swing_region(room, d, swing_radius) for d in room.doors()]
    strips = [
        (window_strip(room, w, goals_depth), w.head_height) for w in room.windows()
    ]
    return swings, strips


def _blocked_by_openings(corners, band_top, swings, strips) -> bool:
    for swing in swings:
        if convex_clip_area(corners, swing) > OVERLAP_TOLERANCE:
            return True
    for strip, head in strips:
        if band_top >= head - 1e-9 and convex_clip_area(corners, strip) > OVERLAP_TOLERANCE:
            return True
    return False


# ---------------------------------------------------------------- sampling


def yaw_facing(dx: float, dz: float) -> float:
    """Yaw that points the local depth axis (the object's front) along (dx, dz)."""
    return normalize_yaw(math.degrees(math.atan2(-dx, dz)))


def _support(width: float, depth: float, yaw: float, dx: float, dz: float) -> float:
    """Support of a centered oriented rect along a unit direction."""
    best = 0.0
    for lx, lz in ((-width / 2, -depth / 2), (width / 2, -depth / 2),
                   (width / 2, depth / 2), (-width / 2, depth / 2)):
        wx, wz = rotate_xz(lx, lz, yaw)
        s = wx * dx + wz * dz
        if s > best:
            best = s
    return best


def _convex_corners(room: Room):
    pts = room.footprint
    n = len(pts)
    out = []
    for i in range(n):
        px, pz = pts[(i - 1) % n]
        vx, vz = pts[i]
        nx_, nz_ = pts[(i + 1) % n]
        cross = (vx - px) * (nz_ - vz) - (vz - pz) * (nx_ - vx)
        if cross > 1e-9:
            out.append(i)
    return out


def _orient_default(rng, room: Room, cx: float, cz: float) -> float:
    gx, gz = room.centroid
    dx, dz = gx - cx, gz - cz
    if math.hypot(dx, dz) < 0.25:
        return float(rng.choice((0.0, 90.0, 180.0, 270.0)))
    return yaw_facing(dx, dz)


def _wall_free_intervals(room: Room, edge_i: int, w: float, d: float, obstacles, band):
    """Offsets along one wall where a w x d back-to-wall footprint fits.

    Obstacles intruding into the wall band project onto blocked offset
    intervals (bounding-box conservative; the final pose is re-verified by
    the exact checks)."""
    length = room.edge_length(edge_i)
    margin = w / 2 + WALL_GAP
    if length <= 2 * margin:
        return []
    (x0, z0), _ = room.edge(edge_i)
    ex, ez = room.edge_direction(edge_i)
    nx_, nz_ = room.edge_inward_normal(edge_i)
    depth_band = d + 2 * WALL_GAP
    blocked = []
    for obs in obstacles:
        if not bands_overlap(band, obs.band):
            continue
        ts = []
        ss = []
        for cx_, cz_ in obs.corners:
            ts.append((cx_ - x0) * ex + (cz_ - z0) * ez)
            ss.append((cx_ - x0) * nx_ + (cz_ - z0) * nz_)
        if min(ss) < depth_band and max(ss) > -WALL_GAP:
            blocked.append((min(ts) - w / 2, max(ts) + w / 2))
    free = [(margin, length - margin)]
    for b0, b1 in sorted(blocked):
        nxt = []
        for f0, f1 in free:
            if b1 <= f0 or b0 >= f1:
                nxt.append((f0, f1))
                continue
            if b0 > f0:
                nxt.append((f0, b0))
            if b1 < f1:
                nxt.append((b1, f1))
        free = nxt
    return [iv for iv in free if iv[1] - iv[0] > 1e-9]


def _sample_wall(rng, room: Room, w: float, d: float, obstacles, band, orientation: str):
    """Sample a back-to-wall pose uniformly over the free wall intervals."""
    intervals = []
    total = 0.0
    for i in range(len(room.footprint)):
        for t0, t1 in _wall_free_intervals(room, i, w, d, obstacles, band):
            intervals.append((i, t0, t1))
            total += t1 - t0
    if not intervals:
        return None
    pick = rng.uniform(0.0, total)
    acc = 0.0
    for edge_i, t0, t1 in intervals:
        seg = t1 - t0
        if pick <= acc + seg or (edge_i, t0, t1) == intervals[-1]:
            offset = min(t0 + (pick - acc), t1)
            (x0, z0), _ = room.edge(edge_i)
            ex, ez = room.edge_direction(edge_i)
            nx_, nz_ = room.edge_inward_normal(edge_i)
            cx = x0 + ex * offset + nx_ * (d / 2 + WALL_GAP)
            cz = z0 + ez * offset + nz_ * (d / 2 + WALL_GAP)
            if orientation == "face_room_center":
                yaw = _orient_default(rng, room, cx, cz)
                # a rotated footprint reaches past d/2 toward the wall;
                # push the center inward until it clears
                need = _support(w, d, yaw, -nx_, -nz_)
                if need > d / 2:
                    cx += nx_ * (need - d / 2)
                    cz += nz_ * (need - d / 2)
            else:
                yaw = yaw_facing(nx_, nz_)
            return (cx, cz, yaw)
        acc += seg
    return None


def _sample_pose(
    rng: random.Random,
    room: Room,
    dims: tuple[float, float],
    rule: PlacementRule,
    orientation: str,
    parent: _Obstacle | None,
    obstacles,
    band,
    attempt: int,
    max_attempts: int,
) -> tuple[float, float, float] | None:
    """One placement proposal: (cx, cz, yaw), or None when the rule has no
    feasible region left."""
    w, d = dims
    effective = rule.rule
    if effective == "near_parent" and parent is None:
        effective = "against_wall"
    if effective == "corner" and attempt >= max_attempts // 2:
        # corners are scarce; late retries settle for any wall stretch
        effective = "against_wall"

    if effective == "against_wall":
        return _sample_wall(rng, room, w, d, obstacles, band, orientation)

    if effective == "corner":
        corners = _convex_corners(room)
        if not corners:
            return None
        idx = corners[rng.randrange(len(corners))]
        n_edges = len(room.footprint)
        back_on_outgoing = rng.random() < 0.5
        edge_i = idx if back_on_outgoing else (idx - 1) % n_edges
        side_i = (idx - 1) % n_edges if back_on_outgoing else idx
        ex, ez = room.edge_direction(edge_i)
        nx_, nz_ = room.edge_inward_normal(edge_i)
        vx, vz = room.footprint[idx]
        slide = rng.uniform(0.0, 0.2)
        if back_on_outgoing:
            cx = vx + ex * (w / 2 + WALL_GAP + slide) + nx_ * (d / 2 + WALL_GAP)
            cz = vz + ez * (w / 2 + WALL_GAP + slide) + nz_ * (d / 2 + WALL_GAP)
        else:
            cx = vx - ex * (w / 2 + WALL_GAP + slide) + nx_ * (d / 2 + WALL_GAP)
            cz = vz - ez * (w / 2 + WALL_GAP + slide) + nz_ * (d / 2 + WALL_GAP)
        if orientation == "face_room_center":
            yaw = _orient_default(rng, room, cx, cz)
            # clear both walls meeting at the corner for the rotated footprint
            for wall_i in (edge_i, side_i):
                wnx, wnz = room.edge_inward_normal(wall_i)
                need = _support(w, d, yaw, -wnx, -wnz) + WALL_GAP
                have = (cx - vx) * wnx + (cz - vz) * wnz
                if have < need:
                    cx += wnx * (need - have)
                    cz += wnz * (need - have)
        else:
            yaw = yaw_facing(nx_, nz_)
        return (cx, cz, yaw)

    if effective in ("room_center", "ceiling_center"):
        gx, gz = room.centroid
        min_x, min_z, max_x, max_z = room.bbox
        jitter = 0.15 * min(max_x - min_x, max_z - min_z)
        if effective == "ceiling_center":
            jitter = min(jitter, 0.3)
        # widen the net as retries accumulate
        jitter *= 1.0 + attempt / max(1, max_attempts)
        cx = gx + rng.uniform(-jitter, jitter)
        cz = gz + rng.uniform(-jitter, jitter)
        yaw = _orient_default(rng, room, cx, cz)
        return (cx, cz, yaw)

    if effective == "near_parent":
        assert parent is not None and rule.max_gap is not None
        # sample around the parent, skipping the sector straight behind it
        # (for wall-backed parents that sector is inside the wall)
        fx, fz = rotate_xz(0.0, 1.0, parent.yaw)
        theta = math.atan2(fz, fx) + rng.uniform(-2.6, 2.6)
        dx, dz = math.cos(theta), math.sin(theta)
        if orientation == "align_parent":
            yaw = parent.yaw
        else:
            yaw = yaw_facing(-dx, -dz)  # face the parent
        px, pz = parent.center
        parent_support = max((cx_ - px) * dx + (cz_ - pz) * dz for cx_, cz_ in parent.corners)
        own_support = _support(w, d, yaw, dx, dz)
        gap = rng.uniform(0.01, rule.max_gap * 0.8)
        cx = px + dx * (parent_support + own_support + gap)
        cz = pz + dz * (parent_support + own_support + gap)
        return (cx, cz, yaw)

    raise PriorError(f"unknown placement rule {effective!r}")


def _find_parent(obstacles, parent_category: str) -> _Obstacle | None:
    for obs in obstacles:
        if obs.category == parent_category:
            return obs
    return None


def _pick_spec(rng: random.Random, specs, attempt: int, max_attempts: int):
    """Random spec of the category; the last quarter of the retry budget
    settles on the smallest footprint."""
    if attempt >= (3 * max_attempts) // 4:
        return min(specs, key=lambda s: (s.footprint_dims[0] * s.footprint_dims[1], s.spec_id))
    return specs[rng.randrange(len(specs))]


def _try_once(
    rng: random.Random,
    room: Room,
    spec: FurnitureSpec,
    rule: PlacementRule,
    orientation: str,
    obstacles,
    config: GenConfig,
    openings_zones,
    attempt: int,
) -> Pose | None:
    """One placement attempt for a fixed spec; exact checks gate acceptance."""
    w, d = spec.footprint_dims
    if spec.placement_class == "ceiling":
        y = room.ceiling_height - config.lamp_drop - spec.height
        band = (y, y + spec.height)
        rule = PlacementRule(rule="ceiling_center")
    else:
        y = 0.0
        band = (0.0, spec.height)
    parent = _find_parent(obstacles, rule.parent) if rule.rule == "near_parent" else None
    swings, strips = openings_zones
    sample = _sample_pose(
        rng, room, (w, d), rule, orientation, parent, obstacles, band,
        attempt, config.max_retries_per_object,
    )
    if sample is None:
        return None
    cx, cz, yaw = sample
    corners = oriented_rect_corners(cx, cz, w, d, yaw)
    if not room.contains_rect(corners):
        return None
    if _conflicts(corners, band, obstacles):
        return None
    if config.respect_openings and _blocked_by_openings(corners, band[1], swings, strips):
        return None
    return Pose(position=(cx, y, cz), yaw=yaw)


def _propose(
    rng: random.Random,
    room: Room,
    spec: FurnitureSpec,
    rule: PlacementRule,
    orientation: str,
    obstacles,
    config: GenConfig,
    openings_zones,
) -> Pose | None:
    """Rejection-sample a valid pose for a fixed spec, or None after max retries."""
    for attempt in range(config.max_retries_per_object):
        pose = _try_once(
            rng, room, spec, rule, orientation, obstacles, config, openings_zones, attempt
        )
        if pose is not None:
            return pose
    return None


# --------------------------------------------------------------- results


@dataclass(frozen=True)
class GenWarning:
    code: str
    category: str
    message: str


@dataclass(frozen=True)
class GenResult:
    objects: tuple[SceneObject, ...] = ()
    wireframes: tuple[Wireframe, ...] = ()
    warnings: tuple[GenWarning, ...] = ()


def _zones(room: Room, config: GenConfig):
    if not config.respect_openings:
        return ([], [])
    return _clearance_zones(room)


def complete_scene(
    room: Room,
    existing: list[SceneObject],
    catalog: Catalog,
    priors: PriorTable,
    config: GenConfig,
) -> GenResult:
    """Fill the room: walk the menu by priority rank, sampling a count for
    each category and placing what the existing scene does not already
    satisfy.  Categories that cannot be placed within the retry budget
    produce warnings, never partial-object junk."""
    rng = random.Random(config.seed)
    menu = priors.menu(room.room_type)
    obstacles = [_obstacle_from_object(o, catalog) for o in existing]
    counts: dict[str, int] = {}
    for obs in obstacles:
        counts[obs.category] = counts.get(obs.category, 0) + 1
    taken_ids = {o.instance_id for o in existing}
    placed: list[SceneObject] = []
    warnings: list[GenWarning] = []
    zones = _zones(room, config)

    for entry in menu:
        target = rng.randint(entry.min_count, entry.max_count)
        have = counts.get(entry.category, 0)
        # counts up to min_count are obligations; anything beyond is
        # opportunistic and dropped silently when the room is full
        need = max(0, entry.min_count - have)
        wanted = max(0, target - have)
        for k in range(wanted):
            specs = catalog.query(CatalogFilter(category=entry.category))
            if not specs:
                warnings.append(
                    GenWarning("no_spec", entry.category, f"no catalog items of {entry.category}")
                )
                break
            rule = priors.placement(room.room_type, entry.category)
            orientation = priors.orientation(room.room_type, entry.category)
            # the retry budget spans spec choices: a smaller sibling may fit
            # where the first pick did not, and the last quarter of the
            # budget goes to the smallest footprint outright
            found = None
            for attempt in range(config.max_retries_per_object):
                spec = _pick_spec(rng, specs, attempt, config.max_retries_per_object)
                pose = _try_once(
                    rng, room, spec, rule, orientation, obstacles, config, zones, attempt
                )
                if pose is not None:
                    found = (spec, pose)
                    break
            if found is None:
                if k < need:
                    warnings.append(
                        GenWarning(
                            "placement_exhausted",
                            entry.category,
                            f"no valid placement for a {entry.category} after "
                            f"{config.max_retries_per_object} attempts",
                        )
                    )
                break
            spec, pose = found
            instance_id = fresh_id(entry.category, taken_ids)
            taken_ids.add(instance_id)
            obj = SceneObject(
                instance_id=instance_id,
                spec_id=spec.spec_id,
                position=pose.position,
                yaw=pose.yaw,
                scale=1.0,
            )
            placed.append(obj)
            obstacles.append(_obstacle_from_object(obj, catalog))
            counts[entry.category] = counts.get(entry.category, 0) + 1
    return GenResult(objects=tuple(placed), warnings=tuple(warnings))


@dataclass(frozen=True)
class Suggestion:
    spec: FurnitureSpec
    pose: Pose
    clearance: float


def suggest_objects(
    room: Room,
    existing: list[SceneObject],
    catalog: Catalog,
    priors: PriorTable,
    location: tuple[float, float],
    flt: CatalogFilter,
    config: GenConfig,
) -> list[Suggestion]:
    """Top candidates that fit at a pointed location, ranked by free
    clearance margin (ties break on spec_id)."""
    x, z = location
    if not room.contains_point(x, z):
        raise OutOfBounds("the pointed location is outside the room", location=list(location))
    specs = catalog.query(flt)
    if not specs:
        raise NoCandidates("nothing in the catalog matches", filter=flt.describe())
    obstacles = [_obstacle_from_object(o, catalog) for o in existing]
    swings, strips = _zones(room, config)
    scored: list[Suggestion] = []
    for spec in specs:
        if spec.placement_class == "ceiling":
            y = room.ceiling_height - config.lamp_drop - spec.height
            band = (y, y + spec.height)
        else:
            y = 0.0
            band = (0.0, spec.height)
        gx, gz = room.centroid
        dx, dz = gx - x, gz - z
        yaw = 0.0 if math.hypot(dx, dz) < 0.25 else yaw_facing(dx, dz)
        corners = oriented_rect_corners(x, z, *spec.footprint_dims, yaw)
        if not room.contains_rect(corners):
            continue
        if _conflicts(corners, band, obstacles):
            continue
        if config.respect_openings and _blocked_by_openings(corners, band[1], swings, strips):
            continue
        clearance = poly_boundary_distance(corners, room.footprint)
        for obs in obstacles:
            if not bands_overlap(band, obs.band):
                continue
            dist = poly_min_distance(corners, obs.corners)
            if dist < clearance:
                clearance = dist
        scored.append(Suggestion(spec=spec, pose=Pose((x, y, z), yaw), clearance=clearance))
    if not scored:
        raise NoCandidates("nothing fits here", filter=flt.describe(), location=list(location))
    scored.sort(key=lambda s: (-s.clearance, s.spec.spec_id))
    return scored[: config.suggestion_count]


def suggest_placement(
    room: Room,
    existing: list[SceneObject],
    catalog: Catalog,
    priors: PriorTable,
    spec: FurnitureSpec,
    config: GenConfig,
) -> Pose:
    """Suggest a pose for one given item, honoring its placement rule."""
    rng = random.Random(config.seed)
    obstacles = [_obstacle_from_object(o, catalog) for o in existing]
    rule = priors.placement(room.room_type, spec.category)
    orientation = priors.orientation(room.room_type, spec.category)
    pose = _propose(rng, room, spec, rule, orientation, obstacles, config, _zones(room, config))
    if pose is None:
        raise PlacementExhausted(
            f"no valid placement for {spec.spec_id} after "
            f"{config.max_retries_per_object} attempts",
            category=spec.category,
        )
    return pose


def generate_wireframes(
    room: Room,
    existing_wireframes: list[Wireframe],
    catalog: Catalog,
    priors: PriorTable,
    config: GenConfig,
) -> GenResult:
    """Scaffold pass: the completion pipeline emitting labeled rectangles
    (category plus the sampled spec's footprint) instead of objects.
    Existing wireframes act as obstacles and count against the menu."""
    rng = random.Random(config.seed)
    menu = priors.menu(room.room_type)
    obstacles = [_obstacle_from_wireframe(wf, catalog) for wf in existing_wireframes]
    counts: dict[str, int] = {}
    for obs in obstacles:
        counts[obs.category] = counts.get(obs.category, 0) + 1
    taken_ids = {wf.wf_id for wf in existing_wireframes}
    created: list[Wireframe] = []
    warnings: list[GenWarning] = []
    zones = _zones(room, config)

    for entry in menu:
        target = rng.randint(entry.min_count, entry.max_count)
        have = counts.get(entry.category, 0)
        need = max(0, entry.min_count - have)
        wanted = max(0, target - have)
        for k in range(wanted):
            specs = catalog.query(CatalogFilter(category=entry.category))
            if not specs:
                warnings.append(
                    GenWarning("no_spec", entry.category, f"no catalog items of {entry.category}")
                )
                break
            rule = priors.placement(room.room_type, entry.category)
            orientation = priors.orientation(room.room_type, entry.category)
            found = None
            for attempt in range(config.max_retries_per_object):
                spec = _pick_spec(rng, specs, attempt, config.max_retries_per_object)
                pose = _try_once(
                    rng, room, spec, rule, orientation, obstacles, config, zones, attempt
                )
                if pose is not None:
                    found = (spec, pose)
                    break
            if found is None:
                if k < need:
                    warnings.append(
                        GenWarning(
                            "placement_exhausted",
                            entry.category,
                            f"no room for a {entry.category} wireframe after "
                            f"{config.max_retries_per_object} attempts",
                        )
                    )
                break
            spec, pose = found
            wf_id = fresh_id("wf", taken_ids)
            taken_ids.add(wf_id)
            wf = Wireframe(
                wf_id=wf_id,
                center=(pose.position[0], pose.position[2]),
                width=spec.footprint_dims[0],
                depth=spec.footprint_dims[1],
                yaw=pose.yaw,
                label=spec.category,
                origin="generated",
            )
            created.append(wf)
            obstacles.append(_obstacle_from_wireframe(wf, catalog))
            counts[entry.category] = counts.get(entry.category, 0) + 1
    return GenResult(wireframes=tuple(created), warnings=tuple(warnings))


def _fit_factor(wf_w: float, wf_d: float, w: float, d: float) -> float:
    """Uniform scale minimizing |W - s*w| + |D - s*d|; the optimum sits on a
    breakpoint, ties prefer the smaller factor."""
    candidates = sorted({wf_w / w, wf_d / d})
    best = candidates[0]
    best_obj = abs(wf_w - best * w) + abs(wf_d - best * d)
    for s in candidates[1:]:
        obj = abs(wf_w - s * w) + abs(wf_d - s * d)
        if obj < best_obj - 1e-12:
            best, best_obj = s, obj
    return best


def populate_wireframes(
    room: Room,
    wireframes: list[Wireframe],
    catalog: Catalog,
    config: GenConfig,
    existing_ids=(),
) -> GenResult:
    """Turn each wireframe into the catalog item of its label whose footprint
    is closest in L1 dims distance (90-degree transposition allowed), scaled
    within the clamp.  Overlaps inherited from overlapping wireframes are
    reported as warnings, not errors."""
    taken_ids = set(existing_ids)
    objects: list[SceneObject] = []
    warnings: list[GenWarning] = []
    for wf in wireframes:
        try:
            specs = catalog.query(CatalogFilter(category=wf.label))
        except UnknownAttribute:
            raise NoSpecForLabel(
                f"label {wf.label!r} is not a catalog category", label=wf.label
            ) from None
        if not specs:
            raise NoSpecForLabel(f"no catalog items labeled {wf.label!r}", label=wf.label)
        best = None
        for spec in specs:
            w, d = spec.footprint_dims
            for transposed, (cw, cd) in ((False, (w, d)), (True, (d, w))):
                dist = abs(wf.width - cw) + abs(wf.depth - cd)
                key = (dist, spec.spec_id, transposed)
                if best is None or key < best[0]:
                    best = (key, spec, transposed, cw, cd)
        assert best is not None
        _, spec, transposed, cw, cd = best
        scale = _fit_factor(wf.width, wf.depth, cw, cd)
        lo, hi = config.scale_clamp
        scale = min(hi, max(lo, scale))
        yaw = normalize_yaw(wf.yaw + (90.0 if transposed else 0.0))
        if spec.placement_class == "ceiling":
            y = room.ceiling_height - config.lamp_drop - spec.height * scale
        else:
            y = 0.0
        instance_id = fresh_id(spec.category, taken_ids)
        taken_ids.add(instance_id)
        obj = SceneObject(
            instance_id=instance_id,
            spec_id=spec.spec_id,
            position=(wf.center[0], y, wf.center[1]),
            yaw=yaw,
            scale=scale,
        )
        objects.append(obj)
        if not room.contains_rect(oriented_rect_footprint(obj, spec.footprint_dims)):
            warnings.append(
                GenWarning(
                    "out_of_bounds",
                    spec.category,
                    f"{instance_id} pokes outside the room after scaling",
                )
            )
    # overlaps inherited from wireframes drawn on top of each other
    for i in range(len(objects)):
        spec_i = catalog.spec(objects[i].spec_id)
        fp_i = oriented_rect_footprint(objects[i], spec_i.footprint_dims)
        band_i = vertical_interval(spec_i, objects[i])
        for j in range(i + 1, len(objects)):
            spec_j = catalog.spec(objects[j].spec_id)
            if not bands_overlap(band_i, vertical_interval(spec_j, objects[j])):
                continue
            fp_j = oriented_rect_footprint(objects[j], spec_j.footprint_dims)
            if convex_clip_area(fp_i, fp_j) > OVERLAP_TOLERANCE:
                warnings.append(
                    GenWarning(
                        "overlap_after_populate",
                        spec_i.category,
                        f"{objects[i].instance_id} overlaps {objects[j].instance_id}",
                    )
                )
    return GenResult(objects=tuple(objects), warnings=tuple(warnings))


def abstract_scene(
    objects: list[SceneObject], catalog: Catalog, existing_ids=()
) -> list[Wireframe]:
    """Collapse placed furniture back into labeled wireframes."""
    taken_ids = set(existing_ids)
    out: list[Wireframe] = []
    for obj in objects:
        spec = catalog.spec(obj.spec_id)
        wf_id = fresh_id("wf", taken_ids)
        taken_ids.add(wf_id)
        out.append(
            Wireframe(
                wf_id=wf_id,
                center=(obj.position[0], obj.position[2]),
                width=spec.footprint_dims[0] * obj.scale,
                depth=spec.footprint_dims[1] * obj.scale,
                yaw=obj.yaw,
                label=spec.category,
                origin="generated",
            )
        )
    return out
