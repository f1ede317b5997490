"""Computable layout-quality checks.

Operationalizes the qualitative review criteria for furnished rooms:
geometric sanity (overlap, bounds), functional diversity (distinct furniture
types, seating), daylighting (tall furniture clear of window fronts), and
circulation (grid navigability between doors, swing clearance at doors).
The checker reports; it never raises on structurally valid input.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

from .catalog import SEATING_CATEGORIES, Catalog
from .geom import convex_clip_area, point_in_polygon
from .scene import OVERLAP_TOLERANCE, Opening, Room, SceneObject, oriented_rect_footprint

CHECK_IDS = (
    "overlap",
    "bounds",
    "furniture_types",
    "seating",
    "window_top",
    "navigability",
    "door_clearance",
)


@dataclass(frozen=True)
class DesignGoals:
    """Tunable thresholds behind the quality checks."""

    min_furniture_types: int = 4
    require_seating: bool = True
    window_top_clear: bool = True
    navigable: bool = True
    tall_threshold: float | None = None  # None: each window's own head height
    window_strip_depth: float = 0.6
    door_swing_radius: float = 0.8
    grid_resolution: float = 0.1
    connectivity_fraction: float = 0.6

    def __post_init__(self):
        if self.min_furniture_types < 0:
            raise ValueError("min_furniture_types must be non-negative")


@dataclass(frozen=True)
class Violation:
    kind: str
    ids: tuple[str, ...]
    detail: str = ""


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    passed: bool
    details: tuple[str, ...] = ()


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[CheckResult, ...]
    violations: tuple[Violation, ...]

    @property
    def score(self) -> int:
        return sum(1 for c in self.checks if c.passed)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, check_id: str) -> CheckResult:
        for c in self.checks:
            if c.check_id == check_id:
                return c
        raise KeyError(check_id)


def vertical_interval(spec, obj: SceneObject) -> tuple[float, float]:
    """Occupied height band of a placed object."""
    h = spec.height * obj.scale
    y = obj.position[1]
    return (y, y + h)


def bands_overlap(a: tuple[float, float], b: tuple[float, float]) -> bool:
    return a[0] < b[1] - 1e-9 and b[0] < a[1] - 1e-9


def window_strip(room: Room, window: Opening, depth: float):
    """Rectangle covering the floor directly in front of a window span."""
    (x0, z0), (x1, z1) = room.opening_span(window)
    nx, nz = room.edge_inward_normal(window.edge_index)
    return [
        (x0, z0),
        (x1, z1),
        (x1 + nx * depth, z1 + nz * depth),
        (x0 + nx * depth, z0 + nz * depth),
    ]


def door_swing_region(room: Room, door: Opening, radius: float, arc_steps: int = 9):
    """Quarter-disc a door sweeps when opening into the room (hinge at the
    offset end of the span), polygonized as a convex fan."""
    (hx, hz), (px, pz) = room.opening_span(door)
    span = math.hypot(px - hx, pz - hz)
    dx, dz = (px - hx) / span, (pz - hz) / span
    nx, nz = room.edge_inward_normal(door.edge_index)
    pts = [(hx, hz)]
    for k in range(arc_steps + 1):
        t = (math.pi / 2) * k / arc_steps
        ux = math.cos(t) * dx + math.sin(t) * nx
        uz = math.cos(t) * dz + math.sin(t) * nz
        pts.append((hx + radius * ux, hz + radius * uz))
    return pts


@dataclass
class _Grid:
    res: float
    min_x: float
    min_z: float
    nx: int
    nz: int
    free: list[list[bool]] = field(repr=False, default_factory=list)

    def center(self, i: int, j: int) -> tuple[float, float]:
        return (self.min_x + (i + 0.5) * self.res, self.min_z + (j + 0.5) * self.res)

    def cells_in_quad(self, quad):
        xs = [p[0] for p in quad]
        zs = [p[1] for p in quad]
        i0 = max(0, int((min(xs) - self.min_x) / self.res))
        i1 = min(self.nx - 1, int((max(xs) - self.min_x) / self.res))
        j0 = max(0, int((min(zs) - self.min_z) / self.res))
        j1 = min(self.nz - 1, int((max(zs) - self.min_z) / self.res))
        for i in range(i0, i1 + 1):
            for j in range(j0, j1 + 1):
                cx, cz = self.center(i, j)
                if point_in_polygon(cx, cz, quad):
                    yield (i, j)


def build_occupancy_grid(room: Room, footprints, res: float) -> _Grid:
    """Free-floor grid: a cell is free when its center lies in the room and
    outside every floor-level footprint."""
    min_x, min_z, max_x, max_z = room.bbox
    nx = max(1, math.ceil((max_x - min_x) / res))
    nz = max(1, math.ceil((max_z - min_z) / res))
    grid = _Grid(res=res, min_x=min_x, min_z=min_z, nx=nx, nz=nz)
    grid.free = [
        [room.contains_point(*grid.center(i, j)) for j in range(nz)] for i in range(nx)
    ]
    for quad in footprints:
        for i, j in grid.cells_in_quad(quad):
            grid.free[i][j] = False
    return grid


def flood_reachable(grid: _Grid, seeds) -> set[tuple[int, int]]:
    """4-connected flood fill over free cells from seed cells."""
    seen: set[tuple[int, int]] = set()
    queue = deque()
    for i, j in seeds:
        if 0 <= i < grid.nx and 0 <= j < grid.nz and grid.free[i][j] and (i, j) not in seen:
            seen.add((i, j))
            queue.append((i, j))
    while queue:
        i, j = queue.popleft()
        for di, dj in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            ni, nj = i + di, j + dj
            if 0 <= ni < grid.nx and 0 <= nj < grid.nz and grid.free[ni][nj] and (ni, nj) not in seen:
                seen.add((ni, nj))
                queue.append((ni, nj))
    return seen


def _door_cell_groups(room: Room, grid: _Grid) -> list[list[tuple[int, int]]]:
    groups = []
    for door in room.doors():
        (x0, z0), (x1, z1) = room.opening_span(door)
        nx, nz = room.edge_inward_normal(door.edge_index)
        depth = 2.0 * grid.res
        quad = [
            (x0, z0),
            (x1, z1),
            (x1 + nx * depth, z1 + nz * depth),
            (x0 + nx * depth, z0 + nz * depth),
        ]
        groups.append([c for c in grid.cells_in_quad(quad) if grid.free[c[0]][c[1]]])
    return groups


def validate_layout(
    room: Room,
    objects: list[SceneObject],
    catalog: Catalog,
    goals: DesignGoals | None = None,
) -> ValidationReport:
    """Run every quality check and return the full report."""
    goals = goals or DesignGoals()
    checks: list[CheckResult] = []
    violations: list[Violation] = []

    specs = {o.instance_id: catalog.spec(o.spec_id) for o in objects}
    footprints = {
        o.instance_id: oriented_rect_footprint(o, specs[o.instance_id].footprint_dims)
        for o in objects
    }
    bands = {o.instance_id: vertical_interval(specs[o.instance_id], o) for o in objects}

    # (a) pairwise overlap among objects sharing a height band
    overlap_details = []
    for i in range(len(objects)):
        for j in range(i + 1, len(objects)):
            a, b = objects[i], objects[j]
            if not bands_overlap(bands[a.instance_id], bands[b.instance_id]):
                continue
            area = convex_clip_area(footprints[a.instance_id], footprints[b.instance_id])
            if area > OVERLAP_TOLERANCE:
                violations.append(
                    Violation(
                        kind="overlap",
                        ids=(a.instance_id, b.instance_id),
                        detail=f"footprints share {area:.4f} m^2",
                    )
                )
                overlap_details.append(f"{a.instance_id} overlaps {b.instance_id}")
    checks.append(CheckResult("overlap", not overlap_details, tuple(overlap_details)))

    # (b) room bounds
    bounds_details = []
    for o in objects:
        if not room.contains_rect(footprints[o.instance_id]):
            violations.append(
                Violation(kind="out_of_bounds", ids=(o.instance_id,), detail="outside the room")
            )
            bounds_details.append(f"{o.instance_id} leaves the room footprint")
    checks.append(CheckResult("bounds", not bounds_details, tuple(bounds_details)))

    # (c) functional diversity
    categories = {specs[o.instance_id].category for o in objects}
    ok = len(categories) >= goals.min_furniture_types
    checks.append(
        CheckResult(
            "furniture_types",
            ok,
            () if ok else (f"{len(categories)} distinct types, need {goals.min_furniture_types}",),
        )
    )

    # (d) seating
    if goals.require_seating:
        has_seat = any(specs[o.instance_id].category in SEATING_CATEGORIES for o in objects)
        checks.append(
            CheckResult("seating", has_seat, () if has_seat else ("no seating furniture",))
        )
    else:
        checks.append(CheckResult("seating", True, ("disabled",)))

    # (e) window tops stay clear of tall furniture
    if goals.window_top_clear:
        window_details = []
        for w_idx, window in enumerate(room.windows()):
            strip = window_strip(room, window, goals.window_strip_depth)
            threshold = (
                goals.tall_threshold if goals.tall_threshold is not None else window.head_height
            )
            for o in objects:
                top = bands[o.instance_id][1]
                if top >= threshold - 1e-9 and convex_clip_area(
                    footprints[o.instance_id], strip
                ) > OVERLAP_TOLERANCE:
                    violations.append(
                        Violation(
                            kind="window_blocked",
                            ids=(o.instance_id,),
                            detail=f"window {w_idx} front blocked (top {top:.2f} m)",
                        )
                    )
                    window_details.append(f"{o.instance_id} blocks window {w_idx}")
        checks.append(CheckResult("window_top", not window_details, tuple(window_details)))
    else:
        checks.append(CheckResult("window_top", True, ("disabled",)))

    # (f) navigability over the free-floor grid
    if goals.navigable:
        floor_fps = [
            footprints[o.instance_id]
            for o in objects
            if specs[o.instance_id].placement_class == "floor"
        ]
        grid = build_occupancy_grid(room, floor_fps, goals.grid_resolution)
        free_count = sum(row.count(True) for row in grid.free)
        nav_details = []
        if free_count == 0:
            nav_details.append("no free floor cells")
        else:
            groups = _door_cell_groups(room, grid)
            for d_idx, group in enumerate(groups):
                if not group:
                    nav_details.append(f"door {d_idx} has no free cells in front of it")
            live_groups = [g for g in groups if g]
            seeds = live_groups[0] if live_groups else _largest_component_seed(grid)
            reached = flood_reachable(grid, seeds)
            for d_idx, group in enumerate(groups):
                if group and not any(c in reached for c in group):
                    nav_details.append(f"door {d_idx} is cut off")
            fraction = len(reached) / free_count
            if fraction < goals.connectivity_fraction:
                nav_details.append(
                    f"only {fraction:.0%} of free floor reachable, "
                    f"need {goals.connectivity_fraction:.0%}"
                )
        checks.append(CheckResult("navigability", not nav_details, tuple(nav_details)))
    else:
        checks.append(CheckResult("navigability", True, ("disabled",)))

    # (g) door swing clearance
    door_details = []
    for d_idx, door in enumerate(room.doors()):
        swing = door_swing_region(room, door, goals.door_swing_radius)
        for o in objects:
            if specs[o.instance_id].placement_class != "floor":
                continue
            if convex_clip_area(footprints[o.instance_id], swing) > OVERLAP_TOLERANCE:
                violations.append(
                    Violation(
                        kind="door_blocked",
                        ids=(o.instance_id,),
                        detail=f"inside the swing region of door {d_idx}",
                    )
                )
                door_details.append(f"{o.instance_id} blocks door {d_idx}")
    checks.append(CheckResult("door_clearance", not door_details, tuple(door_details)))

    return ValidationReport(checks=tuple(checks), violations=tuple(violations))


def _largest_component_seed(grid: _Grid):
    """Fallback seed for door-less rooms: one cell of the largest free region."""
    best: set[tuple[int, int]] = set()
    seen: set[tuple[int, int]] = set()
    for i in range(grid.nx):
        for j in range(grid.nz):
            if grid.free[i][j] and (i, j) not in seen:
                comp = flood_reachable(grid, [(i, j)])
                seen |= comp
                if len(comp) > len(best):
                    best = comp
    return [next(iter(best))] if best else []
