"""Rooms, placed objects, and wireframes: the structural scene model.

All values are immutable after construction; mutation happens by replacing
instances inside a workspace.  Lengths are meters, the floor plane is
(x, z), and y points up.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import SceneInvariantError
from .geom import (
    point_in_polygon,
    polygon_area,
    rect_in_polygon,
)
from .geom.shapes import (
    is_simple_polygon,
    normalize_yaw,
    oriented_rect_corners,
    polygon_bbox,
    polygon_centroid,
)

ROOM_TYPES = ("bedroom", "living_room", "dining_room", "library")
OPENING_KINDS = ("door", "window")

# Two footprints count as overlapping only above this clipped area, which
# absorbs floating-point noise from the clipping kernels (1 cm^2).
OVERLAP_TOLERANCE = 1e-4


@dataclass(frozen=True)
class Opening:
    """A door or window cut into one footprint edge."""

    kind: str
    edge_index: int
    offset: float
    width: float
    sill_height: float = 0.0
    head_height: float = 2.0

    def __post_init__(self):
        if self.kind not in OPENING_KINDS:
            raise SceneInvariantError(f"unknown opening kind {self.kind!r}")
        if self.width <= 0:
            raise SceneInvariantError("opening width must be positive")
        if self.offset < 0:
            raise SceneInvariantError("opening offset must be non-negative")
        if self.sill_height < 0:
            raise SceneInvariantError("sill height must be non-negative")
        if self.head_height <= self.sill_height:
            raise SceneInvariantError("head height must exceed sill height")
        if self.kind == "door" and self.sill_height != 0.0:
            raise SceneInvariantError("doors must sit on the floor")


@dataclass(frozen=True)
class Room:
    """A simple-polygon room with wall openings."""

    id: str
    room_type: str
    footprint: tuple[tuple[float, float], ...]
    ceiling_height: float
    openings: tuple[Opening, ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "footprint", tuple((float(x), float(z)) for x, z in self.footprint)
        )
        object.__setattr__(self, "openings", tuple(self.openings))
        if self.room_type not in ROOM_TYPES:
            raise SceneInvariantError(f"unknown room type {self.room_type!r}")
        if len(self.footprint) < 3 or not is_simple_polygon(self.footprint):
            raise SceneInvariantError("footprint must be a simple polygon")
        if polygon_area(self.footprint) <= 0:
            raise SceneInvariantError("footprint must be counter-clockwise with positive area")
        if self.ceiling_height <= 0:
            raise SceneInvariantError("ceiling height must be positive")
        for op in self.openings:
            if not 0 <= op.edge_index < len(self.footprint):
                raise SceneInvariantError(f"opening edge index {op.edge_index} out of range")
            if op.offset + op.width > self.edge_length(op.edge_index) + 1e-9:
                raise SceneInvariantError("opening extends past its wall edge")
            if op.head_height > self.ceiling_height + 1e-9:
                raise SceneInvariantError("opening head exceeds ceiling height")

    def edge(self, i: int) -> tuple[tuple[float, float], tuple[float, float]]:
        pts = self.footprint
        return pts[i], pts[(i + 1) % len(pts)]

    def edge_length(self, i: int) -> float:
        (x0, z0), (x1, z1) = self.edge(i)
        return math.hypot(x1 - x0, z1 - z0)

    def edge_direction(self, i: int) -> tuple[float, float]:
        (x0, z0), (x1, z1) = self.edge(i)
        length = math.hypot(x1 - x0, z1 - z0)
        return ((x1 - x0) / length, (z1 - z0) / length)

    def edge_inward_normal(self, i: int) -> tuple[float, float]:
        # interior lies to the left of each CCW-directed edge
        dx, dz = self.edge_direction(i)
        return (-dz, dx)

    def opening_span(self, op: Opening) -> tuple[tuple[float, float], tuple[float, float]]:
        """World endpoints of the opening along its wall edge."""
        (x0, z0), _ = self.edge(op.edge_index)
        dx, dz = self.edge_direction(op.edge_index)
        p0 = (x0 + dx * op.offset, z0 + dz * op.offset)
        p1 = (x0 + dx * (op.offset + op.width), z0 + dz * (op.offset + op.width))
        return p0, p1

    def doors(self) -> list[Opening]:
        return [op for op in self.openings if op.kind == "door"]

    def windows(self) -> list[Opening]:
        return [op for op in self.openings if op.kind == "window"]

    @property
    def centroid(self) -> tuple[float, float]:
        return polygon_centroid(self.footprint)

    @property
    def bbox(self) -> tuple[float, float, float, float]:
        return polygon_bbox(self.footprint)

    @property
    def area(self) -> float:
        return polygon_area(self.footprint)

    def contains_point(self, x: float, z: float) -> bool:
        return point_in_polygon(x, z, self.footprint)

    def contains_rect(self, rect) -> bool:
        """True iff all rect corners are inside-or-on the footprint and no
        rect edge crosses a wall (catches notch violations in L-shapes)."""
        return rect_in_polygon(rect, self.footprint)


@dataclass(frozen=True)
class SceneObject:
    """A placed furniture instance referencing a catalog entry."""

    instance_id: str
    spec_id: str
    position: tuple[float, float, float]
    yaw: float
    scale: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "position", tuple(float(v) for v in self.position))
        object.__setattr__(self, "yaw", normalize_yaw(float(self.yaw)))
        if self.scale <= 0:
            raise SceneInvariantError("scale must be positive")
        if len(self.position) != 3:
            raise SceneInvariantError("position must be (x, y, z)")

    def moved_to(self, x: float, z: float) -> "SceneObject":
        return replace(self, position=(x, self.position[1], z))


def oriented_rect_footprint(obj: SceneObject, spec_dims: tuple[float, float]):
    """Floor footprint corners of an object: spec dims scaled, rotated by
    yaw, translated to (x, z)."""
    w, d = spec_dims
    return oriented_rect_corners(
        obj.position[0],
        obj.position[2],
        w * obj.scale,
        d * obj.scale,
        obj.yaw,
    )


@dataclass(frozen=True)
class Wireframe:
    """A labeled oriented rectangle on the floor: the low-fidelity stand-in
    for one furniture item."""

    wf_id: str
    center: tuple[float, float]
    width: float
    depth: float
    yaw: float
    label: str
    origin: str = "user_drawn"
    hidden: bool = False

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(float(v) for v in self.center))
        object.__setattr__(self, "yaw", normalize_yaw(float(self.yaw)))
        if self.width <= 0 or self.depth <= 0:
            raise SceneInvariantError("wireframe dims must be positive")
        if self.origin not in ("user_drawn", "generated"):
            raise SceneInvariantError(f"unknown wireframe origin {self.origin!r}")

    def corners(self):
        return oriented_rect_corners(
            self.center[0], self.center[1], self.width, self.depth, self.yaw
        )


@dataclass(frozen=True)
class Pose:
    """Placement result: position, yaw, uniform scale."""

    position: tuple[float, float, float]
    yaw: float
    scale: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "position", tuple(float(v) for v in self.position))
        object.__setattr__(self, "yaw", normalize_yaw(float(self.yaw)))


def fresh_id(prefix: str, existing) -> str:
    """Deterministic unique id: smallest unused ordinal for the prefix."""
    taken = set(existing)
    n = 1
    while f"{prefix}#{n}" in taken:
        n += 1
    return f"{prefix}#{n}"


__all__ = [
    "OPENING_KINDS",
    "OVERLAP_TOLERANCE",
    "Opening",
    "Pose",
    "ROOM_TYPES",
    "Room",
    "SceneObject",
    "Wireframe",
    "fresh_id",
    "oriented_rect_footprint",
]
