"""Oriented rectangles, convex hulls, and stroke normalization.

Angle convention: yaw is in degrees, counter-clockwise on the (x, z) floor
plane, where the local width axis maps to world x at yaw 0 and the local
depth axis to world z.  An oriented rectangle is invariant under swapping
width/depth while turning 90 degrees; ``canonical_rect`` gives the unique
representative used by tests and the stroke normalizer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import DegenerateStroke
from . import EPS


def normalize_yaw(yaw: float) -> float:
    """Wrap a yaw angle into [0, 360)."""
    yaw = math.fmod(yaw, 360.0)
    if yaw < 0.0:
        yaw += 360.0
    return yaw


def rotate_xz(x: float, z: float, yaw_deg: float) -> tuple[float, float]:
    """Rotate a floor vector counter-clockwise by ``yaw_deg``."""
    rad = math.radians(yaw_deg)
    c = math.cos(rad)
    s = math.sin(rad)
    return (c * x - s * z, s * x + c * z)


def oriented_rect_corners(
    cx: float, cz: float, width: float, depth: float, yaw_deg: float
) -> list[tuple[float, float]]:
    """Corners of an oriented rectangle, counter-clockwise."""
    hw = 0.5 * width
    hd = 0.5 * depth
    corners = []
    for lx, lz in ((-hw, -hd), (hw, -hd), (hw, hd), (-hw, hd)):
        wx, wz = rotate_xz(lx, lz, yaw_deg)
        corners.append((cx + wx, cz + wz))
    return corners


def convex_hull(points) -> list[tuple[float, float]]:
    """Andrew monotone chain; returns a strictly convex CCW hull."""
    pts = sorted(set((float(x), float(z)) for x, z in points))
    if len(pts) < 3:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list[tuple[float, float]] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= EPS:
            lower.pop()
        lower.append(p)
    upper: list[tuple[float, float]] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= EPS:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


@dataclass(frozen=True)
class BoundingRect:
    """Oriented rectangle summary of a point set."""

    center: tuple[float, float]
    width: float
    depth: float
    yaw: float

    def corners(self) -> list[tuple[float, float]]:
        return oriented_rect_corners(
            self.center[0], self.center[1], self.width, self.depth, self.yaw
        )


def min_area_bounding_rect(points) -> BoundingRect:
    """Minimum-area oriented rectangle over a point set (rotating calipers).

    Raises DegenerateStroke for fewer than 3 points or collinear input; the
    caller decides the fallback (the service substitutes a 0.5 m square at
    the stroke centroid).  Yaw is normalized to [0, 90) by swapping the
    width/depth roles when needed, so equal-area solutions at angles 90
    degrees apart collapse to one canonical answer.
    """
    hull = convex_hull(points)
    if len(hull) < 3:
        raise DegenerateStroke(
            "stroke is collinear or has fewer than 3 distinct points",
            point_count=len(hull),
        )
    best_area = math.inf
    best = None
    n = len(hull)
    for i in range(n):
        x0, z0 = hull[i]
        x1, z1 = hull[(i + 1) % n]
        theta = math.atan2(z1 - z0, x1 - x0)
        c = math.cos(theta)
        s = math.sin(theta)
        umin = umax = hull[0][0] * c + hull[0][1] * s
        vmin = vmax = -hull[0][0] * s + hull[0][1] * c
        for px, pz in hull[1:]:
            u = px * c + pz * s
            v = -px * s + pz * c
            if u < umin:
                umin = u
            elif u > umax:
                umax = u
            if v < vmin:
                vmin = v
            elif v > vmax:
                vmax = v
        area = (umax - umin) * (vmax - vmin)
        if area < best_area - 1e-12:
            best_area = area
            best = (theta, umin, umax, vmin, vmax)
    assert best is not None
    theta, umin, umax, vmin, vmax = best
    uc = 0.5 * (umin + umax)
    vc = 0.5 * (vmin + vmax)
    cx = uc * math.cos(theta) - vc * math.sin(theta)
    cz = uc * math.sin(theta) + vc * math.cos(theta)
    width = umax - umin
    depth = vmax - vmin
    yaw = math.degrees(theta) % 180.0
    if yaw >= 90.0:
        width, depth = depth, width
        yaw -= 90.0
    return BoundingRect(center=(cx, cz), width=width, depth=depth, yaw=yaw)


def canonical_rect(width: float, depth: float, yaw: float) -> tuple[float, float, float]:
    """Canonical (width, depth, yaw) for oriented-rectangle equality.

    Folds the two symmetries: 180-degree rotation, and the width/depth swap
    at 90 degrees.  Squares additionally collapse yaw modulo 90.
    """
    yaw = yaw % 180.0
    if yaw >= 90.0:
        width, depth = depth, width
        yaw -= 90.0
    if abs(width - depth) <= 1e-9:
        yaw = yaw % 90.0
    return (width, depth, yaw)


def rects_equivalent(
    a: tuple[float, float, float],
    b: tuple[float, float, float],
    dim_tol: float = 1e-9,
    yaw_tol: float = 1e-6,
) -> bool:
    """Compare two (width, depth, yaw) triples up to rectangle symmetry."""
    wa, da, ya = canonical_rect(*a)
    wb, db, yb = canonical_rect(*b)
    if abs(wa - wb) > dim_tol or abs(da - db) > dim_tol:
        return False
    dyaw = abs(ya - yb)
    period = 90.0 if abs(wa - da) <= dim_tol else 180.0
    dyaw = min(dyaw, period - dyaw)
    return dyaw <= yaw_tol


def polygon_centroid(poly) -> tuple[float, float]:
    """Area centroid of a simple polygon."""
    area2 = 0.0
    cx = 0.0
    cz = 0.0
    n = len(poly)
    for i in range(n):
        x0, z0 = poly[i]
        x1, z1 = poly[(i + 1) % n]
        w = x0 * z1 - x1 * z0
        area2 += w
        cx += (x0 + x1) * w
        cz += (z0 + z1) * w
    if abs(area2) < EPS:
        xs = [p[0] for p in poly]
        zs = [p[1] for p in poly]
        return (sum(xs) / n, sum(zs) / n)
    return (cx / (3.0 * area2), cz / (3.0 * area2))


def is_simple_polygon(poly) -> bool:
    """True when no two non-adjacent edges intersect and no edge degenerates."""
    n = len(poly)
    if n < 3:
        return False
    from . import segments_properly_cross

    for i in range(n):
        ax, az = poly[i]
        bx, bz = poly[(i + 1) % n]
        if abs(ax - bx) < EPS and abs(az - bz) < EPS:
            return False
        for j in range(i + 1, n):
            if j == i or (j + 1) % n == i or (i + 1) % n == j:
                continue
            cx, cz = poly[j]
            dx, dz = poly[(j + 1) % n]
            if segments_properly_cross(ax, az, bx, bz, cx, cz, dx, dz):
                return False
    return True


def polygon_bbox(poly) -> tuple[float, float, float, float]:
    """Axis-aligned (min_x, min_z, max_x, max_z)."""
    xs = [p[0] for p in poly]
    zs = [p[1] for p in poly]
    return (min(xs), min(zs), max(xs), max(zs))


__all__ = [
    "BoundingRect",
    "canonical_rect",
    "convex_hull",
    "is_simple_polygon",
    "min_area_bounding_rect",
    "normalize_yaw",
    "oriented_rect_corners",
    "polygon_bbox",
    "polygon_centroid",
    "rects_equivalent",
    "rotate_xz",
    "EPS",
]

# re-export for convenience
from . import (  # noqa: E402
    convex_clip_area,
    point_in_polygon,
    poly_boundary_distance,
    poly_min_distance,
    rect_in_polygon,
    segments_properly_cross,
)

__all__ += [
    "convex_clip_area",
    "point_in_polygon",
    "poly_boundary_distance",
    "poly_min_distance",
    "rect_in_polygon",
    "segments_properly_cross",
]
