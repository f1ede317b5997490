"""Pure-Python geometry kernels.

These are the hot primitives of the layout engine: every placement proposal
runs convex clipping, containment, and clearance queries against them.  The
compiled twin in ``_kernels_c.pyx`` implements the same functions with the
same operation order; keep the two in lockstep when editing.

Conventions: points are ``(x, z)`` tuples in meters on the floor plane,
polygons are vertex sequences.  Counter-clockwise order means positive
signed area under the shoelace formula.
"""

import math

EPS = 1e-9


def polygon_area(poly):
    """Signed shoelace area; positive for counter-clockwise vertex order."""
    n = len(poly)
    acc = 0.0
    for i in range(n):
        x0, z0 = poly[i]
        x1, z1 = poly[(i + 1) % n]
        acc += x0 * z1 - x1 * z0
    return 0.5 * acc


def _point_segment_dist2(px, pz, ax, az, bx, bz):
    vx = bx - ax
    vz = bz - az
    wx = px - ax
    wz = pz - az
    seg2 = vx * vx + vz * vz
    if seg2 <= 0.0:
        return wx * wx + wz * wz
    t = (wx * vx + wz * vz) / seg2
    if t < 0.0:
        t = 0.0
    elif t > 1.0:
        t = 1.0
    dx = wx - t * vx
    dz = wz - t * vz
    return dx * dx + dz * dz


def point_in_polygon(px, pz, poly):
    """Boundary-inclusive point-in-polygon test for simple polygons."""
    n = len(poly)
    inside = False
    jx, jz = poly[n - 1]
    for i in range(n):
        ix, iz = poly[i]
        if _point_segment_dist2(px, pz, jx, jz, ix, iz) <= EPS * EPS:
            return True
        if (iz > pz) != (jz > pz):
            xc = ix + (pz - iz) / (jz - iz) * (jx - ix)
            if px < xc:
                inside = not inside
        jx, jz = ix, iz
    return inside


def segments_properly_cross(ax, az, bx, bz, cx, cz, dx, dz):
    """True iff segments AB and CD cross at a single interior point.

    Touching at endpoints or running collinear does not count; containment
    checks treat contact as legal and only reject true transversal crossings.
    """
    d1 = (dx - cx) * (az - cz) - (dz - cz) * (ax - cx)
    d2 = (dx - cx) * (bz - cz) - (dz - cz) * (bx - cx)
    d3 = (bx - ax) * (cz - az) - (bz - az) * (cx - ax)
    d4 = (bx - ax) * (dz - az) - (bz - az) * (dx - ax)
    if ((d1 > EPS and d2 < -EPS) or (d1 < -EPS and d2 > EPS)) and (
        (d3 > EPS and d4 < -EPS) or (d3 < -EPS and d4 > EPS)
    ):
        return True
    return False


def convex_clip_area(subject, clip):
    """Intersection area of two convex polygons via half-plane clipping.

    Returns 0.0 for disjoint or merely touching polygons.  Vertex order of
    either input may be CW or CCW; both are normalized internally.
    """
    if polygon_area(subject) < 0.0:
        subject = list(reversed(subject))
    if polygon_area(clip) < 0.0:
        clip = list(reversed(clip))
    output = list(subject)
    m = len(clip)
    for i in range(m):
        if not output:
            return 0.0
        cx0, cz0 = clip[i]
        cx1, cz1 = clip[(i + 1) % m]
        ex = cx1 - cx0
        ez = cz1 - cz0
        polygon = output
        output = []
        px, pz = polygon[-1]
        prev_side = ex * (pz - cz0) - ez * (px - cx0)
        for qx, qz in polygon:
            side = ex * (qz - cz0) - ez * (qx - cx0)
            if side >= 0.0:
                if prev_side < 0.0:
                    t = prev_side / (prev_side - side)
                    output.append((px + t * (qx - px), pz + t * (qz - pz)))
                output.append((qx, qz))
            elif prev_side >= 0.0:
                t = prev_side / (prev_side - side)
                output.append((px + t * (qx - px), pz + t * (qz - pz)))
            px, pz, prev_side = qx, qz, side
    if len(output) < 3:
        return 0.0
    area = polygon_area(output)
    return area if area > 0.0 else 0.0


def rect_in_polygon(rect, poly):
    """True iff a convex quadrilateral lies inside a simple polygon.

    All corners must be inside or on the boundary and no rectangle edge may
    cross a polygon edge (catches notches of non-convex rooms whose corners
    would otherwise pass the vertex test).
    """
    for px, pz in rect:
        if not point_in_polygon(px, pz, poly):
            return False
    n = len(poly)
    m = len(rect)
    for i in range(m):
        ax, az = rect[i]
        bx, bz = rect[(i + 1) % m]
        for j in range(n):
            cx, cz = poly[j]
            dx, dz = poly[(j + 1) % n]
            if segments_properly_cross(ax, az, bx, bz, cx, cz, dx, dz):
                return False
    return True


def _segment_segment_dist(ax, az, bx, bz, cx, cz, dx, dz):
    if segments_properly_cross(ax, az, bx, bz, cx, cz, dx, dz):
        return 0.0
    d2 = _point_segment_dist2(ax, az, cx, cz, dx, dz)
    t = _point_segment_dist2(bx, bz, cx, cz, dx, dz)
    if t < d2:
        d2 = t
    t = _point_segment_dist2(cx, cz, ax, az, bx, bz)
    if t < d2:
        d2 = t
    t = _point_segment_dist2(dx, dz, ax, az, bx, bz)
    if t < d2:
        d2 = t
    return math.sqrt(d2)


def poly_min_distance(a, b):
    """Minimum distance between two convex polygons; 0.0 when they overlap."""
    for px, pz in a:
        if point_in_polygon(px, pz, b):
            return 0.0
    for px, pz in b:
        if point_in_polygon(px, pz, a):
            return 0.0
    best = math.inf
    n = len(a)
    m = len(b)
    for i in range(n):
        ax, az = a[i]
        bx, bz = a[(i + 1) % n]
        for j in range(m):
            cx, cz = b[j]
            dx, dz = b[(j + 1) % m]
            d = _segment_segment_dist(ax, az, bx, bz, cx, cz, dx, dz)
            if d < best:
                best = d
    return best


def poly_boundary_distance(rect, poly):
    """Minimum distance from a rectangle to the edges of an enclosing polygon."""
    best = math.inf
    n = len(poly)
    m = len(rect)
    for i in range(m):
        ax, az = rect[i]
        bx, bz = rect[(i + 1) % m]
        for j in range(n):
            cx, cz = poly[j]
            dx, dz = poly[(j + 1) % n]
            d = _segment_segment_dist(ax, az, bx, bz, cx, cz, dx, dz)
            if d < best:
                best = d
    return best
