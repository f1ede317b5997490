# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled geometry kernels.

Twin of ``_kernels_py.py``: same functions, same operation order, typed
doubles.  Polygons arrive as Python sequences of (x, z) pairs and are copied
into stack-local C arrays (layout polygons are tiny: rooms <= 16 vertices,
footprints are quads).
"""

from libc.math cimport INFINITY, sqrt

cdef double EPS = 1e-9
DEF MAX_VERTS = 64


cdef int _load(object poly, double* xs, double* zs) except -1:
    cdef int n = len(poly)
    cdef int i
    if n > MAX_VERTS:
        raise ValueError("polygon has too many vertices for the compiled kernel")
    for i in range(n):
        xs[i] = poly[i][0]
        zs[i] = poly[i][1]
    return n


cdef double _signed_area(double* xs, double* zs, int n):
    cdef double acc = 0.0
    cdef int i, j
    for i in range(n):
        j = (i + 1) % n
        acc += xs[i] * zs[j] - xs[j] * zs[i]
    return 0.5 * acc


def polygon_area(poly):
    """Signed shoelace area; positive for counter-clockwise vertex order."""
    cdef double xs[MAX_VERTS]
    cdef double zs[MAX_VERTS]
    cdef int n = _load(poly, xs, zs)
    return _signed_area(xs, zs, n)


cdef double _point_segment_dist2(double px, double pz, double ax, double az,
                                 double bx, double bz):
    cdef double vx = bx - ax
    cdef double vz = bz - az
    cdef double wx = px - ax
    cdef double wz = pz - az
    cdef double seg2 = vx * vx + vz * vz
    cdef double t, dx, dz
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


cdef bint _point_in(double px, double pz, double* xs, double* zs, int n):
    cdef bint inside = False
    cdef double jx = xs[n - 1]
    cdef double jz = zs[n - 1]
    cdef double ix, iz, xc
    cdef int i
    for i in range(n):
        ix = xs[i]
        iz = zs[i]
        if _point_segment_dist2(px, pz, jx, jz, ix, iz) <= EPS * EPS:
            return True
        if (iz > pz) != (jz > pz):
            xc = ix + (pz - iz) / (jz - iz) * (jx - ix)
            if px < xc:
                inside = not inside
        jx = ix
        jz = iz
    return inside


def point_in_polygon(double px, double pz, poly):
    """Boundary-inclusive point-in-polygon test for simple polygons."""
    cdef double xs[MAX_VERTS]
    cdef double zs[MAX_VERTS]
    cdef int n = _load(poly, xs, zs)
    return bool(_point_in(px, pz, xs, zs, n))


cdef bint _properly_cross(double ax, double az, double bx, double bz,
                          double cx, double cz, double dx, double dz):
    cdef double d1 = (dx - cx) * (az - cz) - (dz - cz) * (ax - cx)
    cdef double d2 = (dx - cx) * (bz - cz) - (dz - cz) * (bx - cx)
    cdef double d3 = (bx - ax) * (cz - az) - (bz - az) * (cx - ax)
    cdef double d4 = (bx - ax) * (dz - az) - (bz - az) * (dx - ax)
    if ((d1 > EPS and d2 < -EPS) or (d1 < -EPS and d2 > EPS)) and (
        (d3 > EPS and d4 < -EPS) or (d3 < -EPS and d4 > EPS)
    ):
        return True
    return False


def segments_properly_cross(double ax, double az, double bx, double bz,
                            double cx, double cz, double dx, double dz):
    """True iff segments AB and CD cross at a single interior point."""
    return bool(_properly_cross(ax, az, bx, bz, cx, cz, dx, dz))


def convex_clip_area(subject, clip):
    """Intersection area of two convex polygons via half-plane clipping."""
    cdef double sx[MAX_VERTS]
    cdef double sz[MAX_VERTS]
    cdef double cxs[MAX_VERTS]
    cdef double czs[MAX_VERTS]
    cdef double outx[MAX_VERTS]
    cdef double outz[MAX_VERTS]
    cdef double bufx[MAX_VERTS]
    cdef double bufz[MAX_VERTS]
    cdef int ns = _load(subject, sx, sz)
    cdef int nc = _load(clip, cxs, czs)
    cdef int i, k, n_out, n_in
    cdef double tmp
    cdef double cx0, cz0, cx1, cz1, ex, ez, px, pz, qx, qz, prev_side, side, t, area

    if _signed_area(sx, sz, ns) < 0.0:
        for i in range(ns // 2):
            tmp = sx[i]; sx[i] = sx[ns - 1 - i]; sx[ns - 1 - i] = tmp
            tmp = sz[i]; sz[i] = sz[ns - 1 - i]; sz[ns - 1 - i] = tmp
    if _signed_area(cxs, czs, nc) < 0.0:
        for i in range(nc // 2):
            tmp = cxs[i]; cxs[i] = cxs[nc - 1 - i]; cxs[nc - 1 - i] = tmp
            tmp = czs[i]; czs[i] = czs[nc - 1 - i]; czs[nc - 1 - i] = tmp

    n_out = ns
    for i in range(ns):
        outx[i] = sx[i]
        outz[i] = sz[i]

    for i in range(nc):
        if n_out == 0:
            return 0.0
        cx0 = cxs[i]
        cz0 = czs[i]
        cx1 = cxs[(i + 1) % nc]
        cz1 = czs[(i + 1) % nc]
        ex = cx1 - cx0
        ez = cz1 - cz0
        n_in = n_out
        for k in range(n_in):
            bufx[k] = outx[k]
            bufz[k] = outz[k]
        n_out = 0
        px = bufx[n_in - 1]
        pz = bufz[n_in - 1]
        prev_side = ex * (pz - cz0) - ez * (px - cx0)
        for k in range(n_in):
            qx = bufx[k]
            qz = bufz[k]
            side = ex * (qz - cz0) - ez * (qx - cx0)
            if side >= 0.0:
                if prev_side < 0.0:
                    t = prev_side / (prev_side - side)
                    outx[n_out] = px + t * (qx - px)
                    outz[n_out] = pz + t * (qz - pz)
                    n_out += 1
                outx[n_out] = qx
                outz[n_out] = qz
                n_out += 1
            elif prev_side >= 0.0:
                t = prev_side / (prev_side - side)
                outx[n_out] = px + t * (qx - px)
                outz[n_out] = pz + t * (qz - pz)
                n_out += 1
            px = qx
            pz = qz
            prev_side = side

    if n_out < 3:
        return 0.0
    area = _signed_area(outx, outz, n_out)
    return area if area > 0.0 else 0.0


def rect_in_polygon(rect, poly):
    """True iff a convex quadrilateral lies inside a simple polygon."""
    cdef double rx[MAX_VERTS]
    cdef double rz[MAX_VERTS]
    cdef double xs[MAX_VERTS]
    cdef double zs[MAX_VERTS]
    cdef int m = _load(rect, rx, rz)
    cdef int n = _load(poly, xs, zs)
    cdef int i, j
    for i in range(m):
        if not _point_in(rx[i], rz[i], xs, zs, n):
            return False
    for i in range(m):
        for j in range(n):
            if _properly_cross(rx[i], rz[i], rx[(i + 1) % m], rz[(i + 1) % m],
                               xs[j], zs[j], xs[(j + 1) % n], zs[(j + 1) % n]):
                return False
    return True


cdef double _segment_segment_dist(double ax, double az, double bx, double bz,
                                  double cx, double cz, double dx, double dz):
    cdef double d2, t
    if _properly_cross(ax, az, bx, bz, cx, cz, dx, dz):
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
    return sqrt(d2)


def poly_min_distance(a, b):
    """Minimum distance between two convex polygons; 0.0 when they overlap."""
    cdef double ax_[MAX_VERTS]
    cdef double az_[MAX_VERTS]
    cdef double bx_[MAX_VERTS]
    cdef double bz_[MAX_VERTS]
    cdef int n = _load(a, ax_, az_)
    cdef int m = _load(b, bx_, bz_)
    cdef int i, j
    cdef double best = INFINITY
    cdef double d
    for i in range(n):
        if _point_in(ax_[i], az_[i], bx_, bz_, m):
            return 0.0
    for i in range(m):
        if _point_in(bx_[i], bz_[i], ax_, az_, n):
            return 0.0
    for i in range(n):
        for j in range(m):
            d = _segment_segment_dist(ax_[i], az_[i],
                                      ax_[(i + 1) % n], az_[(i + 1) % n],
                                      bx_[j], bz_[j],
                                      bx_[(j + 1) % m], bz_[(j + 1) % m])
            if d < best:
                best = d
    return best


def poly_boundary_distance(rect, poly):
    """Minimum distance from a rectangle to the edges of an enclosing polygon."""
    cdef double rx[MAX_VERTS]
    cdef double rz[MAX_VERTS]
    cdef double xs[MAX_VERTS]
    cdef double zs[MAX_VERTS]
    cdef int m = _load(rect, rx, rz)
    cdef int n = _load(poly, xs, zs)
    cdef int i, j
    cdef double best = INFINITY
    cdef double d
    for i in range(m):
        for j in range(n):
            d = _segment_segment_dist(rx[i], rz[i],
                                      rx[(i + 1) % m], rz[(i + 1) % m],
                                      xs[j], zs[j],
                                      xs[(j + 1) % n], zs[(j + 1) % n])
            if d < best:
                best = d
    return best
