"""Geometry kernel facade: picks the compiled extension when available.

``COLAYOUT_PURE=1`` forces the pure-Python fallback, which is also used
transparently whenever ``_kernels_c`` was not built.  Both backends expose
identical functions; ``backend_name()`` reports which one is active.
"""

import os

if os.environ.get("COLAYOUT_PURE") == "1":
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels_c as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

EPS = 1e-9

polygon_area = _impl.polygon_area
point_in_polygon = _impl.point_in_polygon
segments_properly_cross = _impl.segments_properly_cross
convex_clip_area = _impl.convex_clip_area
rect_in_polygon = _impl.rect_in_polygon
poly_min_distance = _impl.poly_min_distance
poly_boundary_distance = _impl.poly_boundary_distance


def backend_name() -> str:
    return "compiled" if _impl.__name__.endswith("_kernels_c") else "pure"
