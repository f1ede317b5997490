"""Top-down vector rendering of a workspace.

Emits a deterministic SVG: room outline with door and window markings,
furniture footprints labeled by category, wireframes as dashed labeled
rectangles.  Vector output keeps goldens diffable.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

from .catalog import Catalog
from .scene import Room, oriented_rect_footprint

SCALE = 100.0  # pixels per meter
MARGIN = 40.0

CATEGORY_COLORS = {
    "bed": "#aec6cf",
    "sofa": "#cdb4db",
    "chair": "#ffd8a8",
    "armchair": "#ffc9a3",
    "wardrobe": "#b5ead7",
    "nightstand": "#ffdac1",
    "desk": "#c7ceea",
    "table": "#e2ece9",
    "coffee_table": "#e2ece9",
    "dining_table": "#e2ece9",
    "bookshelf": "#d8e2dc",
    "shelf": "#d8e2dc",
    "cabinet": "#d8e2dc",
    "dresser": "#d8e2dc",
    "tv_stand": "#f1dca7",
    "ceiling_lamp": "#fff3b0",
    "floor_lamp": "#fff3b0",
    "plant_stand": "#cfe1b9",
    "sideboard": "#d8e2dc",
    "stool": "#ffd8a8",
    "bench": "#ffd8a8",
}


def _fmt(v: float) -> str:
    return f"{v:.2f}"


class _Canvas:
    def __init__(self, room: Room):
        min_x, min_z, max_x, max_z = room.bbox
        self.min_x = min_x
        self.min_z = min_z
        self.width = (max_x - min_x) * SCALE + 2 * MARGIN
        self.height = (max_z - min_z) * SCALE + 2 * MARGIN
        self.parts: list[str] = []

    def pt(self, x: float, z: float) -> tuple[float, float]:
        # plan view: +x right, +z down
        return (MARGIN + (x - self.min_x) * SCALE, MARGIN + (z - self.min_z) * SCALE)

    def poly(self, corners, **attrs) -> None:
        pts = " ".join(f"{_fmt(px)},{_fmt(pz)}" for px, pz in (self.pt(x, z) for x, z in corners))
        attr_s = " ".join(f'{k.replace("_", "-")}="{v}"' for k, v in attrs.items())
        self.parts.append(f'<polygon points="{pts}" {attr_s}/>')

    def line(self, a, b, **attrs) -> None:
        (x1, z1), (x2, z2) = self.pt(*a), self.pt(*b)
        attr_s = " ".join(f'{k.replace("_", "-")}="{v}"' for k, v in attrs.items())
        self.parts.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(z1)}" x2="{_fmt(x2)}" y2="{_fmt(z2)}" {attr_s}/>'
        )

    def text(self, x: float, z: float, label: str, size: float = 11.0) -> None:
        px, pz = self.pt(x, z)
        self.parts.append(
            f'<text x="{_fmt(px)}" y="{_fmt(pz)}" font-size="{_fmt(size)}" '
            f'font-family="sans-serif" text-anchor="middle" '
            f'dominant-baseline="middle">{escape(label)}</text>'
        )

    def svg(self) -> str:
        body = "\n".join(self.parts)
        return (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(self.width)}" '
            f'height="{_fmt(self.height)}" viewBox="0 0 {_fmt(self.width)} {_fmt(self.height)}">\n'
            f"{body}\n</svg>\n"
        )


def render_workspace_doc(doc: dict, catalog: Catalog) -> str:
    """Render a workspace document (the protocol JSON shape) to SVG."""
    from .protocol import decode_workspace

    ws = decode_workspace(doc)
    return render_scene(ws.room, list(ws.objects.values()), list(ws.wireframes.values()), catalog)


def render_scene(room: Room, objects, wireframes, catalog: Catalog) -> str:
    canvas = _Canvas(room)
    canvas.poly(room.footprint, fill="#fbfbf8", stroke="#222222", stroke_width="3")

    for op in room.openings:
        p0, p1 = room.opening_span(op)
        if op.kind == "door":
            canvas.line(p0, p1, stroke="#ffffff", stroke_width="5")
            nx, nz = room.edge_inward_normal(op.edge_index)
            swing_end = (p0[0] + nx * op.width, p0[1] + nz * op.width)
            canvas.line(p0, swing_end, stroke="#888888", stroke_width="1", stroke_dasharray="4 3")
            canvas.line(swing_end, p1, stroke="#888888", stroke_width="1", stroke_dasharray="4 3")
        else:
            canvas.line(p0, p1, stroke="#7fb3d5", stroke_width="5")

    for wf in wireframes:
        if wf.hidden:
            continue
        canvas.poly(
            wf.corners(), fill="none", stroke="#666666", stroke_width="2",
            stroke_dasharray="7 4",
        )
        canvas.text(wf.center[0], wf.center[1], wf.label)

    for obj in objects:
        spec = catalog.spec(obj.spec_id)
        corners = oriented_rect_footprint(obj, spec.footprint_dims)
        color = CATEGORY_COLORS.get(spec.category, "#dddddd")
        extra = {}
        if spec.placement_class == "ceiling":
            extra = {"fill_opacity": "0.55", "stroke_dasharray": "3 3"}
        canvas.poly(corners, fill=color, stroke="#333333", stroke_width="1.5", **extra)
        canvas.text(obj.position[0], obj.position[2], spec.category)

    return canvas.svg()
