/**
 * SVG floor-plan canvas: renders the active workspace and turns pointer
 * gestures into server mutations (select/drag/rotate/resize), pin drops,
 * or stroke collection, depending on the active tool.
 *
 * Drags draw a transient ghost outline only; the real object moves when
 * the mutation's push event lands.
 */

import { centroid, Point, pointInPolygon, polygonBounds, rectCorners } from "./geometry.js";
import { AppStore } from "./store.js";
import { ObjectDoc, SpecDoc, WireframeDoc } from "./types.js";

const SCALE = 100; // px per meter
const MARGIN = 40;

const CATEGORY_COLORS: Record<string, string> = {
  bed: "#aec6cf",
  sofa: "#cdb4db",
  chair: "#ffd8a8",
  armchair: "#ffc9a3",
  wardrobe: "#b5ead7",
  nightstand: "#ffdac1",
  desk: "#c7ceea",
  ceiling_lamp: "#fff3b0",
  floor_lamp: "#fff3b0",
};

const SVG_NS = "http://www.w3.org/2000/svg";

type DragState =
  | { kind: "move"; id: string; isWireframe: boolean; start: Point; last: Point }
  | { kind: "rotate"; id: string; isWireframe: boolean; center: Point; startYaw: number }
  | { kind: "resize"; id: string; start: Point; width: number; depth: number }
  | null;

export class FloorPlanCanvas {
  readonly svg: SVGSVGElement;
  private specs = new Map<string, SpecDoc>();
  private drag: DragState = null;
  private ghost: SVGPolygonElement | null = null;

  constructor(
    private readonly store: AppStore,
    private readonly doc: Document,
  ) {
    this.svg = doc.createElementNS(SVG_NS, "svg") as SVGSVGElement;
    this.svg.classList.add("floor-plan");
    this.svg.addEventListener("pointerdown", (e) => this.onPointerDown(e as PointerEvent));
    this.svg.addEventListener("pointermove", (e) => this.onPointerMove(e as PointerEvent));
    this.svg.addEventListener("pointerup", (e) => this.onPointerUp(e as PointerEvent));
    store.subscribe(() => this.render());
  }

  setSpecs(specs: SpecDoc[]): void {
    this.specs = new Map(specs.map((s) => [s.spec_id, s]));
    this.render();
  }

  // ---------------------------------------------------------- transforms

  toScreen([x, z]: Point): Point {
    const state = this.store.active;
    if (!state.room) return [MARGIN, MARGIN];
    const { minX, minZ } = polygonBounds(state.room.footprint);
    return [MARGIN + (x - minX) * SCALE, MARGIN + (z - minZ) * SCALE];
  }

  toWorld(px: number, pz: number): Point {
    const state = this.store.active;
    if (!state.room) return [0, 0];
    const { minX, minZ } = polygonBounds(state.room.footprint);
    return [(px - MARGIN) / SCALE + minX, (pz - MARGIN) / SCALE + minZ];
  }

  private eventWorld(event: PointerEvent): Point {
    const rect = this.svg.getBoundingClientRect();
    return this.toWorld(event.clientX - rect.left, event.clientY - rect.top);
  }

  // ------------------------------------------------------------ hit test

  objectFootprint(obj: ObjectDoc): Point[] {
    const spec = this.specs.get(obj.spec);
    const [w, d] = spec ? [spec.dims[0] * obj.scale, spec.dims[1] * obj.scale] : [0.5, 0.5];
    return rectCorners(obj.position[0], obj.position[2], w, d, obj.rotation);
  }

  hitTest(point: Point): { id: string; isWireframe: boolean } | null {
    const state = this.store.active;
    let best: { id: string; isWireframe: boolean; area: number } | null = null;
    for (const obj of state.objects.values()) {
      const corners = this.objectFootprint(obj);
      if (pointInPolygon(point[0], point[1], corners)) {
        const spec = this.specs.get(obj.spec);
        const area = spec ? spec.dims[0] * spec.dims[1] * obj.scale ** 2 : 1;
        if (!best || area < best.area) best = { id: obj.id, isWireframe: false, area };
      }
    }
    for (const wf of state.wireframes.values()) {
      if (wf.hidden) continue;
      const corners = rectCorners(wf.center[0], wf.center[1], wf.width, wf.depth, wf.yaw);
      if (pointInPolygon(point[0], point[1], corners)) {
        const area = wf.width * wf.depth;
        if (!best || area < best.area) best = { id: wf.id, isWireframe: true, area };
      }
    }
    return best ? { id: best.id, isWireframe: best.isWireframe } : null;
  }

  // ------------------------------------------------------------ pointers

  onPointerDown(event: PointerEvent): void {
    const world = this.eventWorld(event);
    this.handleDown(world, (event.target as Element | null)?.getAttribute?.("data-handle"));
  }

  /** Tool dispatch, separated from the DOM event for testability. */
  handleDown(world: Point, handle?: string | null): void {
    const store = this.store;
    if (store.tool === "point") {
      store.setPin(world);
      return;
    }
    if (store.tool === "draw") {
      store.strokePoints = [world];
      this.render();
      return;
    }
    if (store.tool !== "select") return;
    if (handle && store.selection.size === 1) {
      const id = [...store.selection][0]!;
      const isWireframe = store.active.wireframes.has(id);
      if (handle === "rotate") {
        this.drag = {
          kind: "rotate",
          id,
          isWireframe,
          center: this.centerOf(id, isWireframe),
          startYaw: this.yawOf(id, isWireframe),
        };
        return;
      }
      if (handle === "resize" && isWireframe) {
        const wf = store.active.wireframes.get(id)!;
        this.drag = { kind: "resize", id, start: world, width: wf.width, depth: wf.depth };
        return;
      }
    }
    const hit = this.hitTest(world);
    if (hit) {
      store.setSelection([hit.id]);
      this.drag = {
        kind: "move",
        id: hit.id,
        isWireframe: hit.isWireframe,
        start: world,
        last: world,
      };
    } else {
      store.setSelection([]);
    }
  }

  onPointerMove(event: PointerEvent): void {
    const world = this.eventWorld(event);
    this.handleMove(world);
  }

  handleMove(world: Point): void {
    const store = this.store;
    if (store.tool === "draw" && store.strokePoints.length) {
      store.strokePoints.push(world);
      this.render();
      return;
    }
    if (!this.drag) return;
    if (this.drag.kind === "move") {
      this.drag.last = world;
      this.showGhostAt(world);
    }
  }

  onPointerUp(event: PointerEvent): void {
    this.handleUp(this.eventWorld(event));
  }

  handleUp(world: Point): void {
    const store = this.store;
    if (store.tool === "draw" && store.strokePoints.length) {
      store.strokePoints.push(world);
      this.render();
      // the stroke stays pending until a label is picked in the toolbar
      return;
    }
    const drag = this.drag;
    this.drag = null;
    this.clearGhost();
    if (!drag) return;
    if (drag.kind === "move") {
      const [dx, dz] = [world[0] - drag.start[0], world[1] - drag.start[1]];
      if (Math.hypot(dx, dz) < 0.02) return; // click, not a drag
      const current = this.centerOf(drag.id, drag.isWireframe);
      const to: Point = [current[0] + dx, current[1] + dz];
      void store.mutate(
        drag.isWireframe
          ? { kind: "wf_move", id: drag.id, to }
          : { kind: "move", id: drag.id, to },
      );
      return;
    }
    if (drag.kind === "rotate") {
      const angle =
        (Math.atan2(world[1] - drag.center[1], world[0] - drag.center[0]) * 180) / Math.PI;
      const yaw = (Math.round(angle / 15) * 15 + 360) % 360;
      void store.mutate(
        drag.isWireframe
          ? { kind: "wf_rotate", id: drag.id, yaw }
          : { kind: "rotate", id: drag.id, yaw },
      );
      return;
    }
    if (drag.kind === "resize") {
      const width = Math.max(0.1, drag.width + (world[0] - drag.start[0]) * 2);
      const depth = Math.max(0.1, drag.depth + (world[1] - drag.start[1]) * 2);
      void store.mutate({ kind: "wf_resize", id: drag.id, width, depth });
    }
  }

  private centerOf(id: string, isWireframe: boolean): Point {
    const state = this.store.active;
    if (isWireframe) {
      const wf = state.wireframes.get(id)!;
      return [wf.center[0], wf.center[1]];
    }
    const obj = state.objects.get(id)!;
    return [obj.position[0], obj.position[2]];
  }

  private yawOf(id: string, isWireframe: boolean): number {
    const state = this.store.active;
    return isWireframe ? state.wireframes.get(id)!.yaw : state.objects.get(id)!.rotation;
  }

  // ------------------------------------------------------------- render

  private el(tag: string, attrs: Record<string, string>): SVGElement {
    const node = this.doc.createElementNS(SVG_NS, tag) as SVGElement;
    for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
    return node;
  }

  private showGhostAt(world: Point): void {
    if (!this.drag || this.drag.kind !== "move") return;
    const offset: Point = [world[0] - this.drag.start[0], world[1] - this.drag.start[1]];
    const center = this.centerOf(this.drag.id, this.drag.isWireframe);
    const state = this.store.active;
    let corners: Point[];
    if (this.drag.isWireframe) {
      const wf = state.wireframes.get(this.drag.id)!;
      corners = rectCorners(
        center[0] + offset[0],
        center[1] + offset[1],
        wf.width,
        wf.depth,
        wf.yaw,
      );
    } else {
      const obj = state.objects.get(this.drag.id)!;
      const spec = this.specs.get(obj.spec);
      const [w, d] = spec ? [spec.dims[0] * obj.scale, spec.dims[1] * obj.scale] : [0.5, 0.5];
      corners = rectCorners(center[0] + offset[0], center[1] + offset[1], w, d, obj.rotation);
    }
    if (!this.ghost) {
      this.ghost = this.el("polygon", {
        class: "ghost",
        fill: "none",
        stroke: "#1971c2",
        "stroke-dasharray": "5 4",
        "stroke-width": "2",
      }) as SVGPolygonElement;
      this.svg.appendChild(this.ghost);
    }
    this.ghost.setAttribute(
      "points",
      corners.map((c) => this.toScreen(c).map((v) => v.toFixed(1)).join(",")).join(" "),
    );
  }

  private clearGhost(): void {
    this.ghost?.remove();
    this.ghost = null;
  }

  render(): void {
    const state = this.store.active;
    while (this.svg.firstChild) this.svg.removeChild(this.svg.firstChild);
    this.ghost = null;
    if (!state.room) return;
    const { minX, minZ, maxX, maxZ } = polygonBounds(state.room.footprint);
    this.svg.setAttribute("width", String((maxX - minX) * SCALE + 2 * MARGIN));
    this.svg.setAttribute("height", String((maxZ - minZ) * SCALE + 2 * MARGIN));

    const failing = new Set(
      (this.store.lastValidation?.violations ?? []).flatMap((v) => v.ids),
    );

    this.svg.appendChild(
      this.el("polygon", {
        points: this.pointsAttr(state.room.footprint as Point[]),
        fill: "#fbfbf8",
        stroke: "#222",
        "stroke-width": "3",
      }),
    );
    this.renderOpenings();
    for (const wf of state.wireframes.values()) {
      if (wf.hidden) continue;
      this.renderWireframe(wf, failing.has(wf.id));
    }
    for (const obj of state.objects.values()) {
      this.renderObject(obj, failing.has(obj.id));
    }
    this.renderStroke();
    this.renderPin();
    this.renderSelectionHandles();
  }

  private pointsAttr(corners: Point[]): string {
    return corners.map((c) => this.toScreen(c).map((v) => v.toFixed(1)).join(",")).join(" ");
  }

  private renderOpenings(): void {
    const room = this.store.active.room!;
    for (const op of room.openings) {
      const [x0, z0] = room.footprint[op.edge_index]!;
      const [x1, z1] = room.footprint[(op.edge_index + 1) % room.footprint.length]!;
      const len = Math.hypot(x1 - x0, z1 - z0);
      const dir: Point = [(x1 - x0) / len, (z1 - z0) / len];
      const a: Point = [x0 + dir[0] * op.offset, z0 + dir[1] * op.offset];
      const b: Point = [a[0] + dir[0] * op.width, a[1] + dir[1] * op.width];
      const [ax, az] = this.toScreen(a);
      const [bx, bz] = this.toScreen(b);
      this.svg.appendChild(
        this.el("line", {
          x1: ax.toFixed(1),
          y1: az.toFixed(1),
          x2: bx.toFixed(1),
          y2: bz.toFixed(1),
          stroke: op.kind === "door" ? "#ffffff" : "#7fb3d5",
          "stroke-width": "5",
          class: `opening ${op.kind}`,
        }),
      );
    }
  }

  private renderWireframe(wf: WireframeDoc, failing: boolean): void {
    const corners = rectCorners(wf.center[0], wf.center[1], wf.width, wf.depth, wf.yaw);
    const selected = this.store.selection.has(wf.id);
    this.svg.appendChild(
      this.el("polygon", {
        points: this.pointsAttr(corners),
        fill: "none",
        stroke: failing ? "#d00000" : selected ? "#1971c2" : "#666",
        "stroke-width": selected ? "3" : "2",
        "stroke-dasharray": "7 4",
        class: "wireframe",
        "data-id": wf.id,
      }),
    );
    this.label(wf.center[0], wf.center[1], wf.label);
  }

  private renderObject(obj: ObjectDoc, failing: boolean): void {
    const spec = this.specs.get(obj.spec);
    const corners = this.objectFootprint(obj);
    const selected = this.store.selection.has(obj.id);
    const attrs: Record<string, string> = {
      points: this.pointsAttr(corners),
      fill: CATEGORY_COLORS[spec?.category ?? ""] ?? "#ddd",
      stroke: failing ? "#d00000" : selected ? "#1971c2" : "#333",
      "stroke-width": failing || selected ? "3" : "1.5",
      class: "object",
      "data-id": obj.id,
    };
    if (spec?.placement_class === "ceiling") {
      attrs["fill-opacity"] = "0.55";
      attrs["stroke-dasharray"] = "3 3";
    }
    this.svg.appendChild(this.el("polygon", attrs));
    this.label(obj.position[0], obj.position[2], spec?.category ?? obj.spec);
  }

  private label(x: number, z: number, text: string): void {
    const [px, pz] = this.toScreen([x, z]);
    const node = this.el("text", {
      x: px.toFixed(1),
      y: pz.toFixed(1),
      "font-size": "11",
      "text-anchor": "middle",
      class: "label",
    });
    node.textContent = text;
    this.svg.appendChild(node);
  }

  private renderStroke(): void {
    const points = this.store.strokePoints;
    if (points.length < 2) return;
    this.svg.appendChild(
      this.el("polyline", {
        points: points
          .map((p) => this.toScreen(p).map((v) => v.toFixed(1)).join(","))
          .join(" "),
        fill: "none",
        stroke: "#1971c2",
        "stroke-width": "2",
        class: "stroke-preview",
      }),
    );
  }

  private renderPin(): void {
    const pin = this.store.pin;
    if (!pin) return;
    const [px, pz] = this.toScreen(pin);
    this.svg.appendChild(
      this.el("circle", {
        cx: px.toFixed(1),
        cy: pz.toFixed(1),
        r: "6",
        fill: "#e03131",
        class: "pin",
      }),
    );
  }

  private renderSelectionHandles(): void {
    if (this.store.selection.size !== 1) return;
    const id = [...this.store.selection][0]!;
    const state = this.store.active;
    const isWireframe = state.wireframes.has(id);
    if (!isWireframe && !state.objects.has(id)) return;
    const center = this.centerOf(id, isWireframe);
    const [cx, cz] = this.toScreen(center);
    this.svg.appendChild(
      this.el("circle", {
        cx: cx.toFixed(1),
        cy: (cz - 42).toFixed(1),
        r: "7",
        fill: "#1971c2",
        class: "handle rotate",
        "data-handle": "rotate",
      }),
    );
    if (isWireframe) {
      const wf = state.wireframes.get(id)!;
      const corner = rectCorners(wf.center[0], wf.center[1], wf.width, wf.depth, wf.yaw)[2]!;
      const [hx, hz] = this.toScreen(corner);
      this.svg.appendChild(
        this.el("rect", {
          x: (hx - 6).toFixed(1),
          y: (hz - 6).toFixed(1),
          width: "12",
          height: "12",
          fill: "#1971c2",
          class: "handle resize",
          "data-handle": "resize",
        }),
      );
    }
  }
}

export function roomCenter(footprint: Point[]): Point {
  return centroid(footprint);
}
