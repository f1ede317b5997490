/** Suggestion cards, workspace miniatures, validation list, toasts. */

import { polygonBounds, rectCorners } from "./geometry.js";
import { AppStore } from "./store.js";
import { SpecDoc } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export class SuggestionPanel {
  readonly root: HTMLElement;

  constructor(
    private readonly store: AppStore,
    doc: Document,
  ) {
    this.root = doc.createElement("div");
    this.root.className = "suggestions hidden";
    store.subscribe(() => this.render());
  }

  render(): void {
    const doc = this.root.ownerDocument;
    this.root.innerHTML = "";
    const panel = this.store.pendingPanel;
    if (!panel) {
      this.root.classList.add("hidden");
      return;
    }
    this.root.classList.remove("hidden");
    const heading = doc.createElement("div");
    heading.className = "suggestions-head";
    heading.textContent = "Pick one of the suggestions";
    this.root.appendChild(heading);
    if (panel.ignored.length) {
      const note = doc.createElement("div");
      note.className = "ignored-note";
      note.textContent = `ignored: ${panel.ignored.join(", ")}`;
      this.root.appendChild(note);
    }
    panel.suggestion.candidates.forEach((candidate, index) => {
      const card = doc.createElement("button");
      card.className = "card";
      card.dataset.index = String(index);
      const dims = candidate.spec.dims.map((v) => v.toFixed(2)).join(" x ");
      card.innerHTML =
        `<strong>${candidate.spec.display_name}</strong>` +
        `<span>${candidate.spec.category} / ${candidate.spec.style} / ${candidate.spec.material}</span>` +
        `<span>${dims} m</span>`;
      card.addEventListener("click", () => void this.store.chooseSuggestion(index));
      this.root.appendChild(card);
    });
    const dismiss = doc.createElement("button");
    dismiss.className = "dismiss";
    dismiss.textContent = "Dismiss";
    dismiss.addEventListener("click", () => this.store.dismissSuggestions());
    this.root.appendChild(dismiss);
  }
}

export class MiniatureStrip {
  readonly root: HTMLElement;
  private specs = new Map<string, SpecDoc>();

  constructor(
    private readonly store: AppStore,
    doc: Document,
  ) {
    this.root = doc.createElement("div");
    this.root.className = "miniatures";
    store.subscribe(() => this.render());
  }

  setSpecs(specs: SpecDoc[]): void {
    this.specs = new Map(specs.map((s) => [s.spec_id, s]));
    this.render();
  }

  render(): void {
    const doc = this.root.ownerDocument;
    this.root.innerHTML = "";
    for (const wsId of this.store.workspaceIds) {
      const state = this.store.workspaces.get(wsId);
      const tile = doc.createElement("button");
      tile.className = "miniature" + (wsId === this.store.activeWsId ? " active" : "");
      tile.title = state?.name ?? wsId;
      tile.dataset.ws = wsId;
      if (state?.room) {
        tile.appendChild(this.renderThumb(doc, state));
      }
      const label = doc.createElement("span");
      label.textContent = `${state?.name ?? wsId} r${state?.revision ?? 0}`;
      tile.appendChild(label);
      tile.addEventListener("click", () => void this.store.switchWorkspace(wsId));
      this.root.appendChild(tile);
    }
    const add = doc.createElement("button");
    add.className = "miniature add";
    add.textContent = "+";
    add.addEventListener("click", () => void this.store.createWorkspace());
    this.root.appendChild(add);
  }

  private renderThumb(doc: Document, state: NonNullable<ReturnType<AppStore["workspaces"]["get"]>>) {
    const svg = doc.createElementNS(SVG_NS, "svg");
    const { minX, minZ, maxX, maxZ } = polygonBounds(state.room!.footprint as [number, number][]);
    const scale = 18;
    svg.setAttribute("width", String((maxX - minX) * scale + 8));
    svg.setAttribute("height", String((maxZ - minZ) * scale + 8));
    const toPx = ([x, z]: [number, number]) =>
      `${((x - minX) * scale + 4).toFixed(1)},${((z - minZ) * scale + 4).toFixed(1)}`;
    const room = doc.createElementNS(SVG_NS, "polygon");
    room.setAttribute("points", state.room!.footprint.map((p) => toPx(p as [number, number])).join(" "));
    room.setAttribute("fill", "#fff");
    room.setAttribute("stroke", "#444");
    svg.appendChild(room);
    for (const obj of state.objects.values()) {
      const spec = this.specs.get(obj.spec);
      const [w, d] = spec ? [spec.dims[0] * obj.scale, spec.dims[1] * obj.scale] : [0.4, 0.4];
      const rect = doc.createElementNS(SVG_NS, "polygon");
      rect.setAttribute(
        "points",
        rectCorners(obj.position[0], obj.position[2], w, d, obj.rotation)
          .map((c) => toPx(c))
          .join(" "),
      );
      rect.setAttribute("fill", "#b8c8e0");
      svg.appendChild(rect);
    }
    for (const wf of state.wireframes.values()) {
      if (wf.hidden) continue;
      const rect = doc.createElementNS(SVG_NS, "polygon");
      rect.setAttribute(
        "points",
        rectCorners(wf.center[0], wf.center[1], wf.width, wf.depth, wf.yaw)
          .map((c) => toPx(c))
          .join(" "),
      );
      rect.setAttribute("fill", "none");
      rect.setAttribute("stroke", "#999");
      rect.setAttribute("stroke-dasharray", "3 2");
      svg.appendChild(rect);
    }
    return svg;
  }
}

export class ValidationPanel {
  readonly root: HTMLElement;

  constructor(
    private readonly store: AppStore,
    doc: Document,
  ) {
    this.root = doc.createElement("div");
    this.root.className = "validation hidden";
    store.subscribe(() => this.render());
  }

  render(): void {
    const doc = this.root.ownerDocument;
    this.root.innerHTML = "";
    const report = this.store.lastValidation;
    if (!report) {
      this.root.classList.add("hidden");
      return;
    }
    this.root.classList.remove("hidden");
    for (const check of report.checks) {
      const row = doc.createElement("div");
      row.className = "check " + (check.passed ? "pass" : "fail");
      row.textContent = `${check.passed ? "o" : "x"} ${check.check_id}` +
        (check.details.length ? ` — ${check.details.join("; ")}` : "");
      this.root.appendChild(row);
    }
    const score = doc.createElement("div");
    score.className = "score";
    score.textContent = `score ${report.score}/${report.checks.length}`;
    this.root.appendChild(score);
  }
}

export class ToastTray {
  readonly root: HTMLElement;

  constructor(store: AppStore, doc: Document) {
    this.root = doc.createElement("div");
    this.root.className = "toasts";
    store.subscribe(() => {
      this.root.innerHTML = "";
      for (const toast of store.toasts.slice(-4)) {
        const node = doc.createElement("div");
        node.className = `toast ${toast.kind}`;
        node.textContent = toast.text;
        this.root.appendChild(node);
      }
    });
  }
}
