/** Wires the store and widgets into a root element. */

import { FloorPlanCanvas } from "./canvas.js";
import { MiniatureStrip, SuggestionPanel, ToastTray, ValidationPanel } from "./panels.js";
import { AppStore } from "./store.js";
import { Toolbar } from "./toolbar.js";
import { RoomDoc } from "./types.js";

export const DEFAULT_ROOM: RoomDoc = {
  id: "bedroom-1",
  room_type: "bedroom",
  footprint: [
    [0, 0],
    [4, 0],
    [4, 3],
    [0, 3],
  ],
  ceiling_height: 2.8,
  openings: [
    { kind: "door", edge_index: 0, offset: 1.5, width: 0.9, sill_height: 0, head_height: 2.1 },
    { kind: "window", edge_index: 2, offset: 1.2, width: 1.4, sill_height: 0.9, head_height: 2.0 },
  ],
};

export async function mountApp(
  root: HTMLElement,
  baseUrl: string,
  room: RoomDoc = DEFAULT_ROOM,
): Promise<AppStore> {
  const doc = root.ownerDocument;
  const store = new AppStore(baseUrl);

  const catalog = await store.api.catalog();
  await store.openSession(room, 3);

  const strip = new MiniatureStrip(store, doc);
  strip.setSpecs(catalog.items);
  const toolbar = new Toolbar(store, doc, catalog.categories);
  const canvas = new FloorPlanCanvas(store, doc);
  canvas.setSpecs(catalog.items);
  const suggestions = new SuggestionPanel(store, doc);
  const validation = new ValidationPanel(store, doc);
  const toasts = new ToastTray(store, doc);

  root.innerHTML = "";
  root.appendChild(strip.root);
  root.appendChild(toolbar.root);
  const main = doc.createElement("div");
  main.className = "main-row";
  const canvasWrap = doc.createElement("div");
  canvasWrap.className = "canvas-wrap";
  canvasWrap.appendChild(canvas.svg);
  main.appendChild(canvasWrap);
  const side = doc.createElement("div");
  side.className = "side";
  side.appendChild(suggestions.root);
  side.appendChild(validation.root);
  main.appendChild(side);
  root.appendChild(main);
  root.appendChild(toasts.root);

  return store;
}
