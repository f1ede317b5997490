/**
 * Pure workspace state: a fold over push events.
 *
 * The canvas never mutates this directly; it renders whatever the fold
 * produces, so reconnect-and-replay from revision 0 reproduces the view
 * exactly (the server guarantees the same fold rebuilds its document).
 */

import {
  ChangeSet,
  isCreatedEvent,
  isImportedEvent,
  ObjectDoc,
  PushEvent,
  RoomDoc,
  WireframeDoc,
  WorkspaceDoc,
} from "./types.js";

export interface WorkspaceState {
  wsId: string;
  name: string;
  revision: number;
  room: RoomDoc | null;
  objects: Map<string, ObjectDoc>;
  wireframes: Map<string, WireframeDoc>;
}

export function emptyWorkspaceState(wsId: string): WorkspaceState {
  return {
    wsId,
    name: wsId,
    revision: -1,
    room: null,
    objects: new Map(),
    wireframes: new Map(),
  };
}

export function fromDocument(doc: WorkspaceDoc): WorkspaceState {
  return {
    wsId: doc.ws_id,
    name: doc.name,
    revision: doc.revision,
    room: doc.room,
    objects: new Map(doc.objects.map((o) => [o.id, o])),
    wireframes: new Map(doc.wireframes.map((w) => [w.id, w])),
  };
}

function applyChanges(state: WorkspaceState, changes: ChangeSet): void {
  for (const id of changes.objects_removed ?? []) state.objects.delete(id);
  for (const obj of changes.objects_added ?? []) state.objects.set(obj.id, obj);
  for (const obj of changes.objects_updated ?? []) state.objects.set(obj.id, obj);
  for (const id of changes.wireframes_removed ?? []) state.wireframes.delete(id);
  for (const wf of changes.wireframes_added ?? []) state.wireframes.set(wf.id, wf);
  for (const wf of changes.wireframes_updated ?? []) state.wireframes.set(wf.id, wf);
}

export function applyEvent(state: WorkspaceState, event: PushEvent): WorkspaceState {
  if (isCreatedEvent(event)) {
    const created = emptyWorkspaceState(event.ws_id);
    created.name = event.name;
    created.room = event.room;
    created.revision = 0;
    return created;
  }
  if (isImportedEvent(event)) {
    return fromDocument(event.document);
  }
  const next: WorkspaceState = {
    ...state,
    revision: event.revision,
    objects: new Map(state.objects),
    wireframes: new Map(state.wireframes),
  };
  applyChanges(next, event.changes ?? {});
  return next;
}

export function replay(events: PushEvent[]): WorkspaceState {
  let state = emptyWorkspaceState("");
  for (const event of events) {
    state = applyEvent(state, event);
  }
  return state;
}

/** Canonical comparison form, mirroring the exported workspace document. */
export function toDocumentShape(state: WorkspaceState): Omit<WorkspaceDoc, "version"> {
  return {
    ws_id: state.wsId,
    name: state.name,
    revision: state.revision,
    room: state.room as RoomDoc,
    objects: [...state.objects.values()],
    wireframes: [...state.wireframes.values()],
  };
}
