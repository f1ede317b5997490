/** Wire shapes of the /v1 protocol. */

export interface OpeningDoc {
  kind: "door" | "window";
  edge_index: number;
  offset: number;
  width: number;
  sill_height: number;
  head_height: number;
}

export interface RoomDoc {
  id: string;
  room_type: string;
  footprint: [number, number][];
  ceiling_height: number;
  openings: OpeningDoc[];
}

export interface ObjectDoc {
  id: string;
  spec: string;
  position: [number, number, number];
  rotation: number;
  scale: number;
}

export interface WireframeDoc {
  id: string;
  center: [number, number];
  width: number;
  depth: number;
  yaw: number;
  label: string;
  origin: "user_drawn" | "generated";
  hidden: boolean;
}

export interface WorkspaceDoc {
  version: number;
  ws_id: string;
  name: string;
  revision: number;
  room: RoomDoc;
  objects: ObjectDoc[];
  wireframes: WireframeDoc[];
}

export interface SessionInfo {
  session_id: string;
  active_ws: string;
  workspaces: { ws_id: string; name: string; revision: number }[];
}

export interface SpecDoc {
  spec_id: string;
  category: string;
  style: string;
  material: string;
  dims: [number, number, number];
  placement_class: "floor" | "ceiling";
  display_name: string;
}

export interface SuggestionCandidate {
  spec: SpecDoc;
  pose: { position: [number, number, number]; rotation: number; scale: number };
  clearance: number;
}

export interface SuggestionEffect {
  type: "suggestion";
  suggestion_id: string;
  expires: number;
  candidates: SuggestionCandidate[];
}

export interface MutationEffect {
  type: "mutation";
  revision: number;
  added: string[];
  removed?: string[];
  updated?: string[];
  clamped?: string[];
  status?: string;
}

export interface ReportEffect {
  type: "report";
  revision: number;
  added: string[];
  warnings: { code: string; category: string; message: string }[];
  status?: string;
}

export type CommandEffect = SuggestionEffect | MutationEffect | ReportEffect;

export interface CommandResponse {
  intent: { kind: string; [key: string]: unknown };
  ignored_terms: string[];
  confidence: "exact" | "fuzzy";
  status: string;
  effect: CommandEffect;
}

export interface CheckDoc {
  check_id: string;
  passed: boolean;
  details: string[];
}

export interface ValidationDoc {
  checks: CheckDoc[];
  violations: { kind: string; ids: string[]; detail: string }[];
  score: number;
  passed: boolean;
  revision: number;
}

export interface ChangeSet {
  objects_added?: ObjectDoc[];
  objects_removed?: string[];
  objects_updated?: ObjectDoc[];
  wireframes_added?: WireframeDoc[];
  wireframes_removed?: string[];
  wireframes_updated?: WireframeDoc[];
}

export interface CreatedEvent {
  revision: number;
  action: "created";
  ws_id: string;
  name: string;
  room: RoomDoc;
}

export interface ImportedEvent {
  revision: number;
  action: "imported";
  document: WorkspaceDoc;
}

export interface ChangeEvent {
  revision: number;
  action: string;
  changes: ChangeSet;
}

export type PushEvent = CreatedEvent | ImportedEvent | ChangeEvent;

export function isCreatedEvent(event: PushEvent): event is CreatedEvent {
  return event.action === "created";
}

export function isImportedEvent(event: PushEvent): event is ImportedEvent {
  return event.action === "imported";
}

export interface ErrorEnvelope {
  error: { code: string; message: string; details: Record<string, unknown> };
  status?: string;
}

export class ApiError extends Error {
  readonly code: string;
  readonly spoken?: string;

  constructor(envelope: ErrorEnvelope, httpStatus: number) {
    super(`${envelope.error.code} (${httpStatus}): ${envelope.error.message}`);
    this.code = envelope.error.code;
    this.spoken = envelope.status;
  }
}
