/** Thin fetch client for the /v1 endpoints; no state of its own. */

import {
  ApiError,
  CommandResponse,
  ErrorEnvelope,
  MutationEffect,
  ReportEffect,
  RoomDoc,
  SessionInfo,
  SpecDoc,
  ValidationDoc,
  WorkspaceDoc,
} from "./types.js";

async function decode<T>(response: Response): Promise<T> {
  const body = await response.json();
  if (!response.ok) {
    throw new ApiError(body as ErrorEnvelope, response.status);
  }
  return body as T;
}

export class ApiClient {
  constructor(readonly baseUrl: string) {}

  private async post<T>(path: string, body?: unknown): Promise<T> {
    const response = await fetch(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body ?? {}),
    });
    return decode<T>(response);
  }

  private async get<T>(path: string): Promise<T> {
    return decode<T>(await fetch(`${this.baseUrl}${path}`));
  }

  createSession(room: RoomDoc, workspaceCount = 1): Promise<SessionInfo> {
    return this.post("/v1/sessions", { room, workspace_count: workspaceCount });
  }

  getSession(sid: string): Promise<SessionInfo> {
    return this.get(`/v1/sessions/${sid}`);
  }

  createWorkspace(sid: string, name = ""): Promise<WorkspaceDoc> {
    return this.post(`/v1/sessions/${sid}/workspaces`, { name });
  }

  switchWorkspace(sid: string, wsId: string): Promise<SessionInfo> {
    return this.post(`/v1/sessions/${sid}/workspaces/${wsId}/switch`);
  }

  exportWorkspace(sid: string, wsId: string): Promise<WorkspaceDoc> {
    return this.get(`/v1/sessions/${sid}/workspaces/${wsId}`);
  }

  submitCommand(
    sid: string,
    wsId: string,
    payload: {
      text: string;
      pointer?: [number, number];
      stroke?: [number, number][];
      selection?: string[];
    },
  ): Promise<CommandResponse> {
    return this.post(`/v1/sessions/${sid}/workspaces/${wsId}/command`, payload);
  }

  choose(sid: string, wsId: string, suggestionId: string, index: number): Promise<MutationEffect> {
    return this.post(`/v1/sessions/${sid}/workspaces/${wsId}/choose`, {
      suggestion_id: suggestionId,
      index,
    });
  }

  complete(
    sid: string,
    wsId: string,
    options: { seed?: number; respect_openings?: boolean } = {},
  ): Promise<ReportEffect> {
    return this.post(`/v1/sessions/${sid}/workspaces/${wsId}/complete`, options);
  }

  generateWireframes(
    sid: string,
    wsId: string,
    options: { seed?: number; respect_openings?: boolean } = {},
  ): Promise<ReportEffect> {
    return this.post(`/v1/sessions/${sid}/workspaces/${wsId}/wireframes/generate`, options);
  }

  populate(sid: string, wsId: string): Promise<ReportEffect> {
    return this.post(`/v1/sessions/${sid}/workspaces/${wsId}/populate`);
  }

  abstract(sid: string, wsId: string): Promise<ReportEffect> {
    return this.post(`/v1/sessions/${sid}/workspaces/${wsId}/abstract`);
  }

  validate(sid: string, wsId: string, goals?: Record<string, unknown>): Promise<ValidationDoc> {
    return this.post(`/v1/sessions/${sid}/workspaces/${wsId}/validate`, goals ? { goals } : {});
  }

  mutate(sid: string, wsId: string, op: Record<string, unknown>): Promise<MutationEffect> {
    return this.post(`/v1/sessions/${sid}/workspaces/${wsId}/mutate`, op);
  }

  copy(sid: string, wsId: string, targets: string[]): Promise<{ copied: number }> {
    return this.post(`/v1/sessions/${sid}/clipboard/copy`, { ws_id: wsId, targets });
  }

  paste(sid: string, wsId: string, anchor: [number, number]): Promise<MutationEffect> {
    return this.post(`/v1/sessions/${sid}/workspaces/${wsId}/paste`, { anchor });
  }

  catalog(filter: { category?: string } = {}): Promise<{
    items: SpecDoc[];
    categories: string[];
    styles: string[];
    materials: string[];
  }> {
    const params = new URLSearchParams();
    if (filter.category) params.set("category", filter.category);
    const query = params.toString();
    return this.get(`/v1/catalog${query ? `?${query}` : ""}`);
  }
}
