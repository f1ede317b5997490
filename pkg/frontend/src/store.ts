/**
 * Session store: server-authoritative state plus transient UI state.
 *
 * Every workspace is driven by its own push channel; actions go through
 * the API and the canvas updates only when the corresponding events come
 * back. Errors surface as toasts; nothing is rendered optimistically.
 */

import { ApiClient } from "./api.js";
import { PushChannel } from "./events.js";
import { applyEvent, emptyWorkspaceState, WorkspaceState } from "./state.js";
import {
  ApiError,
  CommandResponse,
  PushEvent,
  RoomDoc,
  SuggestionEffect,
  ValidationDoc,
} from "./types.js";

export type Tool = "select" | "draw" | "point" | "pan";

export interface Toast {
  kind: "info" | "error";
  text: string;
}

export interface PendingPanel {
  suggestion: SuggestionEffect;
  ignored: string[];
}

type Listener = () => void;

export class AppStore {
  readonly api: ApiClient;
  sessionId = "";
  workspaceIds: string[] = [];
  activeWsId = "";
  workspaces = new Map<string, WorkspaceState>();
  channels = new Map<string, PushChannel>();

  tool: Tool = "select";
  selection = new Set<string>();
  pin: [number, number] | null = null;
  strokePoints: [number, number][] = [];
  pendingPanel: PendingPanel | null = null;
  lastValidation: ValidationDoc | null = null;
  toasts: Toast[] = [];

  private listeners = new Set<Listener>();

  constructor(baseUrl: string) {
    this.api = new ApiClient(baseUrl);
  }

  // ------------------------------------------------------------ plumbing

  subscribe(listener: Listener): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }

  private notify(): void {
    for (const listener of this.listeners) listener();
  }

  toast(kind: Toast["kind"], text: string): void {
    this.toasts.push({ kind, text });
    if (this.toasts.length > 6) this.toasts.shift();
    this.notify();
  }

  get active(): WorkspaceState {
    return this.workspaces.get(this.activeWsId) ?? emptyWorkspaceState(this.activeWsId);
  }

  // ------------------------------------------------------------- session

  async openSession(room: RoomDoc, workspaceCount = 3): Promise<void> {
    const info = await this.api.createSession(room, workspaceCount);
    this.sessionId = info.session_id;
    this.workspaceIds = info.workspaces.map((w) => w.ws_id);
    this.activeWsId = info.active_ws;
    for (const wsId of this.workspaceIds) {
      this.attachWorkspace(wsId);
    }
    this.notify();
  }

  attachWorkspace(wsId: string): void {
    if (this.channels.has(wsId)) return;
    this.workspaces.set(wsId, emptyWorkspaceState(wsId));
    const channel = new PushChannel(this.api.baseUrl, this.sessionId, wsId, (event) =>
      this.onPush(wsId, event),
    );
    this.channels.set(wsId, channel);
    channel.open();
  }

  /** Drop and rebuild a workspace's state by replaying the event log. */
  reconnect(wsId: string): void {
    this.channels.get(wsId)?.close();
    this.channels.delete(wsId);
    this.workspaces.set(wsId, emptyWorkspaceState(wsId));
    this.attachWorkspace(wsId);
  }

  private onPush(wsId: string, event: PushEvent): void {
    const current = this.workspaces.get(wsId) ?? emptyWorkspaceState(wsId);
    const next = applyEvent(current, event);
    this.workspaces.set(wsId, next);
    if (
      wsId === this.activeWsId &&
      this.pendingPanel &&
      next.revision > this.pendingPanel.suggestion.expires
    ) {
      // the panel went stale: some other mutation advanced the workspace
      this.pendingPanel = null;
    }
    this.notify();
  }

  async waitForRevision(wsId: string, revision: number, timeoutMs = 10000): Promise<void> {
    await this.channels.get(wsId)?.waitForRevision(revision, timeoutMs);
  }

  async createWorkspace(name = ""): Promise<string> {
    const doc = await this.api.createWorkspace(this.sessionId, name);
    this.workspaceIds.push(doc.ws_id);
    this.attachWorkspace(doc.ws_id);
    this.notify();
    return doc.ws_id;
  }

  async switchWorkspace(wsId: string): Promise<void> {
    await this.api.switchWorkspace(this.sessionId, wsId);
    this.activeWsId = wsId;
    this.pendingPanel = null;
    this.selection.clear();
    this.notify();
  }

  // -------------------------------------------------------------- tools

  setTool(tool: Tool): void {
    this.tool = tool;
    if (tool !== "draw") this.strokePoints = [];
    this.notify();
  }

  setPin(point: [number, number] | null): void {
    this.pin = point;
    this.notify();
  }

  setSelection(ids: string[]): void {
    this.selection = new Set(ids);
    this.notify();
  }

  // ------------------------------------------------------------- actions

  private async guarded<T>(work: () => Promise<T>): Promise<T | null> {
    try {
      return await work();
    } catch (error) {
      if (error instanceof ApiError) {
        this.toast("error", error.spoken ?? error.message);
      } else {
        this.toast("error", String(error));
      }
      this.notify();
      return null;
    }
  }

  /** Command bar: text fused with the dropped pin, if any. */
  async submitCommand(text: string): Promise<CommandResponse | null> {
    return this.guarded(async () => {
      const response = await this.api.submitCommand(this.sessionId, this.activeWsId, {
        text,
        pointer: this.pin ?? undefined,
        selection: this.selection.size ? [...this.selection] : undefined,
      });
      await this.afterCommand(response);
      return response;
    });
  }

  /** Draw tool: finish the stroke and label it with a category. */
  async finishStroke(label: string): Promise<CommandResponse | null> {
    const stroke = this.strokePoints;
    this.strokePoints = [];
    if (stroke.length < 2) {
      this.toast("error", "Draw an area on the floor first.");
      return null;
    }
    return this.guarded(async () => {
      const response = await this.api.submitCommand(this.sessionId, this.activeWsId, {
        text: `Mark this area as a ${label.replace(/_/g, " ")}`,
        stroke,
      });
      await this.afterCommand(response);
      return response;
    });
  }

  private async afterCommand(response: CommandResponse): Promise<void> {
    if (response.ignored_terms.length) {
      this.toast("info", `ignored: ${response.ignored_terms.join(", ")}`);
    }
    if (response.effect.type === "suggestion") {
      this.pendingPanel = {
        suggestion: response.effect,
        ignored: response.ignored_terms,
      };
      this.notify();
      return;
    }
    this.toast("info", response.status);
    await this.waitForRevision(this.activeWsId, response.effect.revision);
  }

  async chooseSuggestion(index: number): Promise<void> {
    const panel = this.pendingPanel;
    if (!panel) return;
    await this.guarded(async () => {
      const effect = await this.api.choose(
        this.sessionId,
        this.activeWsId,
        panel.suggestion.suggestion_id,
        index,
      );
      this.pendingPanel = null;
      if (effect.status) this.toast("info", effect.status);
      await this.waitForRevision(this.activeWsId, effect.revision);
      this.notify();
    });
  }

  dismissSuggestions(): void {
    this.pendingPanel = null;
    this.notify();
  }

  async completeScene(options: { seed?: number; respect_openings?: boolean } = {}): Promise<void> {
    await this.guarded(async () => {
      const effect = await this.api.complete(this.sessionId, this.activeWsId, options);
      this.toast("info", effect.status ?? "Completed the room.");
      await this.waitForRevision(this.activeWsId, effect.revision);
    });
  }

  async generateWireframes(
    options: { seed?: number; respect_openings?: boolean } = {},
  ): Promise<void> {
    await this.guarded(async () => {
      const effect = await this.api.generateWireframes(this.sessionId, this.activeWsId, options);
      this.toast("info", effect.status ?? "Generated wireframes.");
      await this.waitForRevision(this.activeWsId, effect.revision);
    });
  }

  async populate(): Promise<void> {
    await this.guarded(async () => {
      const effect = await this.api.populate(this.sessionId, this.activeWsId);
      this.toast("info", effect.status ?? "Populated the wireframes.");
      await this.waitForRevision(this.activeWsId, effect.revision);
    });
  }

  async abstract(): Promise<void> {
    await this.guarded(async () => {
      const effect = await this.api.abstract(this.sessionId, this.activeWsId);
      this.toast("info", effect.status ?? "Switched back to wireframes.");
      await this.waitForRevision(this.activeWsId, effect.revision);
    });
  }

  async validate(goals?: Record<string, unknown>): Promise<ValidationDoc | null> {
    return this.guarded(async () => {
      const report = await this.api.validate(this.sessionId, this.activeWsId, goals);
      this.lastValidation = report;
      this.notify();
      return report;
    });
  }

  /** Direct manipulation goes through the server; the event updates the view. */
  async mutate(op: Record<string, unknown>): Promise<void> {
    await this.guarded(async () => {
      const effect = await this.api.mutate(this.sessionId, this.activeWsId, op);
      if (effect.clamped?.length) this.toast("info", "Stopped at the wall.");
      await this.waitForRevision(this.activeWsId, effect.revision);
    });
  }

  async deleteSelection(): Promise<void> {
    if (!this.selection.size) return;
    const wfIds = [...this.selection].filter((id) => this.active.wireframes.has(id));
    const objIds = [...this.selection].filter((id) => this.active.objects.has(id));
    this.selection.clear();
    if (objIds.length) await this.mutate({ kind: "delete", ids: objIds });
    if (wfIds.length) await this.mutate({ kind: "wf_delete", ids: wfIds });
  }

  close(): void {
    for (const channel of this.channels.values()) channel.close();
    this.channels.clear();
  }
}
