/**
 * Push-channel reader over fetch streaming.
 *
 * EventSource is unavailable in some runtimes the client must support
 * (tests run under Node), so the SSE stream is parsed by hand from a
 * streamed fetch body. Reconnects resume from the last seen revision,
 * which the server replays losslessly.
 */

import { PushEvent } from "./types.js";

export type EventHandler = (event: PushEvent) => void;

export class PushChannel {
  private controller: AbortController | null = null;
  private lastRevision = -1;
  private closed = false;
  private retryDelayMs = 250;

  constructor(
    private readonly baseUrl: string,
    private readonly sessionId: string,
    private readonly wsId: string,
    private readonly onEvent: EventHandler,
    private readonly fromRevision = 0,
  ) {}

  /** Resolves once the stream has caught up to `untilRevision`. */
  async waitForRevision(untilRevision: number, timeoutMs = 10000): Promise<void> {
    const start = Date.now();
    while (this.lastRevision < untilRevision) {
      if (this.closed) throw new Error("push channel closed");
      if (Date.now() - start > timeoutMs) {
        throw new Error(
          `timed out waiting for revision ${untilRevision} (at ${this.lastRevision})`,
        );
      }
      await new Promise((resolve) => setTimeout(resolve, 10));
    }
  }

  get revision(): number {
    return this.lastRevision;
  }

  open(): void {
    this.closed = false;
    void this.run();
  }

  close(): void {
    this.closed = true;
    this.controller?.abort();
  }

  private async run(): Promise<void> {
    while (!this.closed) {
      try {
        await this.consumeStream();
      } catch {
        // fall through to the retry delay
      }
      if (this.closed) return;
      await new Promise((resolve) => setTimeout(resolve, this.retryDelayMs));
      this.retryDelayMs = Math.min(this.retryDelayMs * 2, 5000);
    }
  }

  private async consumeStream(): Promise<void> {
    this.controller = new AbortController();
    const from = this.lastRevision >= 0 ? this.lastRevision + 1 : this.fromRevision;
    const params = new URLSearchParams({
      session: this.sessionId,
      ws: this.wsId,
      from: String(from),
    });
    const response = await fetch(`${this.baseUrl}/v1/events?${params}`, {
      signal: this.controller.signal,
    });
    if (!response.ok || !response.body) {
      throw new Error(`push channel rejected: ${response.status}`);
    }
    this.retryDelayMs = 250;
    const reader = response.body.getReader();
    const decoder = new TextDecoder();
    let buffer = "";
    for (;;) {
      const { done, value } = await reader.read();
      if (done) return;
      buffer += decoder.decode(value, { stream: true });
      let split: number;
      while ((split = buffer.indexOf("\n\n")) >= 0) {
        const block = buffer.slice(0, split);
        buffer = buffer.slice(split + 2);
        this.handleBlock(block);
      }
    }
  }

  private handleBlock(block: string): void {
    for (const line of block.split("\n")) {
      if (!line.startsWith("data: ")) continue;
      const event = JSON.parse(line.slice("data: ".length)) as PushEvent;
      if (event.revision <= this.lastRevision) continue;
      this.lastRevision = event.revision;
      this.onEvent(event);
    }
  }
}
