/**
 * Scripted end-to-end session against a live service: the three creation
 * workflows (automatic, manual, scaffolded), each ending in a workspace
 * that passes the design-goal validator with at least four furniture
 * types, plus the reconnect-and-replay invariant of the push channel.
 */

import { ChildProcess, spawn } from "node:child_process";
import net from "node:net";
import path from "node:path";
import { fileURLToPath } from "node:url";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { AppStore } from "../src/store.js";
import { toDocumentShape } from "../src/state.js";
import { DEFAULT_ROOM } from "../src/app.js";

const REPO_ROOT = path.resolve(path.dirname(fileURLToPath(import.meta.url)), "..", "..");

let server: ChildProcess;
let baseUrl: string;
let store: AppStore;

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const probe = net.createServer();
    probe.listen(0, "127.0.0.1", () => {
      const address = probe.address();
      if (address && typeof address === "object") {
        const port = address.port;
        probe.close(() => resolve(port));
      } else {
        reject(new Error("no port"));
      }
    });
  });
}

async function waitForServer(url: string, timeoutMs = 20000): Promise<void> {
  const start = Date.now();
  for (;;) {
    try {
      const response = await fetch(`${url}/v1/catalog`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    if (Date.now() - start > timeoutMs) throw new Error("service did not come up");
    await new Promise((resolve) => setTimeout(resolve, 150));
  }
}

function canonical(value: unknown): string {
  return JSON.stringify(sortKeys(value));
}

function sortKeys(value: unknown): unknown {
  if (Array.isArray(value)) return value.map(sortKeys);
  if (value && typeof value === "object") {
    return Object.fromEntries(
      Object.entries(value as Record<string, unknown>)
        .sort(([a], [b]) => (a < b ? -1 : 1))
        .map(([k, v]) => [k, sortKeys(v)]),
    );
  }
  return value;
}

beforeAll(async () => {
  const port = await freePort();
  baseUrl = `http://127.0.0.1:${port}`;
  server = spawn("python3", ["-m", "colayout.cli", "serve", "--port", String(port)], {
    cwd: REPO_ROOT,
    stdio: ["ignore", "pipe", "pipe"],
  });
  server.stderr?.on("data", (chunk) => process.stderr.write(chunk));
  await waitForServer(baseUrl);
  store = new AppStore(baseUrl);
  await store.openSession(DEFAULT_ROOM, 3);
  // wait for each workspace's created event so the canvases have rooms
  for (const wsId of store.workspaceIds) {
    await store.waitForRevision(wsId, 0);
  }
});

afterAll(() => {
  store?.close();
  server?.kill();
});

describe("three co-creation workflows against a live service", () => {
  it("automatic: complete fills the room and satisfies the design goals", async () => {
    const wsId = store.workspaceIds[0]!;
    await store.switchWorkspace(wsId);
    await store.completeScene({ seed: 42, respect_openings: true });
    expect(store.active.objects.size).toBeGreaterThanOrEqual(4);

    const report = await store.validate({ min_furniture_types: 4 });
    expect(report).not.toBeNull();
    expect(report!.checks.map((c) => [c.check_id, c.passed])).toEqual([
      ["overlap", true],
      ["bounds", true],
      ["furniture_types", true],
      ["seating", true],
      ["window_top", true],
      ["navigability", true],
      ["door_clearance", true],
    ]);
    expect(report!.passed).toBe(true);
  });

  it("manual: pin + command + choose, four times, passes the goals", async () => {
    const wsId = store.workspaceIds[1]!;
    await store.switchWorkspace(wsId);

    const plan: [string, [number, number]][] = [
      ["Generate a minimalist wooden chair here", [1.0, 0.6]],
      ["place a modern sofa here", [2.0, 2.3]],
      ["create a nightstand here", [3.5, 0.5]],
      ["put a big wardrobe here", [0.4, 1.5]],
    ];
    for (const [text, pin] of plan) {
      store.setTool("point");
      store.setPin(pin);
      const response = await store.submitCommand(text);
      expect(response, text).not.toBeNull();
      expect(response!.effect.type).toBe("suggestion");
      expect(store.pendingPanel).not.toBeNull();
      const count = store.pendingPanel!.suggestion.candidates.length;
      expect(count).toBeGreaterThanOrEqual(1);
      expect(count).toBeLessThanOrEqual(3);
      await store.chooseSuggestion(0);
      expect(store.pendingPanel).toBeNull();
    }
    // the out-of-range descriptor surfaced as feedback, not an error
    expect(store.toasts.some((t) => t.text.includes("ignored: big"))).toBe(true);
    expect(store.active.objects.size).toBe(4);

    const report = await store.validate({ min_furniture_types: 4 });
    expect(report!.passed).toBe(true);
  });

  it("scaffolded: draw + label + generate + populate passes the goals", async () => {
    const wsId = store.workspaceIds[2]!;
    await store.switchWorkspace(wsId);

    // draw a bed-sized stroke on the floor and label it
    store.setTool("draw");
    store.strokePoints = [
      [0.75, 0.95],
      [2.6, 0.9],
      [2.65, 2.3],
      [0.7, 2.35],
      [0.75, 1.0],
    ];
    const marked = await store.finishStroke("bed");
    expect(marked).not.toBeNull();
    expect(marked!.intent.kind).toBe("wireframe_labelling");
    const drawn = [...store.active.wireframes.values()];
    expect(drawn.length).toBe(1);
    expect(drawn[0]!.label).toBe("bed");
    expect(drawn[0]!.origin).toBe("user_drawn");

    // scaffold the rest, convert, and check
    await store.generateWireframes({ seed: 11, respect_openings: true });
    const wireframes = [...store.active.wireframes.values()];
    expect(wireframes.length).toBeGreaterThanOrEqual(4);
    await store.populate();
    expect(store.active.objects.size).toBe(wireframes.length);
    expect([...store.active.wireframes.values()].every((w) => w.hidden)).toBe(true);

    const report = await store.validate({ min_furniture_types: 4 });
    expect(report!.passed).toBe(true);

    // iterate: back to wireframes and populate again
    await store.abstract();
    expect(store.active.objects.size).toBe(0);
    expect([...store.active.wireframes.values()].every((w) => !w.hidden)).toBe(true);
    await store.populate();
    const again = await store.validate({ min_furniture_types: 4 });
    expect(again!.passed).toBe(true);
  });

  it("reconnect-and-replay reproduces the canvas state exactly", async () => {
    const wsId = store.workspaceIds[2]!;
    const before = toDocumentShape(store.workspaces.get(wsId)!);
    const revision = before.revision;
    store.reconnect(wsId);
    await store.waitForRevision(wsId, revision);
    const after = toDocumentShape(store.workspaces.get(wsId)!);
    expect(canonical(after)).toBe(canonical(before));

    // and both agree with the server's exported document
    const exported = await store.api.exportWorkspace(store.sessionId, wsId);
    const { version: _v, ...exportedShape } = exported;
    expect(canonical(after)).toBe(canonical(exportedShape));
  });

  it("errors surface as feedback without mutating state", async () => {
    const wsId = store.workspaceIds[1]!;
    await store.switchWorkspace(wsId);
    const revision = store.active.revision;
    store.setPin(null);
    const response = await store.submitCommand("generate a chair here");
    expect(response).toBeNull(); // missing pointer -> typed error -> toast
    expect(store.toasts.at(-1)?.kind).toBe("error");
    expect(store.active.revision).toBe(revision);
  });
});
