/**
 * Live round trip against the real sandbox server: start `serve` on the
 * bundled scenario, connect over WebSocket, and walk the acceptance
 * sequence — 25 avatars with emoji bubbles, an interview answer, a stove
 * rewrite followed by the owner's reaction, and the client-side block of a
 * malformed rewrite.
 */

import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { spawn, ChildProcess } from "node:child_process";
import WebSocket from "ws";

import {
  CommandAck,
  ServerMessage,
  StateDelta,
  commandMessage,
  nextCommandId,
  parseServerMessage,
  validateDraft,
} from "../src/protocol.js";
import { TownState } from "../src/state.js";
import { buildDrawList } from "../src/render.js";

// unique per run so a stray server from an aborted run can't answer
const PORT = 8600 + (process.pid % 300);
let server: ChildProcess;

function waitForServer(): Promise<void> {
  return new Promise((resolve, reject) => {
    const deadline = Date.now() + 60_000;
    const attempt = () => {
      const probe = new WebSocket(`ws://127.0.0.1:${PORT}/ws`);
      probe.on("open", () => {
        probe.close();
        resolve();
      });
      probe.on("error", () => {
        if (Date.now() > deadline) reject(new Error("server never came up"));
        else setTimeout(attempt, 500);
      });
    };
    attempt();
  });
}

class TestClient {
  socket!: WebSocket;
  state = new TownState();
  private queue: ServerMessage[] = [];
  private waiters: ((m: ServerMessage) => void)[] = [];

  async connect(): Promise<void> {
    this.socket = new WebSocket(`ws://127.0.0.1:${PORT}/ws`);
    // listener first: the server sends the snapshot the moment it attaches
    this.socket.on("message", (data) => {
      for (const line of data.toString().split("\n")) {
        if (!line.trim()) continue;
        const message = parseServerMessage(line);
        if (!message) continue;
        if (message.kind === "state_snapshot") this.state.applySnapshot(message);
        if (message.kind === "state_delta") this.state.applyDelta(message);
        const waiter = this.waiters.shift();
        if (waiter) waiter(message);
        else this.queue.push(message);
      }
    });
    await new Promise<void>((resolve, reject) => {
      this.socket.on("open", () => resolve());
      this.socket.on("error", reject);
    });
  }

  next(timeoutMs = 30_000): Promise<ServerMessage> {
    const queued = this.queue.shift();
    if (queued) return Promise.resolve(queued);
    return new Promise((resolve, reject) => {
      const timer = setTimeout(() => reject(new Error("timed out")), timeoutMs);
      this.waiters.push((m) => {
        clearTimeout(timer);
        resolve(m);
      });
    });
  }

  async nextOfKind<T extends ServerMessage>(kind: string, limit = 500): Promise<T> {
    for (let i = 0; i < limit; i++) {
      const message = await this.next();
      if (message.kind === kind) return message as T;
    }
    throw new Error(`no ${kind} seen in ${limit} messages`);
  }

  send(draft: Parameters<typeof validateDraft>[0]): string {
    const problem = validateDraft(draft);
    if (problem) throw new Error(problem);
    const cmdId = nextCommandId();
    this.socket.send(commandMessage(draft, cmdId));
    return cmdId;
  }

  close(): void {
    this.socket.close();
  }
}

beforeAll(async () => {
  server = spawn(
    "python3",
    ["-m", "townsim", "serve", "--scenario", "valentine",
     "--port", String(PORT), "--tick-seconds", "0.05", "--ticks", "2880"],
    { cwd: "..", stdio: ["ignore", "pipe", "pipe"] },
  );
  server.stderr?.on("data", (d) => process.stderr.write(d));
  await waitForServer();
}, 90_000);

afterAll(() => {
  server?.kill("SIGKILL");
});

describe("UI round trip against the live server", () => {
  it("renders 25 avatars with emoji bubbles, interviews an agent, and sees "
     + "the stove reaction within 5 ticks", async () => {
    const client = new TestClient();
    await client.connect();

    const snapshot = await client.nextOfKind("state_snapshot");
    expect(snapshot.kind).toBe("state_snapshot");
    expect(client.state.agents.size).toBe(25);
    const ops = buildDrawList(client.state);
    expect(ops.filter((o) => o.op === "sprite")).toHaveLength(25);
    expect(ops.filter((o) => o.op === "bubble")).toHaveLength(25);

    // interview: command in, answer displayed in the conversation panel
    client.send({
      kind: "interview", target: "Klaus Mueller",
      payload: "Give an introduction of yourself.", persona: "a reporter",
    });
    const ack = await client.nextOfKind<CommandAck>("command_ack");
    expect(ack.status).toBe("applied");
    const answer = String(ack.result.answer ?? "");
    expect(answer).toContain("Oak Hill College");
    expect(answer).toContain("sociology");
    client.state.recordInterview("Give an introduction of yourself.", answer);
    expect(client.state.interviewLog).toHaveLength(1);

    // malformed rewrite: blocked client-side, never sent
    expect(() => client.send({
      kind: "object_rewrite", target: "", payload: "stove burning", persona: "",
    })).toThrow(/must look like/);

    // valid rewrite: queued, applied at a tick boundary, and the owner
    // reacts within five ticks of the application (the server's own
    // user_command event marks the applied tick)
    client.send({
      kind: "object_rewrite", target: "",
      payload: "<Isabella's apartment: kitchen: stove> is burning", persona: "",
    });
    const rewriteAck = await client.nextOfKind<CommandAck>("command_ack");
    expect(rewriteAck.status).toBe("queued");

    let appliedTick: number | null = null;
    let reactionTick: number | null = null;
    for (let i = 0; i < 400 && reactionTick === null; i++) {
      const deltaMsg = await client.nextOfKind<StateDelta>("state_delta");
      for (const event of deltaMsg.events) {
        if (event.kind === "user_command"
            && event.payload.command === "object_rewrite") {
          appliedTick = event.tick;
        }
        if (event.kind === "plan"
            && event.payload.level === "reaction"
            && event.payload.agent === "Isabella Rodriguez"
            && String(event.payload.description).includes("stove")) {
          reactionTick = event.tick;
        }
      }
      if (appliedTick !== null && deltaMsg.tick > appliedTick + 10) break;
    }
    expect(appliedTick).not.toBeNull();
    expect(reactionTick).not.toBeNull();
    expect(reactionTick! - appliedTick!).toBeLessThanOrEqual(5);

    // the stove's status change reached the client's object table
    expect(client.state.objects.get("Isabella's apartment: kitchen: stove")?.status)
      .toBe("burning");

    client.close();
  }, 120_000);
});
