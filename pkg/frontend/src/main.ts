/** Browser entry point: wires socket, state, canvas, and the command bar. */

import { CommandDraft, CommandKind } from "./protocol.js";
import { TownState } from "./state.js";
import { TILE, buildDrawList, hitTile, paint } from "./render.js";
import { buildPanel, statusLine } from "./panel.js";
import { TownSocket } from "./socket.js";

const state = new TownState();

const canvas = document.getElementById("map") as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;
const statusEl = document.getElementById("status")!;
const panelEl = document.getElementById("panel")!;
const feedEl = document.getElementById("feed")!;
const formEl = document.getElementById("command-form") as HTMLFormElement;
const kindEl = document.getElementById("cmd-kind") as HTMLSelectElement;
const targetEl = document.getElementById("cmd-target") as HTMLSelectElement;
const personaEl = document.getElementById("cmd-persona") as HTMLInputElement;
const payloadEl = document.getElementById("cmd-payload") as HTMLInputElement;
const noticeEl = document.getElementById("notice")!;
const conversationEl = document.getElementById("conversation")!;
const pauseEl = document.getElementById("pause") as HTMLButtonElement;

const wsUrl = `ws://${location.host}/ws`;
const socket = new TownSocket(
  wsUrl,
  (message) => {
    if (message.kind === "state_snapshot") {
      state.applySnapshot(message);
      canvas.width = (state.grid[0]?.length ?? 0) * TILE;
      canvas.height = state.grid.length * TILE;
      refreshTargets();
    } else if (message.kind === "state_delta") {
      state.applyDelta(message);
    } else if (message.kind === "error") {
      notice(message.message, true);
    }
    render();
  },
  (connected) => {
    state.connected = connected;
    render();
  },
);
socket.connect();

function refreshTargets(): void {
  targetEl.innerHTML = "";
  for (const name of [...state.agents.keys()].sort()) {
    const option = document.createElement("option");
    option.value = name;
    option.textContent = name;
    targetEl.appendChild(option);
  }
}

function notice(text: string, isError = false): void {
  noticeEl.textContent = text;
  noticeEl.className = isError ? "error" : "ok";
}

canvas.addEventListener("click", (event) => {
  const rect = canvas.getBoundingClientRect();
  const [row, col] = hitTile(event.clientX - rect.left, event.clientY - rect.top);
  const agent = state.agentAt(row, col);
  state.select(agent ? agent.name : null);
  if (agent) targetEl.value = agent.name;
  render();
});

pauseEl.addEventListener("click", () => {
  const kind: CommandKind = state.paused ? "resume" : "pause";
  socket.send({ kind, target: "", payload: "", persona: "" }).then(render);
});

formEl.addEventListener("submit", (event) => {
  event.preventDefault();
  const draft: CommandDraft = {
    kind: kindEl.value as CommandKind,
    target: targetEl.value,
    payload: payloadEl.value,
    persona: personaEl.value,
  };
  socket
    .send(draft)
    .then((ack) => {
      if (draft.kind === "interview") {
        state.recordInterview(draft.payload, String(ack.result.answer ?? ""));
      }
      notice(`${draft.kind}: ${ack.status}`);
      payloadEl.value = "";
      render();
    })
    .catch((error: Error) => notice(error.message, true));
});

function render(): void {
  paint(ctx, buildDrawList(state));
  statusEl.textContent = statusLine(state);

  const panel = buildPanel(state);
  if (panel) {
    panelEl.innerHTML = "";
    const head = document.createElement("h2");
    head.textContent = panel.title;
    const action = document.createElement("p");
    action.textContent = panel.action;
    action.className = "action";
    const location = document.createElement("p");
    location.textContent = panel.location;
    location.className = "muted";
    panelEl.append(head, action, location);
    if (panel.plan.length) {
      panelEl.append(sectionList("Plan today", panel.plan));
    }
    if (panel.memoryTail.length) {
      panelEl.append(sectionList("Recent memories", panel.memoryTail));
    }
  } else {
    panelEl.innerHTML = "<p class='muted'>Click an avatar to inspect it.</p>";
  }

  feedEl.innerHTML = "";
  for (const event of state.feed.slice(-14)) {
    const line = document.createElement("div");
    line.textContent = `[${event.tick}] ${event.kind}: ${summarize(event.payload)}`;
    feedEl.appendChild(line);
  }

  conversationEl.innerHTML = "";
  for (const entry of state.interviewLog.slice(-6)) {
    const q = document.createElement("p");
    q.textContent = `You: ${entry.question}`;
    q.className = "you";
    const a = document.createElement("p");
    a.textContent = entry.answer;
    conversationEl.append(q, a);
  }
  pauseEl.textContent = state.paused ? "Resume" : "Pause";
}

function sectionList(title: string, items: string[]): HTMLElement {
  const wrap = document.createElement("div");
  const head = document.createElement("h3");
  head.textContent = title;
  wrap.appendChild(head);
  const list = document.createElement("ul");
  for (const item of items) {
    const li = document.createElement("li");
    li.textContent = item;
    list.appendChild(li);
  }
  wrap.appendChild(list);
  return wrap;
}

function summarize(payload: Record<string, unknown>): string {
  const text = payload.text ?? payload.action ?? payload.utterance ??
    payload.description ?? payload.statement ?? payload.status ?? "";
  const who = payload.agent ?? payload.speaker ?? payload.path ?? "";
  return `${who} ${text}`.trim().slice(0, 90);
}

setInterval(render, 500);
