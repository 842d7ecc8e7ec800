/**
 * Wire protocol types and client-side validation.
 *
 * The server speaks newline-delimited JSON messages over a WebSocket;
 * every frame carries exactly one message. The UI never mutates state
 * except by sending `command` messages and re-rendering what comes back.
 */

export interface AgentView {
  name: string;
  tile: [number, number];
  action: string;
  emoji: string;
  location: string;
}

export interface ObjectView {
  path: string;
  status: string;
  tile: [number, number];
}

export interface SimEvent {
  tick: number;
  seq: number;
  kind: string;
  payload: Record<string, unknown>;
}

export interface StateSnapshot {
  kind: "state_snapshot";
  schema_version: number;
  tick: number;
  clock: string;
  date: string;
  paused: boolean;
  grid: string[];
  agents: AgentView[];
  objects: ObjectView[];
}

export interface StateDelta {
  kind: "state_delta";
  tick: number;
  clock: string;
  date: string;
  paused: boolean;
  agents: AgentView[];
  events: SimEvent[];
}

export interface CommandAck {
  kind: "command_ack";
  cmd_id: string;
  status: "queued" | "applied";
  result: Record<string, unknown>;
}

export interface ServerError {
  kind: "error";
  cmd_id?: string;
  message: string;
}

export type ServerMessage = StateSnapshot | StateDelta | CommandAck | ServerError;

export type CommandKind =
  | "interview"
  | "inner_voice"
  | "object_rewrite"
  | "embody_move"
  | "embody_say"
  | "pause"
  | "resume";

export interface CommandDraft {
  kind: CommandKind;
  target: string;
  payload: string;
  persona: string;
}

/** Parse one frame; returns null for malformed or unknown messages. */
export function parseServerMessage(raw: string): ServerMessage | null {
  let data: unknown;
  try {
    data = JSON.parse(raw.trim());
  } catch {
    return null;
  }
  if (typeof data !== "object" || data === null) return null;
  const kind = (data as { kind?: unknown }).kind;
  if (
    kind === "state_snapshot" ||
    kind === "state_delta" ||
    kind === "command_ack" ||
    kind === "error"
  ) {
    return data as ServerMessage;
  }
  return null;
}

const REWRITE_RE = /^<([^>]+)>\s+is\s+(.+)$/;

/**
 * Client-side check of the "<area: subarea: object> is <status>" syntax.
 * Drafts that fail never reach the server.
 */
export function validateRewrite(payload: string): string | null {
  const match = REWRITE_RE.exec(payload.trim());
  if (!match) {
    return 'rewrite must look like "<area: subarea: object> is <status>"';
  }
  const path = match[1];
  if (path.split(":").some((part) => part.trim().length === 0)) {
    return "rewrite path has an empty segment";
  }
  return null;
}

/** Validate any draft before sending; returns an error string or null. */
export function validateDraft(draft: CommandDraft): string | null {
  switch (draft.kind) {
    case "object_rewrite":
      return validateRewrite(draft.payload);
    case "interview":
    case "inner_voice":
      if (!draft.target) return "choose an agent first";
      if (!draft.payload.trim()) return "say something";
      return null;
    case "embody_move":
      if (!draft.payload.trim()) return "name a destination";
      return null;
    case "embody_say":
      if (!draft.payload.trim()) return "say something";
      return null;
    case "pause":
    case "resume":
      return null;
    default:
      return `unknown command kind`;
  }
}

let counter = 0;

export function nextCommandId(): string {
  counter += 1;
  return `ui-${counter}`;
}

export function commandMessage(draft: CommandDraft, cmdId: string): string {
  return (
    JSON.stringify({
      kind: "command",
      cmd_id: cmdId,
      command: {
        kind: draft.kind,
        target: draft.target,
        payload: draft.payload,
        persona: draft.persona,
      },
    }) + "\n"
  );
}
