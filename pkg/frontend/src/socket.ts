/**
 * WebSocket client with command/acknowledgment correlation and automatic
 * reconnect. On reconnect the server sends a fresh snapshot, so the view
 * resynchronizes with no client-side bookkeeping.
 */

import {
  CommandAck,
  CommandDraft,
  ServerError,
  ServerMessage,
  commandMessage,
  nextCommandId,
  parseServerMessage,
  validateDraft,
} from "./protocol.js";

export type MessageHandler = (message: ServerMessage) => void;
export type StatusHandler = (connected: boolean) => void;

interface Pending {
  resolve: (ack: CommandAck) => void;
  reject: (error: Error) => void;
}

export class TownSocket {
  private socket: WebSocket | null = null;
  private pending = new Map<string, Pending>();
  private closed = false;
  private retryDelay = 500;

  constructor(
    private url: string,
    private onMessage: MessageHandler,
    private onStatus: StatusHandler,
  ) {}

  connect(): void {
    this.closed = false;
    const socket = new WebSocket(this.url);
    this.socket = socket;
    socket.onopen = () => {
      this.retryDelay = 500;
      this.onStatus(true);
    };
    socket.onmessage = (event: MessageEvent) => {
      for (const line of String(event.data).split("\n")) {
        if (!line.trim()) continue;
        const message = parseServerMessage(line);
        if (!message) continue; // malformed frames are dropped
        this.route(message);
      }
    };
    socket.onclose = () => {
      this.onStatus(false);
      this.failPending("connection closed");
      if (!this.closed) {
        setTimeout(() => this.connect(), this.retryDelay);
        this.retryDelay = Math.min(this.retryDelay * 2, 8000);
      }
    };
    socket.onerror = () => socket.close();
  }

  private route(message: ServerMessage): void {
    if (message.kind === "command_ack" || message.kind === "error") {
      const cmdId = (message as CommandAck | ServerError).cmd_id;
      if (cmdId && this.pending.has(cmdId)) {
        const pending = this.pending.get(cmdId)!;
        this.pending.delete(cmdId);
        if (message.kind === "command_ack") {
          pending.resolve(message);
        } else {
          pending.reject(new Error(message.message));
        }
        return;
      }
    }
    this.onMessage(message);
  }

  private failPending(reason: string): void {
    for (const pending of this.pending.values()) {
      pending.reject(new Error(reason));
    }
    this.pending.clear();
  }

  /**
   * Validate and send a command; resolves with the server's ack or
   * rejects with the server's diagnostic. Invalid drafts reject locally
   * without touching the network.
   */
  send(draft: CommandDraft): Promise<CommandAck> {
    const problem = validateDraft(draft);
    if (problem) {
      return Promise.reject(new Error(problem));
    }
    const socket = this.socket;
    if (!socket || socket.readyState !== WebSocket.OPEN) {
      return Promise.reject(new Error("not connected"));
    }
    const cmdId = nextCommandId();
    return new Promise((resolve, reject) => {
      this.pending.set(cmdId, { resolve, reject });
      socket.send(commandMessage(draft, cmdId));
    });
  }

  close(): void {
    this.closed = true;
    this.socket?.close();
  }
}
