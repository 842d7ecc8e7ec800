/**
 * Client-side view model: the last received authoritative state plus a
 * rolling event feed. The store renders whatever the server said last;
 * there is no client-side simulation, so a reconnect fully resyncs from
 * the next snapshot.
 */

import {
  AgentView,
  ObjectView,
  SimEvent,
  StateDelta,
  StateSnapshot,
} from "./protocol.js";

const FEED_LIMIT = 400;

export interface AgentDetail {
  view: AgentView;
  /** events this agent produced or perceived, newest last */
  recentEvents: SimEvent[];
  planToday: string[];
}

export class TownState {
  grid: string[] = [];
  tick = 0;
  clock = "";
  date = "";
  paused = false;
  connected = false;
  agents = new Map<string, AgentView>();
  objects = new Map<string, ObjectView>();
  feed: SimEvent[] = [];
  selected: string | null = null;
  interviewLog: { question: string; answer: string }[] = [];
  lastError: string | null = null;

  applySnapshot(snapshot: StateSnapshot): void {
    this.grid = snapshot.grid;
    this.tick = snapshot.tick;
    this.clock = snapshot.clock;
    this.date = snapshot.date;
    this.paused = snapshot.paused;
    this.agents = new Map(snapshot.agents.map((a) => [a.name, a]));
    this.objects = new Map(snapshot.objects.map((o) => [o.path, o]));
    this.feed = [];
  }

  applyDelta(delta: StateDelta): void {
    this.tick = delta.tick;
    this.clock = delta.clock;
    this.date = delta.date;
    this.paused = delta.paused;
    for (const agent of delta.agents) {
      this.agents.set(agent.name, agent);
    }
    for (const event of delta.events) {
      this.feed.push(event);
      if (event.kind === "object_status") {
        const path = String(event.payload.path ?? "");
        const existing = this.objects.get(path);
        if (existing) {
          existing.status = String(event.payload.status ?? existing.status);
        }
      }
    }
    if (this.feed.length > FEED_LIMIT) {
      this.feed.splice(0, this.feed.length - FEED_LIMIT);
    }
  }

  select(name: string | null): void {
    this.selected = name;
  }

  agentAt(row: number, col: number): AgentView | null {
    for (const agent of this.agents.values()) {
      if (agent.tile[0] === row && agent.tile[1] === col) return agent;
    }
    return null;
  }

  detail(name: string): AgentDetail | null {
    const view = this.agents.get(name);
    if (!view) return null;
    const recentEvents = this.feed.filter((event) => {
      const p = event.payload;
      return (
        p.agent === name ||
        p.speaker === name ||
        (Array.isArray(p.participants) && p.participants.includes(name))
      );
    });
    const planToday = recentEvents
      .filter((e) => e.kind === "plan")
      .map((e) => String(e.payload.description ?? ""));
    return { view, recentEvents: recentEvents.slice(-40), planToday };
  }

  recordInterview(question: string, answer: string): void {
    this.interviewLog.push({ question, answer });
  }
}
