/**
 * Side panel models: pure functions from state to render-ready strings,
 * kept separate from the DOM so they unit test headlessly.
 */

import { TownState } from "./state.js";

export interface PanelModel {
  title: string;
  action: string;
  location: string;
  plan: string[];
  memoryTail: string[];
}

export function buildPanel(state: TownState): PanelModel | null {
  if (!state.selected) return null;
  const detail = state.detail(state.selected);
  if (!detail) return null;
  const memoryTail = detail.recentEvents
    .filter((e) => ["percept", "dialogue_turn", "reflection", "action_start"]
      .includes(e.kind))
    .map((e) => {
      if (e.kind === "dialogue_turn") {
        return `${e.payload.speaker}: "${e.payload.utterance}"`;
      }
      if (e.kind === "reflection") {
        return `(reflects) ${e.payload.statement}`;
      }
      if (e.kind === "percept") {
        return `(sees) ${e.payload.text}`;
      }
      return String(e.payload.action ?? "");
    })
    .slice(-12);
  return {
    title: detail.view.name,
    action: detail.view.action,
    location: detail.view.location,
    plan: detail.planToday.slice(-10),
    memoryTail,
  };
}

export function statusLine(state: TownState): string {
  const link = state.connected ? "connected" : "reconnecting…";
  const pause = state.paused ? " ⏸" : "";
  return `${state.date} ${state.clock} · tick ${state.tick}${pause} · ${link}`;
}
