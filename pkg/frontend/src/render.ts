/**
 * Map rendering split in two: a pure draw-list builder (unit-testable)
 * and a thin canvas painter. Sprites are flat-colored placeholder squares
 * by design; the bubble above each avatar shows the action as emoji, and
 * the full action text appears when an avatar is selected.
 */

import { TownState } from "./state.js";

export const TILE = 16;

export type DrawOp =
  | { op: "tile"; row: number; col: number; wall: boolean }
  | { op: "object"; row: number; col: number; status: string; path: string }
  | { op: "sprite"; row: number; col: number; name: string; color: string;
      selected: boolean }
  | { op: "bubble"; row: number; col: number; emoji: string };

const PALETTE = [
  "#e5735c", "#5c8fe5", "#5ce58f", "#e5c55c", "#a05ce5", "#5ce5dc",
  "#e55ca0", "#8fe55c", "#e5935c", "#5c6be5", "#b8e55c", "#e55c5c",
];

export function spriteColor(name: string): string {
  let hash = 0;
  for (const ch of name) hash = (hash * 31 + ch.charCodeAt(0)) >>> 0;
  return PALETTE[hash % PALETTE.length];
}

export function buildDrawList(state: TownState): DrawOp[] {
  const ops: DrawOp[] = [];
  state.grid.forEach((rowText, row) => {
    for (let col = 0; col < rowText.length; col++) {
      ops.push({ op: "tile", row, col, wall: rowText[col] === "#" });
    }
  });
  for (const object of state.objects.values()) {
    ops.push({
      op: "object",
      row: object.tile[0],
      col: object.tile[1],
      status: object.status,
      path: object.path,
    });
  }
  for (const agent of state.agents.values()) {
    ops.push({
      op: "sprite",
      row: agent.tile[0],
      col: agent.tile[1],
      name: agent.name,
      color: spriteColor(agent.name),
      selected: state.selected === agent.name,
    });
    if (agent.emoji) {
      ops.push({
        op: "bubble",
        row: agent.tile[0],
        col: agent.tile[1],
        emoji: agent.emoji,
      });
    }
  }
  return ops;
}

export function paint(ctx: CanvasRenderingContext2D, ops: DrawOp[]): void {
  ctx.clearRect(0, 0, ctx.canvas.width, ctx.canvas.height);
  for (const op of ops) {
    const x = op.col * TILE;
    const y = op.row * TILE;
    switch (op.op) {
      case "tile":
        ctx.fillStyle = op.wall ? "#3b3a44" : "#8fae6b";
        ctx.fillRect(x, y, TILE, TILE);
        break;
      case "object":
        ctx.fillStyle = "#c9a56a";
        ctx.fillRect(x + 3, y + 3, TILE - 6, TILE - 6);
        break;
      case "sprite":
        ctx.fillStyle = op.color;
        ctx.fillRect(x + 2, y + 2, TILE - 4, TILE - 4);
        if (op.selected) {
          ctx.strokeStyle = "#ffffff";
          ctx.lineWidth = 2;
          ctx.strokeRect(x + 1, y + 1, TILE - 2, TILE - 2);
        }
        break;
      case "bubble": {
        ctx.font = "12px sans-serif";
        const width = ctx.measureText(op.emoji).width + 6;
        ctx.fillStyle = "rgba(255,255,255,0.92)";
        ctx.fillRect(x - 2, y - 14, width, 14);
        ctx.fillText(op.emoji, x + 1, y - 3);
        break;
      }
    }
  }
}

export function hitTile(px: number, py: number): [number, number] {
  return [Math.floor(py / TILE), Math.floor(px / TILE)];
}
