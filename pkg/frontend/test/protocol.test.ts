import { describe, expect, it } from "vitest";

import {
  commandMessage,
  parseServerMessage,
  validateDraft,
  validateRewrite,
} from "../src/protocol.js";

describe("rewrite validation", () => {
  it("accepts the documented syntax", () => {
    expect(
      validateRewrite("<Isabella's apartment: kitchen: stove> is burning"),
    ).toBeNull();
  });

  it("blocks drafts missing the ' is ' separator", () => {
    expect(validateRewrite("<kitchen: stove> burning")).toMatch(/must look like/);
  });

  it("blocks drafts without the angle-bracket path", () => {
    expect(validateRewrite("stove is burning")).toMatch(/must look like/);
  });

  it("blocks empty path segments", () => {
    expect(validateRewrite("<a: : stove> is off")).toMatch(/empty segment/);
  });
});

describe("draft validation", () => {
  it("requires a target for interviews", () => {
    expect(
      validateDraft({ kind: "interview", target: "", payload: "Q?", persona: "p" }),
    ).toMatch(/agent/);
    expect(
      validateDraft({ kind: "interview", target: "Ann", payload: "Q?", persona: "p" }),
    ).toBeNull();
  });

  it("rejects rewrites client-side before any network use", () => {
    const error = validateDraft({
      kind: "object_rewrite",
      target: "",
      payload: "stove burning",
      persona: "",
    });
    expect(error).not.toBeNull();
  });
});

describe("message parsing", () => {
  it("parses known kinds", () => {
    const parsed = parseServerMessage(
      JSON.stringify({ kind: "command_ack", cmd_id: "1", status: "applied", result: {} }),
    );
    expect(parsed?.kind).toBe("command_ack");
  });

  it("drops malformed frames", () => {
    expect(parseServerMessage("{oops")).toBeNull();
    expect(parseServerMessage(JSON.stringify({ kind: "mystery" }))).toBeNull();
    expect(parseServerMessage("42")).toBeNull();
  });
});

describe("command encoding", () => {
  it("ends each message with a newline and carries the cmd id", () => {
    const wire = commandMessage(
      { kind: "interview", target: "Ann", payload: "Q?", persona: "r" },
      "ui-9",
    );
    expect(wire.endsWith("\n")).toBe(true);
    const decoded = JSON.parse(wire);
    expect(decoded.cmd_id).toBe("ui-9");
    expect(decoded.command.kind).toBe("interview");
  });
});
