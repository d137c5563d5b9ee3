import { describe, expect, it } from "vitest";

import { isClickable, markers } from "../src/markers.js";
import type { SessionStateView } from "../src/types.js";

function sessionView(overrides: Partial<SessionStateView> = {}): SessionStateView {
  return {
    session_id: "s",
    version: 1,
    health: 1,
    health_display: "1/250",
    gold_display: "12",
    bonus_display: null,
    solved: [false, false, false, false, false, false, false],
    gate_open: false,
    finalized: false,
    ...overrides,
  };
}

describe("marker derivation", () => {
  it("fresh session: roadside active, everything else locked", () => {
    const result = markers(sessionView(), [1, 2]);
    expect(result.map((m) => m.status)).toEqual([
      "active",
      "active",
      "locked",
      "locked",
      "locked",
      "locked",
      "locked",
    ]);
  });

  it("town markers are visually gated until the gate opens", () => {
    const before = markers(sessionView(), [1, 2]);
    expect(before.filter((m) => m.visuallyGated).map((m) => m.taskId)).toEqual([3, 4, 5]);
    const after = markers(sessionView({ gate_open: true }), [1, 3, 4, 5]);
    expect(after.every((m) => !m.visuallyGated)).toBe(true);
  });

  it("after the ambush the clinic and mayor become active", () => {
    const solved = [true, true, false, false, true, false, false];
    const result = markers(sessionView({ solved, gate_open: true }), [3, 4, 6, 7]);
    expect(result.map((m) => m.status)).toEqual([
      "solved",
      "solved",
      "active",
      "active",
      "solved",
      "active",
      "active",
    ]);
  });

  it("solved and locked markers are not clickable", () => {
    const solved = [true, false, false, false, false, false, false];
    const result = markers(sessionView({ solved }), [2]);
    expect(result.filter(isClickable).map((m) => m.taskId)).toEqual([2]);
  });

  it("button states derive solely from server data", () => {
    // no availability list means nothing is clickable, whatever the flags say
    const result = markers(sessionView({ gate_open: true }), []);
    expect(result.some(isClickable)).toBe(false);
  });
});
