/** Pure view-state machine for the client.
 *
 * Screens: welcome -> map <-> dialogue, with a blackout interlude after the
 * ambush task and a terminal complete screen. Two invariants are enforced
 * here rather than in the render layer: the dialogue screen exists only
 * while a question is open, and the completion screen shows exactly when the
 * session is finalized.
 */

import type { AnswerResponse, DialogueScript, SessionStateView } from "./types.js";

export type Screen = "welcome" | "map" | "dialogue" | "blackout" | "complete";

export interface DialogueState {
  taskId: number;
  script: DialogueScript;
  answered: boolean;
  continuation: string | null;
  openedAt: number; // clock ms; response timer starts at modal open
}

export interface ViewState {
  screen: Screen;
  sessionId: string | null;
  session: SessionStateView | null;
  availableTasks: number[];
  dialogue: DialogueState | null;
  pendingBlackout: boolean;
  failure: string | null;
}

export const initialView: ViewState = {
  screen: "welcome",
  sessionId: null,
  session: null,
  availableTasks: [],
  dialogue: null,
  pendingBlackout: false,
  failure: null,
};

function topLevelScreen(session: SessionStateView | null): Screen {
  return session?.finalized ? "complete" : "map";
}

export function sessionStarted(view: ViewState, sessionId: string, session: SessionStateView): ViewState {
  return {
    ...view,
    screen: topLevelScreen(session),
    sessionId,
    session,
    availableTasks: [],
    dialogue: null,
    failure: null,
  };
}

export function stateRefreshed(
  view: ViewState,
  session: SessionStateView,
  availableTasks: number[],
): ViewState {
  return {
    ...view,
    session,
    availableTasks,
    screen: view.screen === "dialogue" || view.screen === "blackout" ? view.screen : topLevelScreen(session),
  };
}

export function dialogueOpened(
  view: ViewState,
  taskId: number,
  script: DialogueScript,
  openedAt: number,
): ViewState {
  return {
    ...view,
    screen: "dialogue",
    dialogue: { taskId, script, answered: false, continuation: null, openedAt },
  };
}

/** The two answer options in render order; the certain option is always first. */
export function answerOptions(dialogue: DialogueState): [string, string] {
  return [dialogue.script.answer_one, dialogue.script.answer_two];
}

export function answerAccepted(view: ViewState, response: AnswerResponse): ViewState {
  if (!view.dialogue) return view;
  const blackout = response.effects.effects.some((e) => e.kind === "blackout_relocate");
  return {
    ...view,
    session: response.state,
    dialogue: { ...view.dialogue, answered: true, continuation: response.continuation },
    pendingBlackout: view.pendingBlackout || blackout,
  };
}

export function dialogueClosed(view: ViewState): ViewState {
  const next: ViewState = { ...view, dialogue: null };
  if (view.session?.finalized) return { ...next, screen: "complete", pendingBlackout: false };
  if (view.pendingBlackout) return { ...next, screen: "blackout", pendingBlackout: false };
  return { ...next, screen: "map" };
}

export function blackoutFinished(view: ViewState): ViewState {
  if (view.screen !== "blackout") return view;
  return { ...view, screen: topLevelScreen(view.session) };
}

export function serviceUnavailable(view: ViewState, message: string): ViewState {
  return { ...view, failure: message };
}
