/** Orchestrates the API and the view state; owns no DOM.
 *
 * At most one answer request is in flight: duplicate clicks while a request
 * runs are dropped. A 409 or 423 from a racing tab surfaces as a toast and a
 * state refresh rather than an error screen.
 */

import { ApiError, ExperimentClient } from "./api.js";
import {
  ViewState,
  answerAccepted,
  blackoutFinished,
  dialogueClosed,
  dialogueOpened,
  initialView,
  serviceUnavailable,
  sessionStarted,
  stateRefreshed,
} from "./state.js";
import { ToastQueue } from "./toast.js";
import type { DemographicsInput } from "./types.js";

export type Listener = (view: ViewState) => void;

export class ExperimentController {
  view: ViewState = initialView;
  readonly toasts: ToastQueue;
  private answerInFlight = false;
  private listeners: Listener[] = [];

  constructor(
    private readonly api: ExperimentClient,
    private readonly clock: () => number = () => Date.now(),
    toasts?: ToastQueue,
  ) {
    this.toasts = toasts ?? new ToastQueue();
  }

  onChange(listener: Listener): void {
    this.listeners.push(listener);
  }

  private set(view: ViewState): void {
    this.view = view;
    for (const listener of this.listeners) listener(view);
  }

  async startSession(demographics: DemographicsInput): Promise<void> {
    try {
      const created = await this.api.createSession(demographics);
      this.set(sessionStarted(this.view, created.session_id, created.state));
      await this.refresh();
    } catch (error) {
      if (error instanceof ApiError && error.status === 503) {
        this.set(serviceUnavailable(this.view, "Cannot start: the response store is unavailable."));
        return;
      }
      throw error;
    }
  }

  async refresh(): Promise<void> {
    if (!this.view.sessionId) return;
    const current = await this.api.getSession(this.view.sessionId);
    this.set(stateRefreshed(this.view, current.state, current.available_tasks));
  }

  async openDialogue(taskId: number): Promise<void> {
    if (!this.view.sessionId || this.view.dialogue) return;
    if (!this.view.availableTasks.includes(taskId)) return; // locked or solved marker: no-op
    try {
      const script = await this.api.getQuestion(this.view.sessionId, taskId);
      this.set(dialogueOpened(this.view, taskId, script, this.clock()));
    } catch (error) {
      if (error instanceof ApiError && (error.status === 409 || error.status === 423)) {
        this.toasts.show(error.detail, this.clock());
        await this.refresh();
        return;
      }
      throw error;
    }
  }

  async submitAnswer(choice: 1 | 2): Promise<void> {
    const dialogue = this.view.dialogue;
    if (!this.view.sessionId || !dialogue || dialogue.answered || this.answerInFlight) return;
    this.answerInFlight = true;
    try {
      const elapsed = this.clock() - dialogue.openedAt;
      const response = await this.api.postAnswer(this.view.sessionId, dialogue.taskId, choice, elapsed);
      this.toasts.show(response.effects.alert_text, this.clock());
      this.set(answerAccepted(this.view, response));
    } catch (error) {
      if (error instanceof ApiError && (error.status === 409 || error.status === 423)) {
        this.toasts.show(error.detail, this.clock());
        this.set(dialogueClosed(this.view));
        await this.refresh();
        return;
      }
      throw error;
    } finally {
      this.answerInFlight = false;
    }
  }

  async continueDialogue(): Promise<void> {
    if (!this.view.dialogue?.answered) return;
    this.set(dialogueClosed(this.view));
    if (this.view.screen !== "blackout") await this.refresh();
  }

  async finishBlackout(): Promise<void> {
    this.set(blackoutFinished(this.view));
    await this.refresh();
  }
}
