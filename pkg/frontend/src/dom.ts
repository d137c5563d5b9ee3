/** Render layer: one full re-render per state change; all stimulus text
 * comes from server-delivered scripts. */

import { BLACKOUT_FADE_MS, AGE_OPTIONS, EDUCATION_OPTIONS, GENDER_OPTIONS } from "./config.js";
import { ExperimentController } from "./controller.js";
import { isClickable, markers } from "./markers.js";
import { answerOptions, ViewState } from "./state.js";

const MARKER_POSITIONS: Record<number, { x: number; y: number; label: string }> = {
  1: { x: 12, y: 72, label: "Salesman" },
  2: { x: 30, y: 58, label: "Gate" },
  3: { x: 48, y: 42, label: "Butcher" },
  4: { x: 62, y: 55, label: "Auction" },
  5: { x: 82, y: 70, label: "Bandits" },
  6: { x: 58, y: 22, label: "Doctor" },
  7: { x: 74, y: 30, label: "Mayor" },
};

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function select(id: string, labelText: string, options: Array<string | number>): HTMLElement {
  const wrap = el("label", "field");
  wrap.appendChild(el("span", "field-label", labelText));
  const sel = el("select");
  sel.id = id;
  for (const option of options) {
    const opt = el("option", undefined, String(option));
    opt.value = String(option);
    sel.appendChild(opt);
  }
  wrap.appendChild(sel);
  return wrap;
}

function renderWelcome(root: HTMLElement, controller: ExperimentController): void {
  const panel = el("div", "panel welcome");
  panel.appendChild(el("h1", undefined, "Welcome, traveller"));
  panel.appendChild(
    el("p", undefined, "Tell us a little about yourself, or leave the fields empty, and step into the village."),
  );
  panel.appendChild(select("gender", "Gender", GENDER_OPTIONS));
  panel.appendChild(select("age", "Age", AGE_OPTIONS));
  panel.appendChild(select("education", "Education", EDUCATION_OPTIONS));

  const play = el("button", "primary", "Play");
  play.id = "play";
  if (controller.view.failure) play.disabled = true;
  play.onclick = () => {
    const value = (id: string) => (document.getElementById(id) as HTMLSelectElement).value;
    const age = value("age");
    void controller.startSession({
      gender: value("gender"),
      age: age === "" ? null : Number(age),
      education: value("education"),
    });
  };
  panel.appendChild(play);

  if (controller.view.failure) {
    const failure = el("div", "failure-panel");
    failure.appendChild(el("h2", undefined, "Cannot start"));
    failure.appendChild(el("p", undefined, controller.view.failure));
    panel.appendChild(failure);
  }
  root.appendChild(panel);
}

function renderHud(root: HTMLElement, view: ViewState): void {
  const session = view.session;
  if (!session) return;
  const hud = el("div", "hud");

  const healthWrap = el("div", "health");
  const bar = el("div", "health-bar");
  const fill = el("div", "health-fill");
  fill.style.width = `${(session.health / 250) * 100}%`;
  bar.appendChild(fill);
  healthWrap.appendChild(bar);
  healthWrap.appendChild(el("span", "health-label", session.health_display));
  hud.appendChild(healthWrap);

  const gold = el("div", "gold");
  gold.appendChild(el("span", "gold-amount", `${session.gold_display} gold`));
  if (session.bonus_display) gold.appendChild(el("span", "gold-bonus", session.bonus_display));
  hud.appendChild(gold);

  root.appendChild(hud);
}

function renderMap(root: HTMLElement, controller: ExperimentController): void {
  const view = controller.view;
  if (!view.session) return;
  const map = el("div", "map");
  for (const marker of markers(view.session, view.availableTasks)) {
    const pos = MARKER_POSITIONS[marker.taskId]!;
    const button = el("button", `marker ${marker.status}${marker.visuallyGated ? " gated" : ""}`);
    button.style.left = `${pos.x}%`;
    button.style.top = `${pos.y}%`;
    button.dataset.task = String(marker.taskId);
    const badge = marker.status === "solved" ? " ✓" : marker.status === "locked" ? " 🔒" : "";
    button.textContent = pos.label + badge;
    button.disabled = !isClickable(marker);
    button.onclick = () => void controller.openDialogue(marker.taskId);
    map.appendChild(button);
  }
  root.appendChild(map);
}

function renderDialogue(root: HTMLElement, controller: ExperimentController): void {
  const dialogue = controller.view.dialogue;
  if (!dialogue) return;
  const overlay = el("div", "modal-overlay");
  const modal = el("div", "modal dialogue");
  modal.appendChild(el("h2", "npc-name", dialogue.script.npc_name));

  if (!dialogue.answered) {
    modal.appendChild(el("p", "question", dialogue.script.question));
    const [certain, risky] = answerOptions(dialogue);
    for (const [index, text] of [certain, risky].entries()) {
      const button = el("button", "answer", text);
      button.dataset.choice = String(index + 1);
      button.onclick = () => void controller.submitAnswer((index + 1) as 1 | 2);
      modal.appendChild(button);
    }
  } else {
    modal.appendChild(el("p", "continuation", dialogue.continuation ?? ""));
    const cont = el("button", "primary continue", "Continue");
    cont.onclick = () => void controller.continueDialogue();
    modal.appendChild(cont);
  }
  overlay.appendChild(modal);
  root.appendChild(overlay);
}

function renderComplete(root: HTMLElement): void {
  const panel = el("div", "panel complete");
  panel.appendChild(el("h1", undefined, "Quest complete"));
  panel.appendChild(el("p", undefined, "Your answers have been recorded. Thank you for playing!"));
  root.appendChild(panel);
}

export class Renderer {
  private toastTimer: number | null = null;
  private blackoutTimer: number | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly controller: ExperimentController,
  ) {}

  render(view: ViewState): void {
    this.root.textContent = "";
    switch (view.screen) {
      case "welcome":
        renderWelcome(this.root, this.controller);
        break;
      case "map":
      case "dialogue":
        renderHud(this.root, view);
        renderMap(this.root, this.controller);
        if (view.screen === "dialogue") renderDialogue(this.root, this.controller);
        break;
      case "blackout": {
        const blackout = el("div", "blackout");
        this.root.appendChild(blackout);
        if (this.blackoutTimer !== null) window.clearTimeout(this.blackoutTimer);
        this.blackoutTimer = window.setTimeout(() => {
          this.blackoutTimer = null;
          void this.controller.finishBlackout();
        }, BLACKOUT_FADE_MS);
        break;
      }
      case "complete":
        renderComplete(this.root);
        break;
    }
    this.renderToasts();
  }

  private renderToasts(): void {
    const now = Date.now();
    const active = this.controller.toasts.active(now);
    const container = el("div", "toasts");
    for (const toast of active) {
      container.appendChild(el("div", "toast", toast.text));
    }
    this.root.appendChild(container);
    if (this.toastTimer !== null) window.clearTimeout(this.toastTimer);
    if (active.length > 0) {
      const nextExpiry = Math.min(...active.map((t) => t.expiresAt));
      this.toastTimer = window.setTimeout(() => {
        this.toastTimer = null;
        this.render(this.controller.view);
      }, Math.max(0, nextExpiry - now));
    }
  }
}
