/** Alert toasts. Each toast is visible for exactly TOAST_DURATION_MS. */

export const TOAST_DURATION_MS = 3000;

export interface Toast {
  id: number;
  text: string;
  shownAt: number;
  expiresAt: number;
}

export class ToastQueue {
  private toasts: Toast[] = [];
  private nextId = 1;

  show(text: string, now: number): Toast {
    const toast: Toast = {
      id: this.nextId++,
      text,
      shownAt: now,
      expiresAt: now + TOAST_DURATION_MS,
    };
    this.toasts.push(toast);
    return toast;
  }

  /** Toasts still visible at the given time; expired ones are dropped. */
  active(now: number): Toast[] {
    this.toasts = this.toasts.filter((t) => t.expiresAt > now);
    return [...this.toasts];
  }
}
