/** Map marker derivation. Button states come solely from the server's
 * available/solved data, so the client can never offer an interaction the
 * service would reject. */

import type { SessionStateView } from "./types.js";

export type MarkerStatus = "active" | "locked" | "solved";

export interface Marker {
  taskId: number;
  status: MarkerStatus;
  /** tasks inside the town walls, hidden behind the gate until it opens */
  inTown: boolean;
  visuallyGated: boolean;
}

const TOWN_TASKS = new Set([3, 4, 5]);

export function markers(session: SessionStateView, availableTasks: number[]): Marker[] {
  const available = new Set(availableTasks);
  const result: Marker[] = [];
  for (let taskId = 1; taskId <= 7; taskId++) {
    let status: MarkerStatus;
    if (session.solved[taskId - 1]) status = "solved";
    else if (available.has(taskId)) status = "active";
    else status = "locked";
    const inTown = TOWN_TASKS.has(taskId);
    result.push({ taskId, status, inTown, visuallyGated: inTown && !session.gate_open });
  }
  return result;
}

export function isClickable(marker: Marker): boolean {
  return marker.status === "active";
}
