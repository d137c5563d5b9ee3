/** Payload shapes of the experiment service's JSON API (under /api/v1). */

export interface SessionStateView {
  session_id: string;
  version: number;
  health: number;
  health_display: string;
  gold_display: string;
  bonus_display: string | null;
  solved: boolean[];
  gate_open: boolean;
  finalized: boolean;
}

export interface DialogueScript {
  npc_name: string;
  question: string;
  answer_one: string; // always the certain option
  answer_two: string; // always the risky option
  continuation: string;
}

export interface EffectJson {
  kind:
    | "health_set"
    | "gold_delta"
    | "gate_open"
    | "bonus_display"
    | "unlock_tasks"
    | "blackout_relocate";
  health?: number;
  display?: string;
  amount_deci?: number;
  text?: string;
  tasks?: number[];
  destination?: string;
}

export interface ConsequenceJson {
  alert_text: string;
  effects: EffectJson[];
}

export interface CreateSessionResponse {
  session_id: string;
  version: number;
  state: SessionStateView;
}

export interface SessionView {
  state: SessionStateView;
  available_tasks: number[];
}

export interface AnswerResponse {
  continuation: string;
  effects: ConsequenceJson;
  state: SessionStateView;
}

export interface DemographicsInput {
  gender?: string;
  age?: number | null;
  education?: string;
}
