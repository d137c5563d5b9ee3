/** Thin typed client for the experiment service. */

import type {
  AnswerResponse,
  CreateSessionResponse,
  DemographicsInput,
  DialogueScript,
  SessionView,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
    this.name = "ApiError";
  }
}

/** What the controller needs from the service; ExperimentApi is the real one. */
export interface ExperimentClient {
  createSession(demographics: DemographicsInput): Promise<CreateSessionResponse>;
  getSession(sessionId: string): Promise<SessionView>;
  getQuestion(sessionId: string, taskId: number): Promise<DialogueScript>;
  postAnswer(
    sessionId: string,
    taskId: number,
    choice: 1 | 2,
    responseTimeMs?: number,
  ): Promise<AnswerResponse>;
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ExperimentApi implements ExperimentClient {
  private readonly fetchFn: FetchLike;

  constructor(
    private readonly baseUrl: string = "",
    fetchFn?: FetchLike,
  ) {
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}/api/v1${path}`, {
      method,
      headers: body === undefined ? undefined : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const doc = (await response.json()) as { detail?: string };
        if (doc.detail) detail = doc.detail;
      } catch {
        // body was not JSON; keep the status text
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  createSession(demographics: DemographicsInput): Promise<CreateSessionResponse> {
    return this.request("POST", "/sessions", demographics);
  }

  getSession(sessionId: string): Promise<SessionView> {
    return this.request("GET", `/sessions/${sessionId}`);
  }

  getQuestion(sessionId: string, taskId: number): Promise<DialogueScript> {
    return this.request("GET", `/sessions/${sessionId}/questions/${taskId}`);
  }

  postAnswer(
    sessionId: string,
    taskId: number,
    choice: 1 | 2,
    responseTimeMs?: number,
  ): Promise<AnswerResponse> {
    const body: Record<string, unknown> = { choice };
    if (responseTimeMs !== undefined) body.response_time_ms = Math.round(responseTimeMs);
    return this.request("POST", `/sessions/${sessionId}/questions/${taskId}/answer`, body);
  }

  getSummary(): Promise<Record<string, unknown>> {
    return this.request("GET", "/analysis/summary");
  }
}
