// Thin client over the service wire protocol. The fetch function is
// injectable so contract tests can run against a recorded stub.

import type { DialogueResponseWire, DocumentWire, HealthWire } from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(public status: number, detail: string) {
    super(detail);
  }
}

export class ApiClient {
  constructor(
    private baseUrl: string,
    private fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path, {
      method,
      headers: body === undefined ? undefined : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const data = await response.json();
    if (!response.ok) {
      throw new ApiError(response.status, (data as { detail?: string }).detail ?? "request failed");
    }
    return data as T;
  }

  health(): Promise<HealthWire> {
    return this.request("GET", "/health");
  }

  async createSession(conference: string): Promise<string> {
    const data = await this.request<{ session_id: string }>("POST", "/sessions", { conference });
    return data.session_id;
  }

  submitAbstract(sessionId: string, text: string): Promise<DocumentWire> {
    return this.request("POST", `/sessions/${sessionId}/abstract`, { text });
  }

  // The documented selection message: {"sentence_index": <0-based index>}.
  selectSentence(sessionId: string, index: number): Promise<DialogueResponseWire> {
    return this.request("POST", `/sessions/${sessionId}/select`, { sentence_index: index });
  }

  chat(sessionId: string, utterance: string): Promise<DialogueResponseWire> {
    return this.request("POST", `/sessions/${sessionId}/chat`, { utterance });
  }
}
