// A recorded stub of the service: canned wire payloads plus a request log,
// so contract tests verify exactly what the UI sends and that everything
// displayed originates from service payloads.

import type { FetchLike } from "../src/api.js";
import type { DialogueResponseWire, DocumentWire } from "../src/types.js";

export const STUB_DOCUMENT: DocumentWire = {
  conference: "synthconf",
  revision: 1,
  sentences: [
    {
      index: 0,
      text: "We propose to investigate a new objective for this study.",
      span: [0, 58],
      label: "purpose",
      confidence: 0.9849,
      probabilities: { background: 0.0, purpose: 0.9849, method: 0.01, finding: 0.005, other: 0.0001 },
      perplexity: 22.1,
      quality_score: 5,
    },
    {
      index: 1,
      text: "We apply the approach and train the pipeline on this architecture.",
      span: [59, 126],
      label: "method",
      confidence: 0.9761,
      probabilities: { background: 0.0, purpose: 0.01, method: 0.9761, finding: 0.01, other: 0.0039 },
      perplexity: 27.9,
      quality_score: 3,
    },
    {
      index: 2,
      text: "The results show significant gains and strong accuracy on this benchmark.",
      span: [127, 201],
      label: "finding",
      confidence: 0.9991,
      probabilities: { background: 0.0, purpose: 0.0, method: 0.0005, finding: 0.9991, other: 0.0004 },
      perplexity: 25.3,
      quality_score: 4,
    },
  ],
  review: {
    items: [
      {
        kind: "structure",
        sentence_index: 0,
        message: "Sentence 1: consider rewriting it to describe background.",
        suggested_label: "background",
        quality_score: null,
      },
    ],
    overall_style: 4.0,
    overall_structure: 4.5,
    overall: 4.25,
  },
};

export const STUB_SELECTION_RESPONSE: DialogueResponseWire = {
  payload: {
    intent: "suggestion",
    text: 'Sentence 1 selected: "We propose to investigate a new objective for this study."',
    attachments: [],
    followups: ["counterfactual", "example"],
  },
  state_delta: { selected_sentence: 0, suggested_label: "background", last_intent: null },
  quick_replies: [
    { label: "Counterfactual rewrite", utterance: "how can i rewrite this sentence" },
    { label: "Similar examples", utterance: "show me similar examples" },
  ],
};

export const STUB_CONFIDENCE_RESPONSE: DialogueResponseWire = {
  payload: {
    intent: "confidence",
    text: "The structure model predicts purpose for this sentence with confidence 0.98.",
    attachments: [
      {
        type: "score_card",
        title: "Prediction probabilities",
        entries: [
          ["background", "0.00"],
          ["purpose", "0.98"],
        ],
      },
    ],
    followups: ["counterfactual", "example"],
  },
  state_delta: { selected_sentence: 0, suggested_label: "background", last_intent: "confidence" },
  quick_replies: [{ label: "Similar examples", utterance: "show me similar examples" }],
};

export interface RecordedRequest {
  method: string;
  path: string;
  body: unknown;
}

export class StubService {
  requests: RecordedRequest[] = [];
  chatResponse: DialogueResponseWire = STUB_CONFIDENCE_RESPONSE;
  document: DocumentWire = STUB_DOCUMENT;
  private resolveChatManually = false;
  private pendingChats: (() => void)[] = [];

  holdChats(): void {
    this.resolveChatManually = true;
  }

  releaseChat(): void {
    this.pendingChats.shift()?.();
  }

  get pendingChatCount(): number {
    return this.pendingChats.length;
  }

  fetch: FetchLike = async (input, init) => {
    const url = new URL(input, "http://stub.test");
    const method = init?.method ?? "GET";
    const body = init?.body ? JSON.parse(init.body as string) : undefined;
    this.requests.push({ method, path: url.pathname, body });

    const json = (data: unknown, status = 200) =>
      new Response(JSON.stringify(data), {
        status,
        headers: { "Content-Type": "application/json" },
      });

    if (url.pathname === "/health") {
      return json({ status: "ok", conferences: ["synthconf"], wire_format_version: 1 });
    }
    if (url.pathname === "/sessions" && method === "POST") {
      return json({ session_id: "stub-session-token", conference: body.conference }, 201);
    }
    if (url.pathname.endsWith("/abstract")) {
      return json(this.document);
    }
    if (url.pathname.endsWith("/select")) {
      return json(STUB_SELECTION_RESPONSE);
    }
    if (url.pathname.endsWith("/chat")) {
      if (this.resolveChatManually) {
        await new Promise<void>((resolve) => this.pendingChats.push(resolve));
      }
      return json(this.chatResponse);
    }
    return json({ detail: "not found" }, 404);
  };
}
