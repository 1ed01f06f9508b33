// Wire protocol types, mirroring schemas/wire.json (format_version 1).
// The UI is stateless with respect to explanations: everything rendered
// comes from these payloads.

export type AspectLabel = "background" | "purpose" | "method" | "finding" | "other";

export interface SentenceWire {
  index: number;
  text: string;
  span: [number, number];
  label: AspectLabel;
  confidence: number;
  probabilities: Record<string, number>;
  perplexity: number;
  quality_score: number;
}

export interface ReviewItemWire {
  kind: "structure" | "style" | "length";
  sentence_index: number;
  message: string;
  suggested_label: AspectLabel | null;
  quality_score: number | null;
}

export interface ReviewWire {
  items: ReviewItemWire[];
  overall_style: number;
  overall_structure: number;
  overall: number;
}

export interface DocumentWire {
  conference: string;
  revision: number;
  sentences: SentenceWire[];
  review: ReviewWire;
}

export interface ScoreCardAttachment {
  type: "score_card";
  title: string;
  entries: [string, string][];
}

export interface ExampleListAttachment {
  type: "example_list";
  examples: { sentence: string; label: AspectLabel; similarity: number; quality: number }[];
}

export interface AttributionMapAttachment {
  type: "attribution_map";
  tokens: string[];
  weights: number[];
  top_k: number;
  target_label: AspectLabel;
}

export interface CounterfactualAttachment {
  type: "counterfactual";
  text: string;
  re_predicted_label: AspectLabel;
  provenance: "retrieval" | "external_generator";
  achieved_target: boolean;
}

export type KnownAttachment =
  | ScoreCardAttachment
  | ExampleListAttachment
  | AttributionMapAttachment
  | CounterfactualAttachment;

// Servers may grow new attachment kinds; unknown ones must render via the
// fallback path instead of crashing.
export type Attachment = KnownAttachment | { type: string; [key: string]: unknown };

export interface QuickReply {
  label: string;
  utterance: string;
}

export interface PayloadWire {
  intent: string;
  text: string;
  attachments: Attachment[];
  followups: string[];
}

export interface DialogueResponseWire {
  payload: PayloadWire;
  state_delta: {
    selected_sentence: number | null;
    suggested_label: string | null;
    last_intent: string | null;
  };
  quick_replies: QuickReply[];
}

export interface HealthWire {
  status: string;
  conferences: string[];
  wire_format_version: number;
}
