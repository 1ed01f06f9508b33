// Per-sentence decorations for the writing panel: background colors encode
// either the predicted aspect label or the style quality, switchable.

import type { SentenceWire } from "./types.js";

export type DecorationMode = "label" | "quality";

// Five fixed label colors; the mapping never changes between renders.
export const LABEL_COLORS: Record<string, string> = {
  background: "#cfe2ff",
  purpose: "#ffe0b3",
  method: "#d6f0d6",
  finding: "#ecd6f0",
  other: "#e8e8e8",
};

// Quality shades ordered worst (1) to best (5): red through green.
export const QUALITY_SHADES = ["#f5c6c6", "#f8ddc4", "#fbf3c9", "#ddeec6", "#c8e6c9"];

export interface SentenceDecoration {
  index: number;
  text: string;
  span: [number, number];
  color: string;
  label: string;
  quality: number;
  tooltip: string;
}

export function decorationColor(sentence: SentenceWire, mode: DecorationMode): string {
  if (mode === "quality") {
    const level = Math.min(Math.max(sentence.quality_score, 1), 5);
    return QUALITY_SHADES[level - 1];
  }
  return LABEL_COLORS[sentence.label] ?? LABEL_COLORS.other;
}

export function decorateSentences(
  sentences: SentenceWire[],
  mode: DecorationMode,
): SentenceDecoration[] {
  return sentences.map((sentence) => ({
    index: sentence.index,
    text: sentence.text,
    span: sentence.span,
    color: decorationColor(sentence, mode),
    label: sentence.label,
    quality: sentence.quality_score,
    tooltip:
      `${sentence.label} (confidence ${sentence.confidence.toFixed(2)}), ` +
      `quality ${sentence.quality_score}/5`,
  }));
}
