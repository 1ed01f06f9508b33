// @vitest-environment happy-dom
// Renders the real service transcript (the backend's committed golden
// walkthrough) through the UI renderers: if the wire format drifts, this
// breaks before any live deployment does.

import { readFileSync } from "node:fs";
import { resolve } from "node:path";

import { describe, expect, it } from "vitest";

import { renderChatMessage } from "../src/chat.js";
import { decorateSentences } from "../src/decorations.js";
import type { DialogueResponseWire, DocumentWire } from "../src/types.js";

const GOLDEN = resolve(__dirname, "../../tests/golden/walkthrough.json");

interface Step {
  step: string;
  utterance?: string;
  response: unknown;
}

const steps: Step[] = JSON.parse(readFileSync(GOLDEN, "utf-8"));

describe("golden walkthrough fidelity", () => {
  it("decorates every sentence of the submitted document", () => {
    const doc = steps[0].response as DocumentWire;
    for (const mode of ["label", "quality"] as const) {
      const decorations = decorateSentences(doc.sentences, mode);
      expect(decorations).toHaveLength(doc.sentences.length);
      for (const d of decorations) {
        expect(d.color).toMatch(/^#/);
        expect(d.tooltip).toContain(d.label);
      }
    }
  });

  it("renders every dialogue response without crashing", () => {
    const dialogueSteps = steps.filter((s) => s.step !== "submit_abstract");
    expect(dialogueSteps.length).toBeGreaterThanOrEqual(5);
    for (const step of dialogueSteps) {
      const entry = renderChatMessage(step.response as DialogueResponseWire, () => {});
      expect(entry.querySelector(".message-text")!.textContent!.length).toBeGreaterThan(0);
    }
  });

  it("renders the example refinement with exactly two background rows", () => {
    const refinement = steps.find((s) => s.utterance === "2 + background")!;
    const entry = renderChatMessage(refinement.response as DialogueResponseWire, () => {});
    const badges = [...entry.querySelectorAll(".label-badge")].map((b) => b.textContent);
    expect(badges).toEqual(["background", "background"]);
  });
});
