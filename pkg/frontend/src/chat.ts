// Renders agent responses into transcript entries. Structured attachments
// arrive verbatim from the service and are turned into visuals here: token
// heatmaps for attribution maps, rows for example lists, cards for score
// cards. Unknown attachment kinds fall back to a raw-text block so a newer
// server never crashes an older client.

import type {
  Attachment,
  AttributionMapAttachment,
  CounterfactualAttachment,
  DialogueResponseWire,
  ExampleListAttachment,
  ScoreCardAttachment,
} from "./types.js";

export type QuickReplyHandler = (utterance: string) => void;

function heatColor(weight: number, maxAbs: number): string {
  if (maxAbs <= 0) return "transparent";
  const strength = Math.min(Math.abs(weight) / maxAbs, 1);
  const alpha = (0.15 + 0.65 * strength).toFixed(3);
  // positive weights push toward the label (warm), negative away (cool)
  return weight >= 0 ? `rgba(255, 140, 0, ${alpha})` : `rgba(30, 120, 255, ${alpha})`;
}

export function emphasizedIndices(attachment: AttributionMapAttachment): Set<number> {
  const order = attachment.tokens
    .map((_token, i) => i)
    .sort((a, b) => Math.abs(attachment.weights[b]) - Math.abs(attachment.weights[a]) || a - b);
  return new Set(order.slice(0, attachment.top_k));
}

function renderAttributionMap(attachment: AttributionMapAttachment): HTMLElement {
  const container = document.createElement("div");
  container.className = "attachment attribution-heatmap";
  const emphasized = emphasizedIndices(attachment);
  const maxAbs = Math.max(...attachment.weights.map(Math.abs), 0);
  attachment.tokens.forEach((token, i) => {
    const span = document.createElement("span");
    span.className = emphasized.has(i) ? "token emphasized" : "token";
    span.textContent = token;
    span.style.backgroundColor = heatColor(attachment.weights[i], maxAbs);
    span.title = `weight ${attachment.weights[i].toFixed(4)}`;
    container.appendChild(span);
    container.appendChild(document.createTextNode(" "));
  });
  return container;
}

function renderExampleList(attachment: ExampleListAttachment): HTMLElement {
  const list = document.createElement("ul");
  list.className = "attachment example-list";
  for (const example of attachment.examples) {
    const row = document.createElement("li");
    row.className = "example-row";
    const badge = document.createElement("span");
    badge.className = `label-badge label-${example.label}`;
    badge.textContent = example.label;
    const sentence = document.createElement("span");
    sentence.className = "example-sentence";
    sentence.textContent = example.sentence;
    const similarity = document.createElement("span");
    similarity.className = "example-similarity";
    similarity.textContent = `sim ${example.similarity.toFixed(3)}`;
    row.append(badge, sentence, similarity);
    list.appendChild(row);
  }
  return list;
}

function renderScoreCard(attachment: ScoreCardAttachment): HTMLElement {
  const card = document.createElement("dl");
  card.className = "attachment score-card";
  const title = document.createElement("dt");
  title.className = "score-card-title";
  title.textContent = attachment.title;
  card.appendChild(title);
  for (const [name, value] of attachment.entries) {
    const dd = document.createElement("dd");
    dd.textContent = `${name}: ${value}`;
    card.appendChild(dd);
  }
  return card;
}

function renderCounterfactual(attachment: CounterfactualAttachment): HTMLElement {
  const block = document.createElement("blockquote");
  block.className = "attachment counterfactual";
  block.textContent = attachment.text;
  const note = document.createElement("footer");
  note.className = "counterfactual-note";
  const verdict = attachment.achieved_target ? "achieves" : "does not achieve";
  note.textContent = `${attachment.provenance} rewrite, ${verdict} ${attachment.re_predicted_label}`;
  block.appendChild(note);
  return block;
}

function renderFallback(attachment: Attachment): HTMLElement {
  const pre = document.createElement("pre");
  pre.className = "attachment attachment-fallback";
  pre.textContent = JSON.stringify(attachment, null, 2);
  return pre;
}

export function renderAttachment(attachment: Attachment): HTMLElement {
  switch (attachment.type) {
    case "attribution_map":
      return renderAttributionMap(attachment as AttributionMapAttachment);
    case "example_list":
      return renderExampleList(attachment as ExampleListAttachment);
    case "score_card":
      return renderScoreCard(attachment as ScoreCardAttachment);
    case "counterfactual":
      return renderCounterfactual(attachment as CounterfactualAttachment);
    default:
      return renderFallback(attachment);
  }
}

export function renderChatMessage(
  response: DialogueResponseWire,
  onQuickReply: QuickReplyHandler,
): HTMLElement {
  const entry = document.createElement("div");
  entry.className = "chat-message agent";
  entry.dataset.intent = response.payload.intent;

  const text = document.createElement("p");
  text.className = "message-text";
  text.textContent = response.payload.text;
  entry.appendChild(text);

  for (const attachment of response.payload.attachments) {
    entry.appendChild(renderAttachment(attachment));
  }

  if (response.quick_replies.length > 0) {
    const bar = document.createElement("div");
    bar.className = "quick-replies";
    for (const reply of response.quick_replies) {
      const button = document.createElement("button");
      button.className = "quick-reply";
      button.type = "button";
      button.textContent = reply.label;
      // the canned utterance goes through the same chat path as typed text
      button.addEventListener("click", () => onQuickReply(reply.utterance));
      bar.appendChild(button);
    }
    entry.appendChild(bar);
  }
  return entry;
}

export function renderUserMessage(utterance: string): HTMLElement {
  const entry = document.createElement("div");
  entry.className = "chat-message user";
  const text = document.createElement("p");
  text.className = "message-text";
  text.textContent = utterance;
  entry.appendChild(text);
  return entry;
}
