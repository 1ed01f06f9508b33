// The writer-facing application: an editable writing panel with
// per-sentence prediction highlighting and a chat panel for the XAI agent.
// At most one chat request is in flight per session; later sends queue.

import { ApiClient } from "./api.js";
import { renderChatMessage, renderUserMessage } from "./chat.js";
import { DecorationMode, SentenceDecoration, decorateSentences } from "./decorations.js";
import type { DialogueResponseWire, DocumentWire } from "./types.js";

export class App {
  sessionId: string | null = null;
  conference: string | null = null;
  document_: DocumentWire | null = null;
  decorations: SentenceDecoration[] = [];
  selectedIndex: number | null = null;
  mode: DecorationMode = "label";

  private pending: Promise<void> = Promise.resolve();

  private root!: HTMLElement;
  private conferenceSelect!: HTMLSelectElement;
  private abstractInput!: HTMLTextAreaElement;
  private writingPanel!: HTMLElement;
  private scoreHeader!: HTMLElement;
  private transcript!: HTMLElement;
  private chatInput!: HTMLInputElement;

  constructor(private client: ApiClient) {}

  async mount(root: HTMLElement): Promise<void> {
    this.root = root;
    root.innerHTML = `
      <div class="panel writing">
        <div class="controls">
          <select class="conference"></select>
          <button type="button" class="mode-toggle">label colors</button>
        </div>
        <textarea class="abstract" rows="8" placeholder="Paste your abstract here"></textarea>
        <button type="button" class="submit">Submit</button>
        <div class="score-header"></div>
        <div class="sentences"></div>
      </div>
      <div class="panel chat">
        <div class="transcript"></div>
        <form class="chat-form">
          <input class="chat-input" placeholder="Ask the XAI agent" />
          <button type="submit">Send</button>
        </form>
      </div>`;
    this.conferenceSelect = root.querySelector(".conference")!;
    this.abstractInput = root.querySelector(".abstract")!;
    this.writingPanel = root.querySelector(".sentences")!;
    this.scoreHeader = root.querySelector(".score-header")!;
    this.transcript = root.querySelector(".transcript")!;
    this.chatInput = root.querySelector(".chat-input")!;

    const health = await this.client.health();
    for (const conference of health.conferences) {
      const option = document.createElement("option");
      option.value = conference;
      option.textContent = conference;
      this.conferenceSelect.appendChild(option);
    }

    root.querySelector(".submit")!.addEventListener("click", () => void this.submit());
    root.querySelector(".mode-toggle")!.addEventListener("click", (event) => {
      this.mode = this.mode === "label" ? "quality" : "label";
      (event.currentTarget as HTMLElement).textContent =
        this.mode === "label" ? "label colors" : "quality shades";
      this.renderSentences();
    });
    root.querySelector(".chat-form")!.addEventListener("submit", (event) => {
      event.preventDefault();
      const utterance = this.chatInput.value.trim();
      if (utterance) {
        this.chatInput.value = "";
        this.sendChat(utterance);
      }
    });
  }

  async submit(): Promise<void> {
    const text = this.abstractInput.value;
    if (!text.trim()) return;
    const conference = this.conferenceSelect.value;
    if (this.sessionId === null || this.conference !== conference) {
      this.sessionId = await this.client.createSession(conference);
      this.conference = conference;
    }
    const document_ = await this.client.submitAbstract(this.sessionId, text);
    this.document_ = document_;
    // a new submission replaces every decoration and clears the selection
    this.selectedIndex = null;
    this.decorations = decorateSentences(document_.sentences, this.mode);
    this.renderSentences();
    this.renderScores();
  }

  renderScores(): void {
    if (!this.document_) return;
    const review = this.document_.review;
    this.scoreHeader.textContent =
      `style ${review.overall_style.toFixed(2)} | ` +
      `structure ${review.overall_structure.toFixed(2)} | ` +
      `overall ${review.overall.toFixed(2)}`;
  }

  renderSentences(): void {
    if (this.document_) {
      this.decorations = decorateSentences(this.document_.sentences, this.mode);
    }
    this.writingPanel.innerHTML = "";
    for (const decoration of this.decorations) {
      const span = document.createElement("span");
      span.className =
        this.selectedIndex === decoration.index ? "sentence selected" : "sentence";
      span.dataset.index = String(decoration.index);
      span.style.backgroundColor = decoration.color;
      span.title = decoration.tooltip;
      span.textContent = decoration.text;
      span.addEventListener("click", () => void this.clickSentence(decoration.index));
      this.writingPanel.appendChild(span);
      this.writingPanel.appendChild(document.createTextNode(" "));
    }
  }

  async clickSentence(index: number): Promise<void> {
    // clicks outside the decoration range are ignored: no message is sent
    if (this.sessionId === null || index < 0 || index >= this.decorations.length) return;
    this.selectedIndex = index;
    this.renderSentences();
    const response = await this.client.selectSentence(this.sessionId, index);
    this.appendAgentMessage(response);
  }

  sendChat(utterance: string): Promise<void> {
    // serialize: one in-flight chat request, later sends run afterwards
    const run = async () => {
      if (this.sessionId === null) return;
      this.transcript.appendChild(renderUserMessage(utterance));
      const response = await this.client.chat(this.sessionId, utterance);
      this.appendAgentMessage(response);
    };
    this.pending = this.pending.then(run, run);
    return this.pending;
  }

  private appendAgentMessage(response: DialogueResponseWire): void {
    const entry = renderChatMessage(response, (utterance) => this.sendChat(utterance));
    this.transcript.appendChild(entry);
    this.transcript.scrollTop = this.transcript.scrollHeight;
  }
}

export async function start(baseUrl: string, root: HTMLElement): Promise<App> {
  const app = new App(new ApiClient(baseUrl));
  await app.mount(root);
  return app;
}
