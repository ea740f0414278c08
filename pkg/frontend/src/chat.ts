/**
 * Chat panel backed by the project channel.
 *
 * Messages render in arrival order, which the service keeps consistent
 * per sender; the channel has already deduped replayed frames by id.
 */

import { fromTemplate, roleOf, clearChildren } from "./dom.js";
import type { ChatFrame } from "./types.js";

const TEMPLATE = `
  <section class="chat-panel" aria-label="Project chat">
    <h2 class="panel-title">Chat</h2>
    <ul class="chat-messages" data-role="chat-messages"></ul>
    <form class="chat-form" data-role="chat-form">
      <input
        type="text"
        class="chat-input"
        data-role="chat-input"
        placeholder="Message the project"
        aria-label="Chat message"
        autocomplete="off"
      />
      <button type="submit" class="chat-send">Send</button>
    </form>
  </section>`;

export class ChatPanel {
  readonly root: HTMLElement;
  private readonly messages: HTMLUListElement;
  private readonly input: HTMLInputElement;
  private readonly send: (body: string) => void;

  constructor(send: (body: string) => void) {
    this.send = send;
    this.root = fromTemplate(TEMPLATE);
    this.messages = roleOf(this.root, "chat-messages");
    this.input = roleOf(this.root, "chat-input");
    this.root.addEventListener("submit", (event) => {
      event.preventDefault();
      const body = this.input.value.trim();
      if (!body) return;
      this.send(body);
      this.input.value = "";
    });
  }

  append(frame: ChatFrame): void {
    const item = document.createElement("li");
    item.className = "chat-message";
    item.dataset.messageId = frame.id;
    const sender = document.createElement("span");
    sender.className = "chat-sender";
    sender.textContent = frame.sender;
    const body = document.createElement("span");
    body.className = "chat-body";
    body.textContent = frame.body;
    item.append(sender, body);
    this.messages.appendChild(item);
    if (typeof item.scrollIntoView === "function") {
      item.scrollIntoView({ block: "end" });
    }
  }

  clear(): void {
    clearChildren(this.messages);
  }
}
