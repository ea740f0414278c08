/**
 * Story entry box.
 *
 * Submitting posts the text as a new story. When the service rejects it
 * as malformed, the response echoes the text back and the box is
 * refilled with it so nothing typed is lost.
 */

import { ApiClient, ApiError } from "./api.js";
import { fromTemplate, roleOf } from "./dom.js";
import type { StoryPayload } from "./types.js";

const TEMPLATE = `
  <form class="story-entry" data-role="entry-form">
    <textarea
      class="story-entry-text"
      data-role="entry-text"
      rows="3"
      placeholder="As a <role>, I want to <goal>, so that <benefit>."
      aria-label="New story"
    ></textarea>
    <div class="story-entry-actions">
      <button type="submit" class="story-entry-submit" data-role="entry-submit">
        Add story
      </button>
    </div>
  </form>`;

export interface StoryEntryEvents {
  onSubmitted(story: StoryPayload): void;
  onStatus(message: string, tone: "info" | "error"): void;
}

export class StoryEntry {
  readonly root: HTMLElement;
  private readonly textarea: HTMLTextAreaElement;
  private readonly api: ApiClient;
  private readonly project: string;
  private readonly user: string;
  private readonly events: StoryEntryEvents;
  /** Story being edited, or null when composing a new one. */
  private editing: StoryPayload | null = null;

  constructor(api: ApiClient, project: string, user: string, events: StoryEntryEvents) {
    this.api = api;
    this.project = project;
    this.user = user;
    this.events = events;
    this.root = fromTemplate(TEMPLATE);
    this.textarea = roleOf(this.root, "entry-text");
    this.root.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.submit();
    });
  }

  /** Load an existing story into the box; the next submit updates it. */
  beginEdit(story: StoryPayload): void {
    this.editing = story;
    this.textarea.value = story.text;
    this.submitButton().textContent = "Save story";
    this.textarea.focus();
  }

  async submit(): Promise<void> {
    const text = this.textarea.value.trim();
    if (!text) return;
    const editing = this.editing;
    this.textarea.value = "";
    try {
      const story = editing
        ? await this.api.editStory(editing.id, text)
        : await this.api.createStory(this.project, this.user, text);
      this.editing = null;
      this.submitButton().textContent = "Add story";
      this.events.onSubmitted(story);
      this.events.onStatus(editing ? `Updated ${story.id}.` : `Added ${story.id}.`, "info");
    } catch (error) {
      // put the rejected text back so it can be fixed in place
      if (error instanceof ApiError && error.rejectedText !== undefined) {
        this.textarea.value = error.rejectedText;
      } else {
        this.textarea.value = text;
      }
      this.editing = editing;
      const message = error instanceof ApiError ? error.detail : String(error);
      this.events.onStatus(message, "error");
    }
  }

  private submitButton(): HTMLButtonElement {
    return roleOf(this.root, "entry-submit");
  }
}
