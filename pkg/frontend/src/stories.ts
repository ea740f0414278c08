/**
 * Story list panel.
 *
 * Shows every story in the project with highlight marks over the exact
 * spans the current suggestions point at. Suggestion links land here:
 * focusStory scrolls the referenced story into view and flags it.
 */

import { fromTemplate, roleOf, clearChildren } from "./dom.js";
import { highlightRuns, spansForStory } from "./highlights.js";
import type { StoryPayload, SuggestionPayload } from "./types.js";

const TEMPLATE = `
  <section class="story-list" aria-label="Stories">
    <h2 class="panel-title">Stories</h2>
    <ul class="story-list-items" data-role="story-items"></ul>
    <p class="story-list-empty" data-role="story-empty" hidden>No stories yet.</p>
  </section>`;

export interface StoryListEvents {
  onEdit(story: StoryPayload): void;
  onDelete(story: StoryPayload): void;
}

export class StoryListPanel {
  readonly root: HTMLElement;
  private readonly items: HTMLUListElement;
  private readonly empty: HTMLElement;
  private readonly events: StoryListEvents;

  constructor(events: StoryListEvents) {
    this.events = events;
    this.root = fromTemplate(TEMPLATE);
    this.items = roleOf(this.root, "story-items");
    this.empty = roleOf(this.root, "story-empty");
  }

  render(stories: StoryPayload[], suggestions: SuggestionPayload[]): void {
    clearChildren(this.items);
    this.empty.hidden = stories.length > 0;
    for (const story of stories) {
      this.items.appendChild(this.buildItem(story, suggestions));
    }
  }

  /** Bring one story into view and mark it as the navigation target. */
  focusStory(storyId: string): void {
    for (const node of this.items.querySelectorAll(".story-item-focus")) {
      node.classList.remove("story-item-focus");
    }
    const item = this.items.querySelector<HTMLElement>(
      `[data-story-id="${storyId}"]`,
    );
    if (!item) return;
    item.classList.add("story-item-focus");
    if (typeof item.scrollIntoView === "function") {
      item.scrollIntoView({ block: "center" });
    }
    item.focus();
  }

  private buildItem(story: StoryPayload, suggestions: SuggestionPayload[]): HTMLElement {
    const item = document.createElement("li");
    item.className = "story-item";
    item.dataset.storyId = story.id;
    item.tabIndex = -1;

    const header = document.createElement("div");
    header.className = "story-item-header";
    const author = document.createElement("span");
    author.className = "story-item-author";
    author.textContent = story.author;
    const id = document.createElement("span");
    id.className = "story-item-id";
    id.textContent = story.id;
    header.append(author, id);

    const edit = document.createElement("button");
    edit.type = "button";
    edit.className = "story-item-edit";
    edit.textContent = "Edit";
    edit.addEventListener("click", () => this.events.onEdit(story));
    const remove = document.createElement("button");
    remove.type = "button";
    remove.className = "story-item-delete";
    remove.textContent = "Delete";
    remove.addEventListener("click", () => this.events.onDelete(story));
    header.append(edit, remove);

    const text = document.createElement("p");
    text.className = "story-item-text";
    for (const run of highlightRuns(story.text, spansForStory(story.id, suggestions))) {
      if (run.marked) {
        const mark = document.createElement("mark");
        mark.textContent = run.text;
        text.appendChild(mark);
      } else {
        text.appendChild(document.createTextNode(run.text));
      }
    }

    item.append(header, text);
    return item;
  }
}
