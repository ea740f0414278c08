/**
 * Suggestion panel.
 *
 * Entries are grouped by category (quality, then completeness) and keep
 * one fixed color per kind; the legend at the bottom maps colors back
 * to kinds. Quality entries link to the stories they reference, the
 * crossed-eye button dismisses an entry by posting feedback, and the
 * "show dismissed" toggle switches struck entries in and out of view.
 */

import { ApiClient, ApiError } from "./api.js";
import { fromTemplate, roleOf, clearChildren } from "./dom.js";
import type {
  StoryRef,
  SuggestionKind,
  SuggestionPayload,
  SuggestionResponse,
} from "./types.js";

export const KIND_ORDER: SuggestionKind[] = [
  "ISOLATED",
  "NON_ATOMIC",
  "CRUD",
  "CLOSE_TO_COMPLETENESS",
  "POP_ZERO",
  "POP_ONE",
  "POP_TWO",
  "POP_THREE",
  "FEELING_LUCKY",
  "ALL_IS_WELL",
];

export const KIND_COLORS: Record<SuggestionKind, string> = {
  ISOLATED: "#c0392b",
  NON_ATOMIC: "#d35400",
  CRUD: "#b7950b",
  CLOSE_TO_COMPLETENESS: "#1f618d",
  POP_ZERO: "#6c3483",
  POP_ONE: "#884ea0",
  POP_TWO: "#2e86c1",
  POP_THREE: "#117a65",
  FEELING_LUCKY: "#239b56",
  ALL_IS_WELL: "#566573",
};

export const KIND_LABELS: Record<SuggestionKind, string> = {
  ISOLATED: "Isolated concept",
  NON_ATOMIC: "More than one goal",
  CRUD: "Missing operations",
  CLOSE_TO_COMPLETENESS: "Almost connected",
  POP_ZERO: "Unused pair",
  POP_ONE: "Pair seen once",
  POP_TWO: "Pair seen twice",
  POP_THREE: "Pair seen three times",
  FEELING_LUCKY: "Random nudge",
  ALL_IS_WELL: "All is well",
};

const EYE_OFF_ICON = `
  <svg viewBox="0 0 24 24" width="14" height="14" fill="none" stroke="currentColor"
      stroke-width="2" stroke-linecap="round" stroke-linejoin="round" aria-hidden="true">
    <path d="M17.94 17.94A10.07 10.07 0 0 1 12 20c-7 0-11-8-11-8a18.45 18.45 0 0 1 5.06-5.94M9.9 4.24A9.12 9.12 0 0 1 12 4c7 0 11 8 11 8a18.5 18.5 0 0 1-2.16 3.19m-6.72-1.07a3 3 0 1 1-4.24-4.24"/>
    <line x1="1" y1="1" x2="23" y2="23"/>
  </svg>`;

const EYE_ICON = `
  <svg viewBox="0 0 24 24" width="14" height="14" fill="none" stroke="currentColor"
      stroke-width="2" stroke-linecap="round" stroke-linejoin="round" aria-hidden="true">
    <path d="M1 12s4-8 11-8 11 8 11 8-4 8-11 8-11-8-11-8z"/>
    <circle cx="12" cy="12" r="3"/>
  </svg>`;

const TEMPLATE = `
  <section class="suggestion-panel" aria-label="Suggestions">
    <div class="suggestion-panel-header">
      <h2 class="panel-title">Suggestions</h2>
      <label class="suggestion-show-hidden">
        <input type="checkbox" data-role="show-hidden" checked />
        Show dismissed
      </label>
    </div>
    <p class="suggestion-info" data-role="suggestion-info" hidden></p>
    <section class="suggestion-group">
      <h3 class="suggestion-group-title">Quality</h3>
      <ul class="suggestion-entries" data-role="entries-quality"></ul>
      <p class="suggestion-empty" data-role="empty-quality" hidden>No quality suggestions.</p>
    </section>
    <section class="suggestion-group">
      <h3 class="suggestion-group-title">Completeness</h3>
      <ul class="suggestion-entries" data-role="entries-completeness"></ul>
      <p class="suggestion-empty" data-role="empty-completeness" hidden>No completeness suggestions.</p>
    </section>
    <div class="suggestion-legend" data-role="legend"></div>
  </section>`;

export interface SuggestionPanelEvents {
  onNavigate(ref: StoryRef): void;
  /** Fired after a dismissal or restore changed which entries count as visible. */
  onVisibilityChanged(): void;
  onStatus(message: string, tone: "info" | "error"): void;
}

export class SuggestionPanel {
  readonly root: HTMLElement;
  private readonly api: ApiClient;
  private readonly user: string;
  private readonly events: SuggestionPanelEvents;
  private readonly showHidden: HTMLInputElement;
  private current: SuggestionPayload[] = [];
  private info: string | null = null;

  constructor(api: ApiClient, user: string, events: SuggestionPanelEvents) {
    this.api = api;
    this.user = user;
    this.events = events;
    this.root = fromTemplate(TEMPLATE);
    this.showHidden = roleOf(this.root, "show-hidden");
    this.showHidden.addEventListener("change", () => this.rerender());
    this.renderLegend();
    this.rerender();
  }

  /** Replace the panel content with a fresh analysis response. */
  render(response: SuggestionResponse): void {
    this.current = [...response.quality, ...response.completeness];
    this.info = response.info;
    this.rerender();
  }

  /** Replace the panel content from a stored suggestion listing. */
  renderList(payloads: SuggestionPayload[]): void {
    this.current = [...payloads];
    this.info = null;
    this.rerender();
  }

  /** Suggestions whose highlights should be drawn over the stories. */
  visible(): SuggestionPayload[] {
    return this.current.filter((s) => !s.hidden);
  }

  private rerender(): void {
    const info = roleOf<HTMLElement>(this.root, "suggestion-info");
    info.hidden = this.info === null;
    info.textContent = this.info ?? "";
    this.fillGroup("quality");
    this.fillGroup("completeness");
  }

  private fillGroup(category: "quality" | "completeness"): void {
    const list = roleOf<HTMLUListElement>(this.root, `entries-${category}`);
    const empty = roleOf<HTMLElement>(this.root, `empty-${category}`);
    clearChildren(list);
    const entries = this.current
      .filter((s) => s.category === category)
      .filter((s) => !s.hidden || this.showHidden.checked)
      .sort(
        (a, b) =>
          KIND_ORDER.indexOf(a.kind) - KIND_ORDER.indexOf(b.kind) ||
          a.id.localeCompare(b.id),
      );
    empty.hidden = entries.length > 0;
    for (const entry of entries) list.appendChild(this.buildEntry(entry));
  }

  private buildEntry(suggestion: SuggestionPayload): HTMLElement {
    const entry = document.createElement("li");
    entry.className = "suggestion-entry";
    if (suggestion.hidden) entry.classList.add("suggestion-dismissed");
    entry.dataset.suggestionId = suggestion.id;
    entry.dataset.kind = suggestion.kind;

    const chip = document.createElement("span");
    chip.className = "suggestion-kind";
    chip.textContent = KIND_LABELS[suggestion.kind];
    chip.style.backgroundColor = KIND_COLORS[suggestion.kind];
    entry.appendChild(chip);

    const message = document.createElement("span");
    message.className = "suggestion-message";
    message.textContent = suggestion.message;
    entry.appendChild(message);

    for (const ref of suggestion.storyRefs) {
      const link = document.createElement("a");
      link.className = "suggestion-link";
      link.href = `#${ref.storyId}`;
      link.dataset.storyId = ref.storyId;
      link.textContent = ref.storyId;
      link.addEventListener("click", (event) => {
        event.preventDefault();
        this.events.onNavigate(ref);
      });
      entry.appendChild(link);
    }

    if (suggestion.missingCrud.length > 0) {
      const crud = document.createElement("span");
      crud.className = "suggestion-crud";
      crud.textContent = `missing: ${suggestion.missingCrud.join(", ")}`;
      entry.appendChild(crud);
    }

    const dismiss = document.createElement("button");
    dismiss.type = "button";
    dismiss.className = "suggestion-dismiss";
    dismiss.setAttribute(
      "aria-label",
      suggestion.hidden ? "Restore suggestion" : "Dismiss suggestion",
    );
    dismiss.title = suggestion.hidden ? "Restore" : "Dismiss";
    dismiss.innerHTML = suggestion.hidden ? EYE_ICON : EYE_OFF_ICON;
    dismiss.addEventListener("click", () => {
      void this.sendFeedback(suggestion, !suggestion.hidden);
    });
    entry.appendChild(dismiss);

    return entry;
  }

  private async sendFeedback(suggestion: SuggestionPayload, disliked: boolean): Promise<void> {
    try {
      await this.api.sendFeedback(suggestion.id, this.user, disliked);
    } catch (error) {
      const message = error instanceof ApiError ? error.detail : String(error);
      this.events.onStatus(message, "error");
      return;
    }
    suggestion.hidden = disliked;
    this.rerender();
    this.events.onVisibilityChanged();
    this.events.onStatus(
      disliked ? "Suggestion dismissed." : "Suggestion restored.",
      "info",
    );
  }

  private renderLegend(): void {
    const legend = roleOf<HTMLElement>(this.root, "legend");
    for (const kind of KIND_ORDER) {
      const item = document.createElement("span");
      item.className = "suggestion-legend-item";
      const swatch = document.createElement("span");
      swatch.className = "suggestion-legend-swatch";
      swatch.style.backgroundColor = KIND_COLORS[kind];
      const label = document.createElement("span");
      label.textContent = KIND_LABELS[kind];
      item.append(swatch, label);
      legend.appendChild(item);
    }
  }
}
