/**
 * Top level editor screen.
 *
 * Wires the entry box, story list, suggestion panel, chat and transfer
 * panel together over one ApiClient and one project channel. The
 * scenario stays pinned at the top while everything below refreshes.
 */

import { ApiClient, ApiError } from "./api.js";
import { ProjectChannel, channelUrl, type ChannelOptions } from "./channel.js";
import { ChatPanel } from "./chat.js";
import { fromTemplate, roleOf } from "./dom.js";
import { StoryEntry } from "./editor.js";
import { StoryListPanel } from "./stories.js";
import { SuggestionPanel } from "./suggestions.js";
import { TransferPanel, type FileSaver } from "./transfer.js";
import type { ChannelFrame, StoryPayload } from "./types.js";

const TEMPLATE = `
  <div class="editor-app">
    <header class="editor-header">
      <h1 class="editor-project" data-role="project-name"></h1>
      <p class="editor-scenario" data-role="scenario"></p>
      <p class="editor-status" data-role="status" hidden></p>
    </header>
    <div class="editor-columns">
      <div class="editor-main" data-role="main-column">
        <div data-role="entry-slot"></div>
        <div class="editor-suggest">
          <button type="button" class="editor-suggest-button" data-role="suggest-button">
            Get suggestions
          </button>
        </div>
        <div data-role="stories-slot"></div>
      </div>
      <div class="editor-side" data-role="side-column">
        <div data-role="suggestions-slot"></div>
        <div data-role="chat-slot"></div>
        <div data-role="transfer-slot"></div>
      </div>
    </div>
  </div>`;

export interface EditorAppOptions {
  api: ApiClient;
  project: string;
  user: string;
  /** HTTP origin used to derive the websocket address. */
  base?: string;
  /** Prebuilt channel, used by tests; otherwise one is dialed from base. */
  channel?: ProjectChannel;
  channelOptions?: ChannelOptions;
  saver?: FileSaver;
}

export class EditorApp {
  readonly root: HTMLElement;
  readonly entry: StoryEntry;
  readonly storyList: StoryListPanel;
  readonly suggestions: SuggestionPanel;
  readonly chat: ChatPanel;
  readonly transfer: TransferPanel;
  readonly channel: ProjectChannel;

  private readonly api: ApiClient;
  private readonly project: string;
  private readonly user: string;
  private stories: StoryPayload[] = [];

  constructor(options: EditorAppOptions) {
    this.api = options.api;
    this.project = options.project;
    this.user = options.user;
    this.root = fromTemplate(TEMPLATE);

    this.entry = new StoryEntry(this.api, this.project, this.user, {
      onSubmitted: () => void this.reloadStories(),
      onStatus: (message, tone) => this.setStatus(message, tone),
    });
    this.storyList = new StoryListPanel({
      onEdit: (story) => this.entry.beginEdit(story),
      onDelete: (story) => void this.deleteStory(story),
    });
    this.suggestions = new SuggestionPanel(this.api, this.user, {
      onNavigate: (ref) => this.storyList.focusStory(ref.storyId),
      onVisibilityChanged: () => this.renderStories(),
      onStatus: (message, tone) => this.setStatus(message, tone),
    });
    this.chat = new ChatPanel((body) => this.channel.sendChat(body));
    this.transfer = new TransferPanel(
      this.api,
      this.project,
      this.user,
      {
        onImported: () => void this.reloadStories(),
        onStatus: (message, tone) => this.setStatus(message, tone),
      },
      options.saver,
    );
    this.channel =
      options.channel ??
      new ProjectChannel(
        channelUrl(options.base ?? "", this.project, this.user),
        options.channelOptions,
      );
    this.channel.onFrame((frame) => this.handleFrame(frame));

    roleOf(this.root, "entry-slot").appendChild(this.entry.root);
    roleOf(this.root, "stories-slot").appendChild(this.storyList.root);
    roleOf(this.root, "suggestions-slot").appendChild(this.suggestions.root);
    roleOf(this.root, "chat-slot").appendChild(this.chat.root);
    roleOf(this.root, "transfer-slot").appendChild(this.transfer.root);
    roleOf(this.root, "suggest-button").addEventListener("click", () => {
      void this.requestSuggestions();
    });
  }

  /** Load the project, stories and stored suggestions, then connect. */
  async start(): Promise<void> {
    const project = await this.api.getProject(this.project);
    roleOf(this.root, "project-name").textContent = project.name;
    roleOf(this.root, "scenario").textContent = project.scenario;
    this.suggestions.renderList(
      await this.api.listSuggestions(this.project, {
        user: this.user,
        includeHidden: true,
      }),
    );
    await this.reloadStories();
    this.channel.connect();
  }

  stop(): void {
    this.channel.close();
  }

  async requestSuggestions(): Promise<void> {
    try {
      const response = await this.api.requestSuggestions(this.project, this.user);
      this.suggestions.render(response);
      this.renderStories();
      const total = response.quality.length + response.completeness.length;
      this.setStatus(
        response.info ?? `Received ${total} suggestions.`,
        "info",
      );
    } catch (error) {
      const message = error instanceof ApiError ? error.detail : String(error);
      this.setStatus(message, "error");
    }
  }

  private async deleteStory(story: StoryPayload): Promise<void> {
    try {
      await this.api.deleteStory(story.id);
      this.setStatus(`Deleted ${story.id}.`, "info");
      await this.reloadStories();
    } catch (error) {
      const message = error instanceof ApiError ? error.detail : String(error);
      this.setStatus(message, "error");
    }
  }

  private async reloadStories(): Promise<void> {
    this.stories = await this.api.listStories(this.project);
    this.renderStories();
  }

  private renderStories(): void {
    this.storyList.render(this.stories, this.suggestions.visible());
  }

  private handleFrame(frame: ChannelFrame): void {
    switch (frame.type) {
      case "chat":
        this.chat.append(frame);
        break;
      case "story_changed":
        void this.reloadStories();
        break;
      case "suggestion_ready":
        if (frame.user !== this.user) {
          this.setStatus(
            `${frame.user} received ${frame.quality + frame.completeness} suggestions.`,
            "info",
          );
        }
        break;
      case "error":
        this.setStatus(frame.detail, "error");
        break;
    }
  }

  private setStatus(message: string, tone: "info" | "error"): void {
    const status = roleOf<HTMLElement>(this.root, "status");
    status.hidden = false;
    status.textContent = message;
    status.classList.toggle("editor-status-error", tone === "error");
  }
}
