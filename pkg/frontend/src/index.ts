export { ApiClient, ApiError, type ExportResult, type FetchLike } from "./api.js";
export { EditorApp, type EditorAppOptions } from "./app.js";
export {
  ProjectChannel,
  channelUrl,
  type ChannelOptions,
  type FrameHandler,
  type SocketFactory,
  type SocketLike,
} from "./channel.js";
export { ChatPanel } from "./chat.js";
export { StoryEntry, type StoryEntryEvents } from "./editor.js";
export {
  highlightRuns,
  mergeSpans,
  spansForStory,
  type HighlightRun,
  type Span,
} from "./highlights.js";
export { StoryListPanel, type StoryListEvents } from "./stories.js";
export {
  KIND_COLORS,
  KIND_LABELS,
  KIND_ORDER,
  SuggestionPanel,
  type SuggestionPanelEvents,
} from "./suggestions.js";
export { TransferPanel, type FileSaver, type TransferEvents } from "./transfer.js";
export * from "./types.js";
