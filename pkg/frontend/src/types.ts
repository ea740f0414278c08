/**
 * Wire contracts shared with the authoring service.
 *
 * Everything here mirrors the JSON the HTTP API and the project channel
 * actually emit. The UI never invents fields of its own on these shapes,
 * so a mismatch shows up as a compile error rather than a silent blank.
 */

export interface UserPayload {
  id: string;
  name: string;
}

export interface ProjectPayload {
  id: string;
  name: string;
  scenario: string;
  members: string[];
}

export interface StoryPayload {
  id: string;
  project: string;
  author: string;
  text: string;
  createdAt: string;
  deleted: boolean;
  role: string;
  goal: string;
  benefit: string | null;
}

/** A byte-exact span inside one story's text. */
export interface StoryRef {
  storyId: string;
  spanStart: number;
  spanEnd: number;
}

export type SuggestionCategory = "quality" | "completeness";

export type SuggestionKind =
  | "ISOLATED"
  | "NON_ATOMIC"
  | "CRUD"
  | "CLOSE_TO_COMPLETENESS"
  | "POP_ZERO"
  | "POP_ONE"
  | "POP_TWO"
  | "POP_THREE"
  | "FEELING_LUCKY"
  | "ALL_IS_WELL";

export interface SuggestionPayload {
  id: string;
  category: SuggestionCategory;
  kind: SuggestionKind;
  message: string;
  concepts: string[];
  storyRefs: StoryRef[];
  missingCrud: string[];
  hidden: boolean;
}

/** Result of asking the service to analyse the current stories. */
export interface SuggestionResponse {
  quality: SuggestionPayload[];
  completeness: SuggestionPayload[];
  info: string | null;
}

export interface FeedbackPayload {
  suggestion: string;
  user: string;
  disliked: boolean;
  at: string;
}

export interface ImportRowError {
  row: number;
  text: string;
  reason: string;
}

export interface ImportReport {
  imported: number;
  ids: string[];
  errors: ImportRowError[];
}

export interface GraphNodePayload {
  key: string;
  user: string | null;
  project: string;
  stories: string[];
  active: boolean;
  expiry: string;
}

export interface GraphEdgePayload {
  from: string;
  to: string;
  self: boolean;
}

export interface GraphPayload {
  scope: string;
  project: string;
  user: string | null;
  generation: number;
  committed_at: string | null;
  nodes: GraphNodePayload[];
  edges: GraphEdgePayload[];
}

export interface MetricsPayload {
  project: string;
  storyCount: number;
  conceptCount: number;
  isolatedCount: number;
  bfsEdges: number;
  avgNodeConnectivity: number;
}

/* Channel frames. The socket only ever carries these four shapes. */

export interface ChatFrame {
  type: "chat";
  id: string;
  project: string;
  sender: string;
  body: string;
  at: string;
}

export interface StoryChangedFrame {
  type: "story_changed";
  project: string;
  storyId: string;
  action: "created" | "updated" | "deleted";
}

export interface SuggestionReadyFrame {
  type: "suggestion_ready";
  project: string;
  user: string;
  quality: number;
  completeness: number;
}

export interface ErrorFrame {
  type: "error";
  detail: string;
}

export type ChannelFrame =
  | ChatFrame
  | StoryChangedFrame
  | SuggestionReadyFrame
  | ErrorFrame;

/** Close codes the server uses when it refuses or replaces a socket. */
export const CLOSE_REPLACED = 4000;
export const CLOSE_NOT_FOUND = 4404;
export const CLOSE_NOT_MEMBER = 4409;
