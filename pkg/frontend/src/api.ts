/**
 * Thin typed client for the authoring service HTTP API.
 *
 * Every call goes through one request helper so error handling stays in
 * a single place: non-2xx responses become ApiError with the kind and
 * detail from the service's error envelope. Format rejections keep the
 * echoed story text so the editor can put it back in the entry box.
 */

import type {
  FeedbackPayload,
  GraphPayload,
  ImportReport,
  MetricsPayload,
  ProjectPayload,
  StoryPayload,
  SuggestionPayload,
  SuggestionResponse,
  UserPayload,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  readonly status: number;
  readonly kind: string;
  readonly detail: string;
  /** Echo of the rejected story text, present on format errors only. */
  readonly rejectedText?: string;

  constructor(status: number, kind: string, detail: string, rejectedText?: string) {
    super(detail);
    this.name = "ApiError";
    this.status = status;
    this.kind = kind;
    this.detail = detail;
    this.rejectedText = rejectedText;
  }
}

export interface ExportResult {
  data: string;
  mediaType: string;
}

function query(params: Record<string, string | boolean | undefined>): string {
  const search = new URLSearchParams();
  for (const [key, value] of Object.entries(params)) {
    if (value !== undefined) search.set(key, String(value));
  }
  const encoded = search.toString();
  return encoded ? `?${encoded}` : "";
}

export class ApiClient {
  private readonly base: string;
  private readonly fetchImpl: FetchLike;

  constructor(base = "", fetchImpl?: FetchLike) {
    this.base = base.replace(/\/$/, "");
    this.fetchImpl = fetchImpl ?? ((url, init) => globalThis.fetch(url, init));
  }

  private async request(path: string, init: RequestInit = {}): Promise<Response> {
    const response = await this.fetchImpl(this.base + path, init);
    if (response.ok) return response;
    let kind = "http";
    let detail = `request failed with status ${response.status}`;
    let rejected: string | undefined;
    try {
      const body = (await response.json()) as {
        error?: string;
        detail?: string;
        text?: string;
      };
      if (body.error) kind = body.error;
      if (body.detail) detail = body.detail;
      rejected = body.text;
    } catch {
      // non-JSON body, keep the generic message
    }
    throw new ApiError(response.status, kind, detail, rejected);
  }

  private async json<T>(path: string, init: RequestInit = {}): Promise<T> {
    const response = await this.request(path, init);
    return (await response.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.json<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  createUser(id: string, name: string): Promise<UserPayload> {
    return this.post("/users", { id, name });
  }

  createProject(id: string, name: string, scenario = ""): Promise<ProjectPayload> {
    return this.post("/projects", { id, name, scenario });
  }

  getProject(project: string): Promise<ProjectPayload> {
    return this.json(`/projects/${project}`);
  }

  joinProject(project: string, user: string): Promise<{ project: string; members: string[] }> {
    return this.post(`/projects/${project}/members`, { user });
  }

  listStories(
    project: string,
    opts: { author?: string; includeDeleted?: boolean } = {},
  ): Promise<StoryPayload[]> {
    const suffix = query({
      author: opts.author,
      include_deleted: opts.includeDeleted,
    });
    return this.json(`/projects/${project}/stories${suffix}`);
  }

  createStory(project: string, author: string, text: string): Promise<StoryPayload> {
    return this.post(`/projects/${project}/stories`, { author, text });
  }

  editStory(storyId: string, text: string): Promise<StoryPayload> {
    return this.json(`/stories/${storyId}`, {
      method: "PUT",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ text }),
    });
  }

  deleteStory(storyId: string): Promise<{ id: string; deleted: boolean }> {
    return this.json(`/stories/${storyId}`, { method: "DELETE" });
  }

  requestSuggestions(project: string, user: string): Promise<SuggestionResponse> {
    return this.json(`/projects/${project}/suggestions${query({ user })}`, {
      method: "POST",
    });
  }

  listSuggestions(
    project: string,
    opts: { user?: string; includeHidden?: boolean } = {},
  ): Promise<SuggestionPayload[]> {
    const suffix = query({
      user: opts.user,
      include_hidden: opts.includeHidden,
    });
    return this.json(`/projects/${project}/suggestions${suffix}`);
  }

  sendFeedback(suggestionId: string, user: string, disliked = true): Promise<FeedbackPayload> {
    return this.post(`/suggestions/${suggestionId}/feedback`, { user, disliked });
  }

  /**
   * Fetch stories in the requested format as raw text. The bytes are
   * returned untouched so a download writes exactly what the API sent.
   */
  async exportStories(
    project: string,
    format: "json" | "csv",
    author?: string,
  ): Promise<ExportResult> {
    const response = await this.request(
      `/projects/${project}/export${query({ format, author })}`,
    );
    const mediaType = response.headers.get("content-type") ?? "application/octet-stream";
    return { data: await response.text(), mediaType };
  }

  importStories(
    project: string,
    user: string,
    format: "json" | "csv",
    payload: string,
  ): Promise<ImportReport> {
    return this.json(`/projects/${project}/import${query({ user, format })}`, {
      method: "POST",
      headers: { "content-type": format === "json" ? "application/json" : "text/csv" },
      body: payload,
    });
  }

  getGraph(
    project: string,
    opts: { scope?: "project" | "user"; user?: string } = {},
  ): Promise<GraphPayload> {
    const suffix = query({ scope: opts.scope, user: opts.user });
    return this.json(`/projects/${project}/graph${suffix}`);
  }

  getMetrics(project: string): Promise<MetricsPayload> {
    return this.json(`/projects/${project}/metrics`);
  }
}
