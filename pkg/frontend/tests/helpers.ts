/** Shared fakes and payload builders for the panel tests. */

import type { FetchLike } from "../src/api.js";
import type { SocketLike } from "../src/channel.js";
import type { StoryPayload, SuggestionPayload } from "../src/types.js";

export class FakeSocket implements SocketLike {
  readonly url: string;
  sent: string[] = [];
  closed: { code?: number } | null = null;
  onopen: ((event?: unknown) => void) | null = null;
  onmessage: ((event: { data: unknown }) => void) | null = null;
  onclose: ((event: { code: number }) => void) | null = null;
  onerror: ((event?: unknown) => void) | null = null;

  constructor(url: string) {
    this.url = url;
  }

  send(data: string): void {
    this.sent.push(data);
  }

  close(code?: number): void {
    this.closed = { code };
  }

  receive(frame: unknown): void {
    this.onmessage?.({ data: JSON.stringify(frame) });
  }

  receiveRaw(data: string): void {
    this.onmessage?.({ data });
  }

  drop(code = 1006): void {
    this.onclose?.({ code });
  }
}

export function socketFactory(): {
  sockets: FakeSocket[];
  factory: (url: string) => FakeSocket;
} {
  const sockets: FakeSocket[] = [];
  return {
    sockets,
    factory: (url) => {
      const socket = new FakeSocket(url);
      sockets.push(socket);
      return socket;
    },
  };
}

export interface RecordedRequest {
  url: string;
  method: string;
  body?: string;
  headers: Record<string, string>;
}

export function jsonResponse(status: number, payload: unknown): Response {
  return new Response(JSON.stringify(payload), {
    status,
    headers: { "content-type": "application/json" },
  });
}

export function textResponse(status: number, body: string, contentType: string): Response {
  return new Response(body, { status, headers: { "content-type": contentType } });
}

export function fakeFetch(
  handler: (req: RecordedRequest) => Response | Promise<Response>,
): { requests: RecordedRequest[]; impl: FetchLike } {
  const requests: RecordedRequest[] = [];
  const impl: FetchLike = async (url, init = {}) => {
    const request: RecordedRequest = {
      url,
      method: init.method ?? "GET",
      body: typeof init.body === "string" ? init.body : undefined,
      headers: { ...((init.headers as Record<string, string>) ?? {}) },
    };
    requests.push(request);
    return handler(request);
  };
  return { requests, impl };
}

export function storyPayload(overrides: Partial<StoryPayload> = {}): StoryPayload {
  return {
    id: "p1-s1",
    project: "p1",
    author: "u1",
    text: "As a user, I want to view the menu, so that life is easier.",
    createdAt: "2026-01-05T10:00:00+00:00",
    deleted: false,
    role: "user",
    goal: "view the menu",
    benefit: "life is easier",
    ...overrides,
  };
}

export function suggestionPayload(
  overrides: Partial<SuggestionPayload> = {},
): SuggestionPayload {
  return {
    id: "sg-00000001",
    category: "quality",
    kind: "ISOLATED",
    message: "The concept menu does not connect to anything else yet.",
    concepts: ["menu"],
    storyRefs: [],
    missingCrud: [],
    hidden: false,
    ...overrides,
  };
}

/** Let queued promise callbacks and zero-delay timers run. */
export function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}
