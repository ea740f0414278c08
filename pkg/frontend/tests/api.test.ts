import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { fakeFetch, jsonResponse, storyPayload, textResponse } from "./helpers.js";

describe("ApiClient requests", () => {
  it("posts a new story as JSON", async () => {
    const { requests, impl } = fakeFetch(() => jsonResponse(201, storyPayload()));
    const api = new ApiClient("", impl);
    const story = await api.createStory("p1", "u1", "As a user, I want to view the menu.");
    expect(story.id).toBe("p1-s1");
    expect(requests).toHaveLength(1);
    expect(requests[0].method).toBe("POST");
    expect(requests[0].url).toBe("/projects/p1/stories");
    expect(requests[0].headers["content-type"]).toBe("application/json");
    expect(JSON.parse(requests[0].body ?? "")).toEqual({
      author: "u1",
      text: "As a user, I want to view the menu.",
    });
  });

  it("trims a trailing slash from the base address", async () => {
    const { requests, impl } = fakeFetch(() => jsonResponse(200, []));
    const api = new ApiClient("http://localhost:8000/", impl);
    await api.listStories("p1");
    expect(requests[0].url).toBe("http://localhost:8000/projects/p1/stories");
  });

  it("carries list filters as query parameters", async () => {
    const { requests, impl } = fakeFetch(() => jsonResponse(200, []));
    const api = new ApiClient("", impl);
    await api.listStories("p1", { author: "u2", includeDeleted: true });
    expect(requests[0].url).toBe(
      "/projects/p1/stories?author=u2&include_deleted=true",
    );
  });

  it("asks for suggestions with the user in the query", async () => {
    const { requests, impl } = fakeFetch(() =>
      jsonResponse(200, { quality: [], completeness: [], info: null }),
    );
    const api = new ApiClient("", impl);
    await api.requestSuggestions("p1", "u1");
    expect(requests[0].method).toBe("POST");
    expect(requests[0].url).toBe("/projects/p1/suggestions?user=u1");
  });

  it("passes include_hidden through when listing suggestions", async () => {
    const { requests, impl } = fakeFetch(() => jsonResponse(200, []));
    const api = new ApiClient("", impl);
    await api.listSuggestions("p1", { user: "u1", includeHidden: false });
    expect(requests[0].url).toBe(
      "/projects/p1/suggestions?user=u1&include_hidden=false",
    );
  });

  it("sends feedback with the dislike flag", async () => {
    const { requests, impl } = fakeFetch(() =>
      jsonResponse(200, {
        suggestion: "sg-1",
        user: "u1",
        disliked: true,
        at: "2026-01-05T10:00:00+00:00",
      }),
    );
    const api = new ApiClient("", impl);
    await api.sendFeedback("sg-1", "u1");
    expect(requests[0].url).toBe("/suggestions/sg-1/feedback");
    expect(JSON.parse(requests[0].body ?? "")).toEqual({ user: "u1", disliked: true });
  });
});

describe("ApiClient error handling", () => {
  it("turns a format rejection into an ApiError with the echoed text", async () => {
    const { impl } = fakeFetch(() =>
      jsonResponse(400, {
        error: "format",
        detail: "story does not match the template",
        text: "this is not a story",
      }),
    );
    const api = new ApiClient("", impl);
    const error = await api.createStory("p1", "u1", "this is not a story").catch((e) => e);
    expect(error).toBeInstanceOf(ApiError);
    expect(error.status).toBe(400);
    expect(error.kind).toBe("format");
    expect(error.detail).toBe("story does not match the template");
    expect(error.rejectedText).toBe("this is not a story");
  });

  it("keeps the kind from the error envelope", async () => {
    const { impl } = fakeFetch(() =>
      jsonResponse(404, { error: "not_found", detail: "no such project" }),
    );
    const api = new ApiClient("", impl);
    const error = await api.getProject("nope").catch((e) => e);
    expect(error.kind).toBe("not_found");
    expect(error.rejectedText).toBeUndefined();
  });

  it("falls back to a generic error for non-JSON bodies", async () => {
    const { impl } = fakeFetch(() => textResponse(502, "bad gateway", "text/plain"));
    const api = new ApiClient("", impl);
    const error = await api.getProject("p1").catch((e) => e);
    expect(error).toBeInstanceOf(ApiError);
    expect(error.kind).toBe("http");
    expect(error.detail).toContain("502");
  });
});

describe("ApiClient transfer", () => {
  it("returns export bytes exactly as sent", async () => {
    const body = 'id,project,author,text,created_at\r\np1-s1,p1,u1,"As a user...",t\r\n';
    const { requests, impl } = fakeFetch(() =>
      textResponse(200, body, "text/csv; charset=utf-8"),
    );
    const api = new ApiClient("", impl);
    const result = await api.exportStories("p1", "csv");
    expect(requests[0].url).toBe("/projects/p1/export?format=csv");
    expect(result.data).toBe(body);
    expect(result.mediaType).toBe("text/csv; charset=utf-8");
  });

  it("posts import payloads untouched", async () => {
    const payload = "text\r\nAs a user, I want to pay, so that I can leave.\r\n";
    const { requests, impl } = fakeFetch(() =>
      jsonResponse(200, { imported: 1, ids: ["p1-s2"], errors: [] }),
    );
    const api = new ApiClient("", impl);
    const report = await api.importStories("p1", "u1", "csv", payload);
    expect(report.imported).toBe(1);
    expect(requests[0].url).toBe("/projects/p1/import?user=u1&format=csv");
    expect(requests[0].body).toBe(payload);
    expect(requests[0].headers["content-type"]).toBe("text/csv");
  });
});
