/**
 * Span arithmetic for story highlights.
 *
 * Highlight decorations come only from the storyRefs a suggestion
 * carries; nothing in the UI re-derives spans from the text itself.
 * These helpers clamp the raw spans to the story, merge overlaps and
 * cut the text into alternating plain and marked runs.
 */

import type { SuggestionPayload } from "./types.js";

export type Span = [number, number];

export interface HighlightRun {
  text: string;
  marked: boolean;
}

/** Collect the spans that visible suggestions attach to one story. */
export function spansForStory(storyId: string, suggestions: SuggestionPayload[]): Span[] {
  const spans: Span[] = [];
  for (const suggestion of suggestions) {
    if (suggestion.hidden) continue;
    for (const ref of suggestion.storyRefs) {
      if (ref.storyId === storyId) spans.push([ref.spanStart, ref.spanEnd]);
    }
  }
  return spans;
}

/** Clamp spans to the text, drop empty ones and merge overlaps. */
export function mergeSpans(text: string, spans: Span[]): Span[] {
  const clamped: Span[] = [];
  for (const [start, end] of spans) {
    const lo = Math.max(0, Math.min(start, text.length));
    const hi = Math.max(0, Math.min(end, text.length));
    if (hi > lo) clamped.push([lo, hi]);
  }
  clamped.sort((a, b) => a[0] - b[0] || a[1] - b[1]);
  const merged: Span[] = [];
  for (const span of clamped) {
    const last = merged[merged.length - 1];
    if (last && span[0] <= last[1]) {
      last[1] = Math.max(last[1], span[1]);
    } else {
      merged.push([span[0], span[1]]);
    }
  }
  return merged;
}

/** Cut the text into runs; marked runs are exactly the merged spans. */
export function highlightRuns(text: string, spans: Span[]): HighlightRun[] {
  const merged = mergeSpans(text, spans);
  const runs: HighlightRun[] = [];
  let cursor = 0;
  for (const [start, end] of merged) {
    if (start > cursor) runs.push({ text: text.slice(cursor, start), marked: false });
    runs.push({ text: text.slice(start, end), marked: true });
    cursor = end;
  }
  if (cursor < text.length) runs.push({ text: text.slice(cursor), marked: false });
  return runs;
}
