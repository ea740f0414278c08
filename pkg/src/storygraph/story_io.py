"""Bulk import and export of stories as JSON or CSV."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from .errors import FormatError, ImportPayloadError
from .stories import StoryStore, UserStory

FORMAT_JSON = "json"
FORMAT_CSV = "csv"

CSV_COLUMNS = ["id", "project", "author", "text", "created_at"]


@dataclass(slots=True)
class ImportReport:
    imported_ids: list[str] = field(default_factory=list)
    errors: list[dict] = field(default_factory=list)

    @property
    def imported(self) -> int:
        return len(self.imported_ids)

    def to_dict(self) -> dict:
        return {"imported": self.imported, "ids": self.imported_ids, "errors": self.errors}


def _story_row(story: UserStory) -> dict:
    return {
        "id": story.id,
        "project": story.project_id,
        "author": story.author_id,
        "text": story.raw_text,
        "created_at": story.created_at,
    }


def export_stories(
    store: StoryStore,
    project_id: str,
    format: str = FORMAT_JSON,
    author_id: str | None = None,
) -> bytes:
    """Serialize the project's non-deleted stories, optionally one author's."""
    stories = store.list_stories(project_id, author_id=author_id)
    if format == FORMAT_JSON:
        return json.dumps([_story_row(s) for s in stories], indent=2).encode("utf-8")
    if format == FORMAT_CSV:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\r\n")
        writer.writeheader()
        for s in stories:
            writer.writerow(_story_row(s))
        return buf.getvalue().encode("utf-8")
    raise ValueError(f"unknown export format: {format!r}")


def import_stories(
    store: StoryStore,
    project_id: str,
    author_id: str,
    payload: bytes,
    format: str = FORMAT_JSON,
) -> ImportReport:
    """Create one story per payload row, stamped with ``author_id`` and now.

    Rows that fail template parsing are collected in the report instead of
    aborting the batch.  An empty payload is rejected outright.
    """
    if not payload.strip():
        raise ImportPayloadError("empty import payload")
    rows = _read_rows(payload, format)
    report = ImportReport()
    for index, text in rows:
        try:
            story = store.create_story(project_id, author_id, text)
        except FormatError as exc:
            report.errors.append({"row": index, "text": text, "reason": exc.reason})
            continue
        report.imported_ids.append(story.id)
    return report


def _read_rows(payload: bytes, format: str) -> list[tuple[int, str]]:
    if format == FORMAT_JSON:
        try:
            data = json.loads(payload.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise ImportPayloadError(f"unreadable JSON payload: {exc}") from exc
        if not isinstance(data, list):
            raise ImportPayloadError("JSON payload must be an array of stories")
        rows = []
        for index, item in enumerate(data):
            if isinstance(item, str):
                rows.append((index, item))
            elif isinstance(item, dict) and isinstance(item.get("text"), str):
                rows.append((index, item["text"]))
            else:
                raise ImportPayloadError(f"row {index} has no usable 'text' field")
        return rows
    if format == FORMAT_CSV:
        try:
            reader = csv.DictReader(io.StringIO(payload.decode("utf-8")))
            records = list(reader)
        except (UnicodeDecodeError, csv.Error) as exc:
            raise ImportPayloadError(f"unreadable CSV payload: {exc}") from exc
        if reader.fieldnames is None or "text" not in reader.fieldnames:
            raise ImportPayloadError("CSV payload needs a 'text' column")
        return [(index, row.get("text") or "") for index, row in enumerate(records)]
    raise ValueError(f"unknown import format: {format!r}")
