"""In-memory service state driven by a single event-application path.

Live request handlers build an event, apply it here, and journal it;
recovery replays the journaled events through the same code.  Events
carry their own timestamps and any pipeline output (concept mappings,
suggestion payloads), so application is deterministic and offline.
"""

from __future__ import annotations

from typing import Optional

from ..embedding import ConceptMapping
from ..errors import StoryGraphError
from ..graph import GraphStore
from ..stories import PARSE_LENIENT, PARSE_STRICT, StoryStore, utc_now_iso
from ..story_io import import_stories
from ..suggestions import SuggestionLog


class ChatLog:
    """Per-project ordered chat history."""

    def __init__(self):
        self.messages: dict[str, list[dict]] = {}

    def append(self, project_id: str, sender_id: str, body: str, at: str) -> dict:
        if not body or not body.strip():
            raise StoryGraphError("chat message body must not be empty")
        log = self.messages.setdefault(project_id, [])
        message = {
            "id": f"{project_id}-c{len(log) + 1}",
            "project": project_id,
            "sender": sender_id,
            "body": body,
            "at": at,
        }
        log.append(message)
        return message

    def history(self, project_id: str) -> list[dict]:
        return [dict(m) for m in self.messages.get(project_id, [])]

    def to_dict(self) -> dict:
        return {"messages": {p: self.messages[p] for p in sorted(self.messages)}}

    @classmethod
    def from_dict(cls, data: dict) -> "ChatLog":
        log = cls()
        log.messages = {p: [dict(m) for m in ms] for p, ms in data.get("messages", {}).items()}
        return log


def _mapping_to_event(mapping: ConceptMapping) -> dict:
    return {
        "parents": {p: list(ms) for p, ms in sorted(mapping.parents.items())},
        "provenance": {t: sorted(s) for t, s in sorted(mapping.provenance.items())},
    }


def _mapping_from_event(data: dict) -> ConceptMapping:
    return ConceptMapping(
        parents={p: list(ms) for p, ms in data["parents"].items()},
        provenance={t: set(s) for t, s in data["provenance"].items()},
    )


class Workspace:
    """Stories, graphs, suggestions and chat, mutated only via apply()."""

    def __init__(self, strict_format: bool = True):
        self.strict_format = strict_format
        self._now: Optional[str] = None
        mode = PARSE_STRICT if strict_format else PARSE_LENIENT
        self.stories = StoryStore(parse_mode=mode, clock=self._clock)
        self.graphs = GraphStore(clock=self._clock)
        self.suggestions = SuggestionLog()
        self.chat = ChatLog()

    def _clock(self) -> str:
        return self._now if self._now is not None else utc_now_iso()

    # -- event application --------------------------------------------

    def apply(self, event: dict):
        kind = event["kind"]
        handler = getattr(self, f"_apply_{kind}", None)
        if handler is None:
            raise ValueError(f"unknown event kind {kind!r}")
        self._now = event.get("at")
        try:
            return handler(event)
        finally:
            self._now = None

    def _apply_user_added(self, e):
        return self.stories.add_stakeholder(e["user"], e["name"])

    def _apply_project_created(self, e):
        return self.stories.create_project(e["project"], e["name"], e.get("scenario", ""))

    def _apply_member_joined(self, e):
        return self.stories.join_project(e["project"], e["user"])

    def _apply_story_created(self, e):
        return self.stories.create_story(e["project"], e["author"], e["text"])

    def _apply_story_edited(self, e):
        return self.stories.edit_story(e["story"], e["text"])

    def _apply_story_deleted(self, e):
        return self.stories.delete_story(e["story"])

    def _apply_stories_imported(self, e):
        return import_stories(
            self.stories,
            e["project"],
            e["author"],
            e["payload"].encode("utf-8"),
            e["format"],
        )

    def _apply_graph_committed(self, e):
        return self.graphs.commit(
            e["project"], e.get("user"), _mapping_from_event(e["mapping"]), at=e["at"]
        )

    def _apply_suggestions_generated(self, e):
        self.suggestions.replace(e["project"], e["user"], e["payloads"])

    def _apply_feedback_recorded(self, e):
        return self.suggestions.record_feedback(
            e["suggestion"], e["user"], e["disliked"], e["at"]
        )

    def _apply_chat_posted(self, e):
        self.stories.require_member(e["project"], e["user"])
        return self.chat.append(e["project"], e["user"], e["body"], e["at"])

    # -- snapshots -----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "strict_format": self.strict_format,
            "stories": self.stories.to_dict(),
            "graphs": self.graphs.to_dict(),
            "suggestions": self.suggestions.to_dict(),
            "chat": self.chat.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Workspace":
        ws = cls(strict_format=data.get("strict_format", True))
        ws.stories = StoryStore.from_dict(data["stories"], clock=ws._clock)
        ws.graphs = GraphStore.from_dict(data["graphs"], clock=ws._clock)
        ws.suggestions = SuggestionLog.from_dict(data["suggestions"])
        ws.chat = ChatLog.from_dict(data["chat"])
        return ws
