"""User stories, stakeholders and projects.

A story is one sentence in the Connextra template::

    As a <role>, I want [to] <goal>[,] so that <benefit>.

``parse_user_story`` splits the sentence into its three segments and keeps
character offsets so later stages can point back into the raw text.  The
benefit clause is mandatory in ``strict`` mode and optional in ``lenient``
mode.  Deleting a story is always a soft delete: the record is retained and
flagged so graph history stays explainable.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Callable, Iterable, Optional

from .errors import FormatError, MembershipError, NotFoundError

PARSE_STRICT = "strict"
PARSE_LENIENT = "lenient"

_TEMPLATE = re.compile(
    r"^\s*as\s+an?\s+(?P<role>.+?)\s*,\s*i\s+want\s+(?:to\s+)?(?P<goal>.+?)"
    r"(?:\s*,?\s*so\s+that\s+(?P<benefit>.+?))?\s*[.!?]*\s*$",
    re.IGNORECASE | re.DOTALL,
)


def utc_now_iso() -> str:
    return datetime.now(timezone.utc).isoformat()


@dataclass(slots=True)
class ParsedStory:
    """Segments of one story plus their spans in the original text."""

    role: str
    goal: str
    benefit: Optional[str]
    role_span: tuple[int, int]
    goal_span: tuple[int, int]
    benefit_span: Optional[tuple[int, int]]

    def segments(self) -> list[tuple[str, str, int]]:
        """(name, text, start offset) for each present segment."""
        out = [
            ("role", self.role, self.role_span[0]),
            ("goal", self.goal, self.goal_span[0]),
        ]
        if self.benefit is not None:
            out.append(("benefit", self.benefit, self.benefit_span[0]))
        return out


@dataclass(slots=True)
class Stakeholder:
    id: str
    display_name: str


@dataclass(slots=True)
class Project:
    id: str
    name: str
    scenario_text: str = ""
    member_ids: list[str] = field(default_factory=list)


@dataclass(slots=True)
class UserStory:
    id: str
    project_id: str
    author_id: str
    raw_text: str
    parsed: ParsedStory
    created_at: str
    deleted: bool = False


def parse_user_story(text: str, mode: str = PARSE_STRICT) -> ParsedStory:
    """Split ``text`` into role, goal and benefit.

    Keywords match case-insensitively; the captured segments are verbatim
    slices of ``text``.  Raises FormatError when the template does not match,
    or when ``mode`` is strict and the benefit clause is missing.
    """
    if mode not in (PARSE_STRICT, PARSE_LENIENT):
        raise ValueError(f"unknown parse mode: {mode!r}")
    m = _TEMPLATE.match(text)
    if m is None:
        raise FormatError(text)
    benefit = m.group("benefit")
    if benefit is None and mode == PARSE_STRICT:
        raise FormatError(text, "benefit clause is required")
    return ParsedStory(
        role=m.group("role"),
        goal=m.group("goal"),
        benefit=benefit,
        role_span=m.span("role"),
        goal_span=m.span("goal"),
        benefit_span=m.span("benefit") if benefit is not None else None,
    )


class StoryStore:
    """Stakeholders, projects and stories for one workspace.

    Mutations for a given project are serialized by one lock; ids are
    allocated sequentially per project so identical operation sequences
    produce identical ids.
    """

    def __init__(self, parse_mode: str = PARSE_STRICT, clock: Callable[[], str] = utc_now_iso):
        self.parse_mode = parse_mode
        self._clock = clock
        self._lock = threading.RLock()
        self.stakeholders: dict[str, Stakeholder] = {}
        self.projects: dict[str, Project] = {}
        self.stories: dict[str, UserStory] = {}
        self._seq: dict[str, int] = {}

    # -- stakeholders and projects -------------------------------------

    def add_stakeholder(self, user_id: str, display_name: str) -> Stakeholder:
        with self._lock:
            if user_id in self.stakeholders:
                return self.stakeholders[user_id]
            s = Stakeholder(user_id, display_name)
            self.stakeholders[user_id] = s
            return s

    def create_project(self, project_id: str, name: str, scenario_text: str = "") -> Project:
        with self._lock:
            if project_id in self.projects:
                raise MembershipError(f"project {project_id!r} already exists")
            p = Project(project_id, name, scenario_text)
            self.projects[project_id] = p
            self._seq[project_id] = 0
            return p

    def join_project(self, project_id: str, user_id: str) -> Project:
        with self._lock:
            p = self._project(project_id)
            user = self.stakeholders.get(user_id)
            if user is None:
                raise NotFoundError(f"unknown user {user_id!r}")
            if user_id not in p.member_ids:
                # display names must stay unique within one project
                for other_id in p.member_ids:
                    if self.stakeholders[other_id].display_name == user.display_name:
                        raise MembershipError(
                            f"display name {user.display_name!r} already taken in {project_id!r}"
                        )
                p.member_ids.append(user_id)
            return p

    def _project(self, project_id: str) -> Project:
        p = self.projects.get(project_id)
        if p is None:
            raise NotFoundError(f"unknown project {project_id!r}")
        return p

    def get_project(self, project_id: str) -> Project:
        return self._project(project_id)

    def require_member(self, project_id: str, user_id: str) -> Project:
        p = self._project(project_id)
        self._check_member(p, user_id)
        return p

    def _check_member(self, project: Project, user_id: str) -> None:
        if user_id not in project.member_ids:
            raise MembershipError(f"user {user_id!r} is not a member of {project.id!r}")

    # -- stories -------------------------------------------------------

    def create_story(self, project_id: str, author_id: str, text: str) -> UserStory:
        with self._lock:
            p = self._project(project_id)
            self._check_member(p, author_id)
            parsed = parse_user_story(text, self.parse_mode)
            self._seq[project_id] += 1
            story = UserStory(
                id=f"{project_id}-s{self._seq[project_id]}",
                project_id=project_id,
                author_id=author_id,
                raw_text=text,
                parsed=parsed,
                created_at=self._clock(),
            )
            self.stories[story.id] = story
            return story

    def edit_story(self, story_id: str, text: str) -> UserStory:
        with self._lock:
            story = self.get_story(story_id)
            parsed = parse_user_story(text, self.parse_mode)
            story.raw_text = text
            story.parsed = parsed
            return story

    def delete_story(self, story_id: str) -> UserStory:
        with self._lock:
            story = self.get_story(story_id)
            story.deleted = True
            return story

    def get_story(self, story_id: str) -> UserStory:
        story = self.stories.get(story_id)
        if story is None:
            raise NotFoundError(f"unknown story {story_id!r}")
        return story

    def list_stories(
        self,
        project_id: str,
        author_id: Optional[str] = None,
        include_deleted: bool = False,
    ) -> list[UserStory]:
        self._project(project_id)
        out = []
        for story in self.stories.values():
            if story.project_id != project_id:
                continue
            if story.deleted and not include_deleted:
                continue
            if author_id is not None and story.author_id != author_id:
                continue
            out.append(story)
        out.sort(key=lambda s: s.id)
        return out

    def authors_of(self, story_ids: Iterable[str]) -> dict[str, str]:
        return {sid: self.stories[sid].author_id for sid in story_ids if sid in self.stories}

    # -- persistence ---------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "parse_mode": self.parse_mode,
            "stakeholders": [
                {"id": s.id, "display_name": s.display_name}
                for s in sorted(self.stakeholders.values(), key=lambda s: s.id)
            ],
            "projects": [
                {
                    "id": p.id,
                    "name": p.name,
                    "scenario_text": p.scenario_text,
                    "member_ids": list(p.member_ids),
                }
                for p in sorted(self.projects.values(), key=lambda p: p.id)
            ],
            "stories": [
                {
                    "id": s.id,
                    "project": s.project_id,
                    "author": s.author_id,
                    "text": s.raw_text,
                    "created_at": s.created_at,
                    "deleted": s.deleted,
                }
                for s in sorted(self.stories.values(), key=lambda s: s.id)
            ],
            "seq": dict(sorted(self._seq.items())),
        }

    @classmethod
    def from_dict(cls, data: dict, clock: Callable[[], str] = utc_now_iso) -> "StoryStore":
        store = cls(parse_mode=data.get("parse_mode", PARSE_STRICT), clock=clock)
        for s in data.get("stakeholders", []):
            store.stakeholders[s["id"]] = Stakeholder(s["id"], s["display_name"])
        for p in data.get("projects", []):
            store.projects[p["id"]] = Project(
                p["id"], p["name"], p.get("scenario_text", ""), list(p["member_ids"])
            )
        for s in data.get("stories", []):
            parsed = parse_user_story(s["text"], store.parse_mode)
            store.stories[s["id"]] = UserStory(
                id=s["id"],
                project_id=s["project"],
                author_id=s["author"],
                raw_text=s["text"],
                parsed=parsed,
                created_at=s["created_at"],
                deleted=s.get("deleted", False),
            )
        store._seq = dict(data.get("seq", {}))
        return store
