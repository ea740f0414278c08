"""Suggestion heuristics over the committed concept graphs.

Quality suggestions look only at the requesting user's own stories and
graph:

* ISOLATED      -- concepts nothing else relates to (self-link nodes);
* NON_ATOMIC    -- noun phrases joined by and/or, likely two requirements;
* CRUD          -- terms acted on by some data actions but not all four.

Completeness suggestions compare the user's graph against the project
graph through the top-5 main concepts (M_u, M_p) and their depth-2
neighborhoods (C_u, C_p):

* CLOSE_TO_COMPLETENESS -- same main concepts, but some related concepts
  around a main concept are missing from the user's view;
* POP_ZERO      -- project main concepts absent from the user's top list;
* POP_ONE       -- related concepts the user has no node for at all;
* POP_TWO       -- related concepts only the user's own stories support;
* POP_THREE     -- around the user's extra main concepts, related
  concepts supported only by other members' stories;
* FEELING_LUCKY -- concepts other members left isolated;
* ALL_IS_WELL   -- graphs agree completely; suppresses the six above.

Every list is capped at five suggestions per kind and five concepts per
message, truncated by the same ranking top_concepts uses.  Suggestion ids
are content hashes, so the same situation always produces the same id and
recorded dislikes survive regeneration.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Optional

from .errors import EmptyGraphError, NotFoundError
from .graph import GraphView
from .nlp.chunking import NounPhrase
from .nlp.crud import CATEGORIES, CrudMention

CATEGORY_QUALITY = "quality"
CATEGORY_COMPLETENESS = "completeness"

ISOLATED = "ISOLATED"
NON_ATOMIC = "NON_ATOMIC"
CRUD = "CRUD"
CLOSE_TO_COMPLETENESS = "CLOSE_TO_COMPLETENESS"
POP_ZERO = "POP_ZERO"
POP_ONE = "POP_ONE"
POP_TWO = "POP_TWO"
POP_THREE = "POP_THREE"
FEELING_LUCKY = "FEELING_LUCKY"
ALL_IS_WELL = "ALL_IS_WELL"

QUALITY_KINDS = (ISOLATED, NON_ATOMIC, CRUD)
COMPLETENESS_KINDS = (
    CLOSE_TO_COMPLETENESS,
    POP_ZERO,
    POP_ONE,
    POP_TWO,
    POP_THREE,
    FEELING_LUCKY,
    ALL_IS_WELL,
)

MAX_PER_KIND = 5
MAX_CONCEPTS = 5


@dataclass(slots=True)
class StoryRef:
    story_id: str
    span_start: int
    span_end: int

    def to_dict(self) -> dict:
        return {"storyId": self.story_id, "spanStart": self.span_start, "spanEnd": self.span_end}


@dataclass(slots=True)
class Suggestion:
    id: str
    category: str
    kind: str
    message: str
    concepts: list[str]
    story_refs: list[StoryRef] = field(default_factory=list)
    missing_crud: list[str] = field(default_factory=list)
    hidden: bool = False

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "category": self.category,
            "kind": self.kind,
            "message": self.message,
            "concepts": list(self.concepts),
            "storyRefs": [r.to_dict() for r in self.story_refs],
            "missingCrud": list(self.missing_crud),
            "hidden": self.hidden,
        }


def _make_suggestion(
    project_id: str,
    user_id: str,
    kind: str,
    message: str,
    concepts: list[str],
    story_refs: list[StoryRef] | None = None,
    missing_crud: list[str] | None = None,
) -> Suggestion:
    category = CATEGORY_QUALITY if kind in QUALITY_KINDS else CATEGORY_COMPLETENESS
    refs = story_refs or []
    body = {
        "project": project_id,
        "user": user_id,
        "kind": kind,
        "message": message,
        "concepts": concepts,
        "storyRefs": [r.to_dict() for r in refs],
        "missingCrud": missing_crud or [],
    }
    digest = hashlib.sha1(json.dumps(body, sort_keys=True).encode("utf-8")).hexdigest()
    return Suggestion(
        id=f"sg-{digest[:16]}",
        category=category,
        kind=kind,
        message=message,
        concepts=list(concepts),
        story_refs=refs,
        missing_crud=list(missing_crud or []),
    )


def _rank_key(view: Optional[GraphView], concept: str):
    if view is not None and concept in view.nodes:
        return (-len(view.nodes[concept].stories), -view.degree(concept), concept)
    return (0, 0, concept)


def _ranked(view: Optional[GraphView], concepts, cap: int = MAX_CONCEPTS) -> list[str]:
    return sorted(concepts, key=lambda c: _rank_key(view, c))[:cap]


def _isolated(view: GraphView) -> set[str]:
    try:
        return view.isolated_concepts()
    except EmptyGraphError:
        return set()


# -- quality ----------------------------------------------------------


def quality_suggestions(
    project_id: str,
    user_id: str,
    view: GraphView,
    phrases: list[NounPhrase],
    mentions: list[CrudMention],
) -> list[Suggestion]:
    """ISOLATED, NON_ATOMIC and CRUD checks over one user's stories."""
    out: list[Suggestion] = []

    for concept in _ranked(view, _isolated(view), cap=MAX_PER_KIND):
        refs = _phrase_refs(phrases, concept)
        out.append(
            _make_suggestion(
                project_id,
                user_id,
                ISOLATED,
                f"'{concept}' is not related to any other concept. Add user stories "
                "connecting it to the rest of the project, or remove the stories that "
                "mention it.",
                [concept],
                story_refs=refs,
            )
        )

    conjunction_texts: dict[str, list[NounPhrase]] = {}
    for p in phrases:
        if "and" in p.tokens or "or" in p.tokens:
            conjunction_texts.setdefault(p.text, []).append(p)
    for text in _ranked(view, conjunction_texts, cap=MAX_PER_KIND):
        occurrences = conjunction_texts[text]
        refs = [StoryRef(p.story_id, p.span[0], p.span[1]) for p in occurrences]
        out.append(
            _make_suggestion(
                project_id,
                user_id,
                NON_ATOMIC,
                f"'{text}' bundles several things into one phrase; consider splitting "
                "the story so each concept gets its own.",
                [text],
                story_refs=_dedupe_refs(refs),
            )
        )

    by_term: dict[str, dict] = {}
    for m in mentions:
        entry = by_term.setdefault(m.term, {"categories": set(), "refs": []})
        entry["categories"].add(m.category)
        entry["refs"].append(StoryRef(m.story_id, m.term_span[0], m.term_span[1]))
    gapped = [t for t, e in by_term.items() if set(CATEGORIES) - e["categories"]]
    for term in _ranked(view, gapped, cap=MAX_PER_KIND):
        entry = by_term[term]
        missing = sorted(
            (c.upper() for c in set(CATEGORIES) - entry["categories"]),
            key=lambda c: CATEGORIES.index(c.lower()),
        )
        nice = ", ".join(m.lower() for m in missing)
        out.append(
            _make_suggestion(
                project_id,
                user_id,
                CRUD,
                f"Stories act on '{term}' but never {nice} it; consider whether those "
                "actions need stories too.",
                [term],
                story_refs=_dedupe_refs(entry["refs"]),
                missing_crud=missing,
            )
        )
    return out


def _phrase_refs(phrases: list[NounPhrase], concept: str) -> list[StoryRef]:
    refs = [
        StoryRef(p.story_id, p.span[0], p.span[1]) for p in phrases if p.text == concept
    ]
    return _dedupe_refs(refs)


def _dedupe_refs(refs: list[StoryRef]) -> list[StoryRef]:
    seen = set()
    out = []
    for r in sorted(refs, key=lambda r: (r.story_id, r.span_start, r.span_end)):
        key = (r.story_id, r.span_start, r.span_end)
        if key not in seen:
            seen.add(key)
            out.append(r)
    return out


# -- completeness -----------------------------------------------------


def completeness_suggestions(
    project_id: str,
    user_id: str,
    user_view: GraphView,
    project_view: GraphView,
    story_authors: dict[str, str],
    other_views: list[GraphView],
    top_n: int = 5,
    max_depth: int = 2,
) -> tuple[list[Suggestion], Optional[str]]:
    """Compare the user's graph with the project graph and emit H4..H10.

    Returns the suggestion list plus an informational message when the
    comparison could not run (empty project or user graph).
    """
    try:
        main_project = project_view.top_concepts(top_n)
    except EmptyGraphError:
        return [], "The project has no concepts yet; add some stories first."
    try:
        main_user = user_view.top_concepts(top_n)
    except EmptyGraphError:
        return [], "You have no stories in this project yet, so there is nothing to compare."

    c_p = {m: project_view.neighborhood_set(m, max_depth) for m in main_project}

    def user_hood(m: str) -> set[str]:
        if m in user_view.nodes:
            return user_view.neighborhood_set(m, max_depth)
        return set()

    same_main = set(main_user) == set(main_project)
    if same_main and all(user_hood(m) == c_p[m] for m in main_project):
        suggestion = _make_suggestion(
            project_id,
            user_id,
            ALL_IS_WELL,
            "You have successfully achieved a complete solution: your stories cover "
            "the project's main concepts and everything related to them.",
            _ranked(project_view, main_project),
        )
        return [suggestion], None

    out: list[Suggestion] = []

    if same_main:
        emitted = 0
        for m in main_project:
            missing = c_p[m] - user_hood(m)
            if not missing or emitted >= MAX_PER_KIND:
                continue
            out.append(
                _make_suggestion(
                    project_id,
                    user_id,
                    CLOSE_TO_COMPLETENESS,
                    f"You are close: around '{m}' the project also talks about "
                    f"{_listing(_ranked(project_view, missing))}, which your stories "
                    "do not reach yet.",
                    _ranked(project_view, missing),
                )
            )
            emitted += 1

    unseen_main = set(main_project) - set(main_user)
    if unseen_main:
        ranked = _ranked(project_view, unseen_main)
        out.append(
            _make_suggestion(
                project_id,
                user_id,
                POP_ZERO,
                f"The project's popular concepts {_listing(ranked)} barely appear in "
                "your stories.",
                ranked,
            )
        )

    emitted = 0
    for m in main_project:
        absent = {c for c in c_p[m] if c not in user_view.nodes}
        if not absent or emitted >= MAX_PER_KIND:
            continue
        ranked = _ranked(project_view, absent)
        out.append(
            _make_suggestion(
                project_id,
                user_id,
                POP_ONE,
                f"Concepts related to the popular '{m}' are missing from your stories: "
                f"{_listing(ranked)}.",
                ranked,
            )
        )
        emitted += 1

    emitted = 0
    for m in main_project:
        only_mine = {
            c
            for c in c_p[m]
            if _supported_only_by(project_view, c, story_authors, {user_id})
        }
        if not only_mine or emitted >= MAX_PER_KIND:
            continue
        ranked = _ranked(project_view, only_mine)
        out.append(
            _make_suggestion(
                project_id,
                user_id,
                POP_TWO,
                f"Around the popular '{m}', only your own stories mention "
                f"{_listing(ranked)}; others have not confirmed them.",
                ranked,
            )
        )
        emitted += 1

    emitted = 0
    for m in [m for m in main_user if m not in set(main_project)]:
        if m not in project_view.nodes or emitted >= MAX_PER_KIND:
            continue
        others_only = {
            c
            for c in project_view.neighborhood_set(m, max_depth)
            if _supported_only_by_others(project_view, c, story_authors, user_id)
        }
        if not others_only:
            continue
        ranked = _ranked(project_view, others_only)
        out.append(
            _make_suggestion(
                project_id,
                user_id,
                POP_THREE,
                f"Around your frequent concept '{m}', other members contributed "
                f"{_listing(ranked)}; your stories do not cover them.",
                ranked,
            )
        )
        emitted += 1

    own_isolated = _isolated(user_view)
    emitted = 0
    for other in sorted(other_views, key=lambda v: v.user_id or ""):
        lucky = _isolated(other) - own_isolated
        if not lucky or emitted >= MAX_PER_KIND:
            continue
        ranked = _ranked(other, lucky)
        out.append(
            _make_suggestion(
                project_id,
                user_id,
                FEELING_LUCKY,
                f"Another member has not managed to relate {_listing(ranked)} to "
                "anything yet; maybe your stories can.",
                ranked,
            )
        )
        emitted += 1

    return out, None


def _supported_only_by(
    view: GraphView, concept: str, story_authors: dict[str, str], users: set[str]
) -> bool:
    stories = view.nodes[concept].stories if concept in view.nodes else []
    if not stories:
        return False
    return all(story_authors.get(s) in users for s in stories)


def _supported_only_by_others(
    view: GraphView, concept: str, story_authors: dict[str, str], user_id: str
) -> bool:
    stories = view.nodes[concept].stories if concept in view.nodes else []
    if not stories:
        return False
    return all(story_authors.get(s) not in (None, user_id) for s in stories)


def _listing(concepts: list[str]) -> str:
    return ", ".join(f"'{c}'" for c in concepts)


# -- persistence of generated suggestions and feedback ----------------


class SuggestionLog:
    """Generated suggestions plus dislike feedback, keyed by content id."""

    def __init__(self):
        self.records: dict[str, dict] = {}
        self.feedback: dict[str, dict] = {}

    def replace(self, project_id: str, user_id: str, payloads: list[dict]) -> None:
        """Swap in a fresh generation of suggestions for one user's request.

        Earlier suggestions for the same (project, user) scope are dropped;
        recorded dislikes keep applying to regenerated ids.
        """
        stale = [
            sid
            for sid, rec in self.records.items()
            if rec["project"] == project_id and rec["user"] == user_id
        ]
        for sid in stale:
            del self.records[sid]
        for payload in payloads:
            entry = dict(payload)
            entry["hidden"] = self.is_hidden(entry["id"])
            self.records[entry["id"]] = {
                "project": project_id,
                "user": user_id,
                "suggestion": entry,
            }

    def is_hidden(self, suggestion_id: str) -> bool:
        fb = self.feedback.get(suggestion_id)
        return bool(fb and fb.get("disliked"))

    def record_feedback(
        self, suggestion_id: str, user_id: str, disliked: bool, at: str
    ) -> dict:
        if suggestion_id not in self.records:
            raise NotFoundError(f"unknown suggestion {suggestion_id!r}")
        entry = {"user": user_id, "disliked": disliked, "at": at}
        self.feedback[suggestion_id] = entry
        self.records[suggestion_id]["suggestion"]["hidden"] = disliked
        return entry

    def list(
        self, project_id: str, user_id: Optional[str] = None, include_hidden: bool = True
    ) -> list[dict]:
        out = []
        for sid in sorted(self.records):
            rec = self.records[sid]
            if rec["project"] != project_id:
                continue
            if user_id is not None and rec["user"] != user_id:
                continue
            if not include_hidden and rec["suggestion"]["hidden"]:
                continue
            out.append(dict(rec["suggestion"]))
        return out

    def to_dict(self) -> dict:
        return {
            "records": {sid: self.records[sid] for sid in sorted(self.records)},
            "feedback": {sid: self.feedback[sid] for sid in sorted(self.feedback)},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SuggestionLog":
        log = cls()
        log.records = {k: v for k, v in data.get("records", {}).items()}
        log.feedback = {k: v for k, v in data.get("feedback", {}).items()}
        return log
