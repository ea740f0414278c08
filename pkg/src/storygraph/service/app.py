"""HTTP service tying the pipeline together.

Each suggestion request runs the full chain synchronously: extract
phrases, cluster, embed, pair into a concept mapping, commit the user
graph and the project graph, then generate suggestions from the fresh
snapshots.  All mutations for a project serialize through one lock;
anything that survives a restart goes through the journal first.
"""

from __future__ import annotations

import asyncio
import threading
from collections import defaultdict
from contextlib import asynccontextmanager
from typing import Optional

from fastapi import Body, FastAPI, Query, Request, WebSocket, WebSocketDisconnect
from fastapi.responses import JSONResponse, PlainTextResponse, Response

from ..config import Config
from ..embedding import (
    ConceptMapping,
    KeywordExtractor,
    RemoteEmbedder,
    TrigramHashEmbedder,
    pair_terms,
    similarity_matrix,
)
from ..errors import (
    EmptyGraphError,
    FormatError,
    ImportPayloadError,
    MembershipError,
    NotFoundError,
    ProviderUnavailableError,
    StoryGraphError,
)
from ..metrics import format_metrics_table, project_metrics
from ..nlp import (
    Lemmatizer,
    PhraseExtractor,
    Tagger,
    VerbGlossary,
    cluster_substrings,
    extract_crud_mentions,
    member_stories,
)
from ..stories import UserStory, utc_now_iso
from ..story_io import FORMAT_JSON, export_stories
from ..suggestions import completeness_suggestions, quality_suggestions
from .channel import CLOSE_NOT_FOUND, CLOSE_NOT_MEMBER, ChannelManager
from .persistence import Journal
from .state import Workspace, _mapping_to_event


def _story_payload(story: UserStory) -> dict:
    return {
        "id": story.id,
        "project": story.project_id,
        "author": story.author_id,
        "text": story.raw_text,
        "createdAt": story.created_at,
        "deleted": story.deleted,
        "role": story.parsed.role,
        "goal": story.parsed.goal,
        "benefit": story.parsed.benefit,
    }


class Service:
    def __init__(self, config: Optional[Config] = None):
        self.config = config or Config()
        self.journal = Journal(self.config.data_dir)
        self._state_lock = threading.RLock()
        self._project_locks: dict[str, threading.Lock] = defaultdict(threading.Lock)
        self._events_since_snapshot = 0

        state, events = self.journal.load()
        self.workspace = (
            Workspace.from_dict(state)
            if state is not None
            else Workspace(strict_format=self.config.strict_format)
        )
        for event in events:
            self.workspace.apply(event)

        self.lemmatizer = Lemmatizer()
        self.tagger = Tagger(self.lemmatizer)
        if self.config.glossary_path:
            self.glossary = VerbGlossary.load_file(self.config.glossary_path)
        else:
            self.glossary = VerbGlossary.load_default()
        self.extractor = PhraseExtractor(
            self.lemmatizer, self.tagger, extra_verbs=self.glossary.verbs
        )
        if self.config.embedding_provider == "remote":
            self.provider = RemoteEmbedder(self.config.provider_url)
        else:
            self.provider = TrigramHashEmbedder()
        self.keywords = KeywordExtractor(self.provider, self.lemmatizer, self.tagger)
        self.channels = ChannelManager()

    # -- state mutation ------------------------------------------------

    def record(self, event: dict):
        """Apply an event and journal it; rejected events leave no trace."""
        with self._state_lock:
            result = self.workspace.apply(event)
            self.journal.append(event)
            self._events_since_snapshot += 1
            if self._events_since_snapshot >= self.config.snapshot_every:
                self.journal.write_snapshot(self.workspace.to_dict())
                self._events_since_snapshot = 0
            return result

    def _lock_for(self, project_id: str) -> threading.Lock:
        with self._state_lock:
            return self._project_locks[project_id]

    # -- pipeline ------------------------------------------------------

    def build_mapping(self, stories: list[UserStory]) -> ConceptMapping:
        phrases = [p for s in stories for p in self.extractor.phrases(s)]
        clusters = cluster_substrings(phrases)
        refs = member_stories(phrases)
        reps = [c.representative for c in clusters]
        matrix = similarity_matrix(reps, self.provider)
        return pair_terms(
            clusters, matrix, self.keywords, refs, self.config.similarity_threshold
        )

    def request_suggestions(self, project_id: str, user_id: str) -> dict:
        self.workspace.stories.require_member(project_id, user_id)
        with self._lock_for(project_id):
            stories = self.workspace.stories
            own = stories.list_stories(project_id, author_id=user_id)
            everyone = stories.list_stories(project_id)

            # both mappings are computed before either commit so a provider
            # failure leaves the graphs at their previous generation
            user_mapping = self.build_mapping(own)
            project_mapping = self.build_mapping(everyone)

            at = utc_now_iso()
            self.record(
                {
                    "kind": "graph_committed",
                    "project": project_id,
                    "user": user_id,
                    "mapping": _mapping_to_event(user_mapping),
                    "at": at,
                }
            )
            self.record(
                {
                    "kind": "graph_committed",
                    "project": project_id,
                    "user": None,
                    "mapping": _mapping_to_event(project_mapping),
                    "at": at,
                }
            )

            user_view = self.workspace.graphs.view(project_id, user_id)
            project_view = self.workspace.graphs.view(project_id, None)

            phrases = [p for s in own for p in self.extractor.phrases(s)]
            mentions = [
                m
                for s in own
                for m in extract_crud_mentions(s, self.extractor, self.glossary)
            ]
            quality = quality_suggestions(
                project_id, user_id, user_view, phrases, mentions
            )

            authors = stories.authors_of([s.id for s in everyone])
            members = stories.get_project(project_id).member_ids
            others = [
                self.workspace.graphs.view(project_id, uid)
                for uid in sorted(members)
                if uid != user_id
            ]
            completeness, info = completeness_suggestions(
                project_id,
                user_id,
                user_view,
                project_view,
                authors,
                others,
                top_n=self.config.top_n,
                max_depth=self.config.max_depth,
            )

            payloads = [s.to_dict() for s in quality + completeness]
            self.record(
                {
                    "kind": "suggestions_generated",
                    "project": project_id,
                    "user": user_id,
                    "payloads": payloads,
                    "at": at,
                }
            )
            hidden = self.workspace.suggestions.is_hidden
            result = {
                "quality": [
                    dict(p, hidden=hidden(p["id"]))
                    for p in payloads
                    if p["category"] == "quality"
                ],
                "completeness": [
                    dict(p, hidden=hidden(p["id"]))
                    for p in payloads
                    if p["category"] == "completeness"
                ],
                "info": info,
            }
        self.channels.broadcast_threadsafe(
            project_id,
            {
                "type": "suggestion_ready",
                "project": project_id,
                "user": user_id,
                "quality": len(result["quality"]),
                "completeness": len(result["completeness"]),
            },
        )
        return result

    # -- read-only views ----------------------------------------------

    def graph_view(self, project_id: str, scope: str, user_id: Optional[str]):
        self.workspace.stories.get_project(project_id)
        if scope == "user":
            if not user_id:
                raise StoryGraphError("scope=user requires a user parameter")
            self.workspace.stories.require_member(project_id, user_id)
            return self.workspace.graphs.view(project_id, user_id)
        if scope == "project":
            return self.workspace.graphs.view(project_id, None)
        raise StoryGraphError(f"unknown graph scope {scope!r}")

    def metrics_payload(self, project_id: str) -> dict:
        stories = self.workspace.stories.list_stories(project_id)
        view = self.workspace.graphs.view(project_id, None)
        m = project_metrics(project_id, len(stories), view if view.nodes else None)
        return m.to_dict()


def create_app(config: Optional[Config] = None) -> FastAPI:
    service = Service(config)

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        service.channels.bind_loop(asyncio.get_running_loop())
        yield
        service.journal.close()

    app = FastAPI(title="storygraph", lifespan=lifespan)
    app.state.service = service

    def _error(status: int, kind: str, detail: str, extra: Optional[dict] = None):
        body = {"error": kind, "detail": detail}
        if extra:
            body.update(extra)
        return JSONResponse(status_code=status, content=body)

    @app.exception_handler(FormatError)
    async def _format_error(request: Request, exc: FormatError):
        return _error(400, "format", exc.reason, {"text": exc.text})

    @app.exception_handler(ImportPayloadError)
    async def _import_error(request: Request, exc: ImportPayloadError):
        return _error(400, "import", str(exc))

    @app.exception_handler(NotFoundError)
    async def _not_found(request: Request, exc: NotFoundError):
        return _error(404, "not_found", str(exc))

    @app.exception_handler(MembershipError)
    async def _membership(request: Request, exc: MembershipError):
        return _error(409, "membership", str(exc))

    @app.exception_handler(EmptyGraphError)
    async def _empty_graph(request: Request, exc: EmptyGraphError):
        return _error(409, "empty_graph", str(exc))

    @app.exception_handler(ProviderUnavailableError)
    async def _provider(request: Request, exc: ProviderUnavailableError):
        return _error(503, "provider_unavailable", str(exc))

    @app.exception_handler(StoryGraphError)
    async def _domain(request: Request, exc: StoryGraphError):
        return _error(400, "invalid", str(exc))

    def _need(payload: dict, key: str) -> str:
        value = payload.get(key)
        if value is None or (isinstance(value, str) and not value.strip()):
            raise StoryGraphError(f"missing required field {key!r}")
        return value

    # -- membership and setup -----------------------------------------

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/users", status_code=201)
    def create_user(payload: dict = Body(...)):
        user = service.record(
            {
                "kind": "user_added",
                "user": _need(payload, "id"),
                "name": _need(payload, "name"),
            }
        )
        return {"id": user.id, "name": user.display_name}

    @app.post("/projects", status_code=201)
    def create_project(payload: dict = Body(...)):
        project = service.record(
            {
                "kind": "project_created",
                "project": _need(payload, "id"),
                "name": _need(payload, "name"),
                "scenario": payload.get("scenario", ""),
            }
        )
        return {
            "id": project.id,
            "name": project.name,
            "scenario": project.scenario_text,
            "members": list(project.member_ids),
        }

    @app.get("/projects/{project_id}")
    def get_project(project_id: str):
        project = service.workspace.stories.get_project(project_id)
        return {
            "id": project.id,
            "name": project.name,
            "scenario": project.scenario_text,
            "members": list(project.member_ids),
        }

    @app.post("/projects/{project_id}/members")
    def join_project(project_id: str, payload: dict = Body(...)):
        project = service.record(
            {
                "kind": "member_joined",
                "project": project_id,
                "user": _need(payload, "user"),
            }
        )
        return {"project": project.id, "members": list(project.member_ids)}

    # -- stories -------------------------------------------------------

    @app.get("/projects/{project_id}/stories")
    def list_stories(
        project_id: str,
        author: Optional[str] = Query(default=None),
        include_deleted: bool = Query(default=False),
    ):
        stories = service.workspace.stories.list_stories(
            project_id, author_id=author, include_deleted=include_deleted
        )
        return [_story_payload(s) for s in stories]

    @app.post("/projects/{project_id}/stories", status_code=201)
    def create_story(project_id: str, payload: dict = Body(...)):
        story = service.record(
            {
                "kind": "story_created",
                "project": project_id,
                "author": _need(payload, "author"),
                "text": _need(payload, "text"),
                "at": utc_now_iso(),
            }
        )
        service.channels.broadcast_threadsafe(
            project_id,
            {"type": "story_changed", "project": project_id, "storyId": story.id, "action": "created"},
        )
        return _story_payload(story)

    @app.put("/stories/{story_id}")
    def edit_story(story_id: str, payload: dict = Body(...)):
        story = service.record(
            {
                "kind": "story_edited",
                "story": story_id,
                "text": _need(payload, "text"),
                "at": utc_now_iso(),
            }
        )
        service.channels.broadcast_threadsafe(
            story.project_id,
            {
                "type": "story_changed",
                "project": story.project_id,
                "storyId": story.id,
                "action": "updated",
            },
        )
        return _story_payload(story)

    @app.delete("/stories/{story_id}")
    def delete_story(story_id: str):
        story = service.record(
            {"kind": "story_deleted", "story": story_id, "at": utc_now_iso()}
        )
        service.channels.broadcast_threadsafe(
            story.project_id,
            {
                "type": "story_changed",
                "project": story.project_id,
                "storyId": story.id,
                "action": "deleted",
            },
        )
        return {"id": story.id, "deleted": True}

    # -- import / export ----------------------------------------------

    @app.post("/projects/{project_id}/import")
    async def import_project(
        request: Request,
        project_id: str,
        user: str = Query(...),
        format: str = Query(default=FORMAT_JSON),
    ):
        body = await request.body()
        report = service.record(
            {
                "kind": "stories_imported",
                "project": project_id,
                "author": user,
                "payload": body.decode("utf-8"),
                "format": format,
                "at": utc_now_iso(),
            }
        )
        return report.to_dict()

    @app.get("/projects/{project_id}/export")
    def export_project(
        project_id: str,
        format: str = Query(default=FORMAT_JSON),
        author: Optional[str] = Query(default=None),
    ):
        data = export_stories(
            service.workspace.stories, project_id, format, author_id=author
        )
        media = "application/json" if format == FORMAT_JSON else "text/csv"
        return Response(content=data, media_type=media)

    # -- suggestions ---------------------------------------------------

    @app.post("/projects/{project_id}/suggestions")
    def request_suggestions(project_id: str, user: str = Query(...)):
        return service.request_suggestions(project_id, user)

    @app.get("/projects/{project_id}/suggestions")
    def list_suggestions(
        project_id: str,
        user: Optional[str] = Query(default=None),
        include_hidden: bool = Query(default=True),
    ):
        service.workspace.stories.get_project(project_id)
        return service.workspace.suggestions.list(
            project_id, user_id=user, include_hidden=include_hidden
        )

    @app.post("/suggestions/{suggestion_id}/feedback")
    def record_feedback(suggestion_id: str, payload: dict = Body(...)):
        entry = service.record(
            {
                "kind": "feedback_recorded",
                "suggestion": suggestion_id,
                "user": _need(payload, "user"),
                "disliked": bool(payload.get("disliked", True)),
                "at": utc_now_iso(),
            }
        )
        return {"suggestion": suggestion_id, **entry}

    # -- graph and metrics --------------------------------------------

    @app.get("/projects/{project_id}/graph")
    def get_graph(
        project_id: str,
        scope: str = Query(default="project"),
        user: Optional[str] = Query(default=None),
        format: str = Query(default="json"),
    ):
        view = service.graph_view(project_id, scope, user)
        if format == "dot":
            return PlainTextResponse(view.to_dot())
        if format != "json":
            raise StoryGraphError(f"unknown graph format {format!r}")
        return {"scope": scope, **view.to_json()}

    @app.get("/projects/{project_id}/metrics")
    def get_metrics(project_id: str, format: str = Query(default="json")):
        payload = service.metrics_payload(project_id)
        if format == "text":
            from ..metrics import ProjectMetrics

            m = ProjectMetrics(
                payload["project"],
                payload["storyCount"],
                payload["conceptCount"],
                payload["isolatedCount"],
                payload["bfsEdges"],
                payload["avgNodeConnectivity"],
            )
            return PlainTextResponse(format_metrics_table(m))
        return payload

    # -- realtime channel ---------------------------------------------

    @app.websocket("/projects/{project_id}/channel")
    async def channel(websocket: WebSocket, project_id: str, user: str = Query(...)):
        try:
            service.workspace.stories.require_member(project_id, user)
        except NotFoundError:
            await websocket.close(code=CLOSE_NOT_FOUND)
            return
        except MembershipError:
            await websocket.close(code=CLOSE_NOT_MEMBER)
            return
        await websocket.accept()
        service.channels.bind_loop(asyncio.get_running_loop())
        await service.channels.register(project_id, user, websocket)
        await service.channels.replay_chat(
            project_id, user, service.workspace.chat.history(project_id)
        )
        try:
            while True:
                frame = await websocket.receive_json()
                if frame.get("type") == "chat":
                    try:
                        message = service.record(
                            {
                                "kind": "chat_posted",
                                "project": project_id,
                                "user": user,
                                "body": frame.get("body", ""),
                                "at": utc_now_iso(),
                            }
                        )
                    except StoryGraphError as exc:
                        await websocket.send_json({"type": "error", "detail": str(exc)})
                        continue
                    history_len = len(service.workspace.chat.history(project_id))
                    await service.channels.broadcast_chat(
                        project_id, history_len, {"type": "chat", **message}
                    )
                else:
                    await websocket.send_json(
                        {
                            "type": "error",
                            "detail": f"unknown frame type {frame.get('type')!r}",
                        }
                    )
        except WebSocketDisconnect:
            pass
        finally:
            service.channels.unregister(project_id, user, websocket)

    return app
