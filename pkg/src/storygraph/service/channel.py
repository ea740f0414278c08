"""Realtime fan-out over websockets.

One live connection per (project, user); a second connect replaces the
first.  Frames are JSON objects tagged with a ``type`` of ``chat``,
``suggestion_ready`` or ``story_changed``.  Chat history is stored by
the workspace; the manager tracks per-user delivery cursors so a member
who reconnects receives what they missed.  Cursors live in memory only,
so after a server restart replay starts from the beginning of the
history; receivers dedupe by message id.
"""

from __future__ import annotations

import asyncio
from typing import Optional

CLOSE_REPLACED = 4000
CLOSE_NOT_FOUND = 4404
CLOSE_NOT_MEMBER = 4409


class ChannelManager:
    def __init__(self):
        self.connections: dict[tuple[str, str], object] = {}
        self.cursors: dict[tuple[str, str], int] = {}
        self.loop: Optional[asyncio.AbstractEventLoop] = None

    def bind_loop(self, loop: asyncio.AbstractEventLoop) -> None:
        self.loop = loop

    # -- connection lifecycle -----------------------------------------

    async def register(self, project_id: str, user_id: str, websocket) -> None:
        key = (project_id, user_id)
        old = self.connections.pop(key, None)
        if old is not None:
            try:
                await old.close(code=CLOSE_REPLACED)
            except Exception:
                pass
        self.connections[key] = websocket

    def unregister(self, project_id: str, user_id: str, websocket) -> None:
        key = (project_id, user_id)
        if self.connections.get(key) is websocket:
            del self.connections[key]

    # -- delivery ------------------------------------------------------

    async def replay_chat(self, project_id: str, user_id: str, history: list[dict]) -> int:
        """Send chat the user has not seen yet; returns how many frames went out."""
        key = (project_id, user_id)
        start = self.cursors.get(key, 0)
        websocket = self.connections.get(key)
        sent = 0
        if websocket is None:
            return 0
        for message in history[start:]:
            await websocket.send_json({"type": "chat", **message})
            sent += 1
        self.cursors[key] = len(history)
        return sent

    async def broadcast_chat(self, project_id: str, history_len: int, frame: dict) -> None:
        for (pid, uid), websocket in list(self.connections.items()):
            if pid != project_id:
                continue
            try:
                await websocket.send_json(frame)
                self.cursors[(pid, uid)] = history_len
            except Exception:
                self.connections.pop((pid, uid), None)

    async def broadcast(self, project_id: str, frame: dict) -> None:
        """Fire-and-forget fan-out of non-chat frames to a project's members."""
        for (pid, uid), websocket in list(self.connections.items()):
            if pid != project_id:
                continue
            try:
                await websocket.send_json(frame)
            except Exception:
                self.connections.pop((pid, uid), None)

    def broadcast_threadsafe(self, project_id: str, frame: dict, timeout: float = 5.0) -> None:
        """Broadcast from worker threads; waits until frames are handed off."""
        loop = self.loop
        if loop is None or loop.is_closed():
            return
        future = asyncio.run_coroutine_threadsafe(self.broadcast(project_id, frame), loop)
        try:
            future.result(timeout=timeout)
        except Exception:
            pass
