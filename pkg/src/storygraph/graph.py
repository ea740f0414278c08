"""Versioned concept graphs, one per (project, user) scope.

Every suggestion request commits a fresh generation for the scope: the
previous generation's nodes stop being active (their expiry becomes the
commit time) and the new mapping is inserted as active nodes with the
open-ended sentinel expiry.  Nothing is ever deleted, so the full version
history can be replayed or exported.

Queries never run against live state: ``view`` materializes an immutable
snapshot of the newest generation under the store lock, and all graph
algorithms work on that snapshot.  Edges are undirected and stored once;
an edge from a node to itself marks a concept the pairing step could not
relate to anything (a mismatch candidate, not a real relation), so
traversals skip self-links.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Optional

from .embedding import ConceptMapping
from .errors import EmptyGraphError, UnknownConceptError
from .stories import utc_now_iso

ACTIVE_EXPIRY = "9999-12-31T00:00:00+00:00"


@dataclass(slots=True)
class ConceptNode:
    key: str
    user_id: Optional[str]
    project_id: str
    stories: list[str]
    created_at: str
    expiry_date: str = ACTIVE_EXPIRY

    @property
    def is_active(self) -> bool:
        return self.expiry_date == ACTIVE_EXPIRY


@dataclass(slots=True)
class GraphEdge:
    a: str
    b: str

    @property
    def self_link(self) -> bool:
        return self.a == self.b


@dataclass(slots=True)
class CommitSummary:
    at: str
    generation: int
    nodes_added: int
    nodes_deactivated: int
    edge_count: int
    self_link_count: int


@dataclass(slots=True)
class Generation:
    index: int
    at: str
    nodes: dict[str, ConceptNode]
    edges: list[GraphEdge]


class GraphView:
    """Frozen snapshot of one scope's newest committed generation."""

    def __init__(
        self,
        project_id: str,
        user_id: Optional[str],
        generation: int,
        committed_at: Optional[str],
        nodes: dict[str, ConceptNode],
        edges: list[GraphEdge],
    ):
        self.project_id = project_id
        self.user_id = user_id
        self.generation = generation
        self.committed_at = committed_at
        self.nodes = nodes
        self.edges = edges
        self._adjacent: dict[str, set[str]] = {key: set() for key in nodes}
        self._self_linked: set[str] = set()
        for edge in edges:
            if edge.self_link:
                self._self_linked.add(edge.a)
            else:
                self._adjacent[edge.a].add(edge.b)
                self._adjacent[edge.b].add(edge.a)

    def _require_nodes(self) -> None:
        if not self.nodes:
            raise EmptyGraphError(
                f"no active concepts for scope ({self.project_id!r}, {self.user_id!r})"
            )

    def degree(self, key: str) -> int:
        """Incident non-self edges; self-links mark mismatches, not relations."""
        return len(self._adjacent[key])

    def top_concepts(self, n: int = 5) -> list[str]:
        """Most-supported concepts: story count, then degree, then name."""
        self._require_nodes()
        ranked = sorted(
            self.nodes,
            key=lambda k: (-len(self.nodes[k].stories), -self.degree(k), k),
        )
        return ranked[:n]

    def neighborhood(self, key: str, max_depth: int = 2) -> dict[int, set[str]]:
        """Concepts reachable from ``key`` in 1..max_depth hops, by layer."""
        self._require_nodes()
        if key not in self.nodes:
            raise UnknownConceptError(f"no active concept {key!r}")
        layers: dict[int, set[str]] = {}
        seen = {key}
        frontier = [key]
        for depth in range(1, max_depth + 1):
            nxt = []
            for node in frontier:
                for neighbor in self._adjacent[node]:
                    if neighbor not in seen:
                        seen.add(neighbor)
                        nxt.append(neighbor)
            if not nxt:
                break
            layers[depth] = set(nxt)
            frontier = nxt
        return layers

    def neighborhood_set(self, key: str, max_depth: int = 2) -> set[str]:
        out: set[str] = set()
        for layer in self.neighborhood(key, max_depth).values():
            out |= layer
        return out

    def isolated_concepts(self) -> set[str]:
        """Concepts with no non-self edge: nothing relates to them."""
        self._require_nodes()
        return {key for key in self.nodes if not self._adjacent[key]}

    def bfs_edge_count(self) -> int:
        """Edges used by a breadth-first sweep over every component.

        Traversal starts from the lowest-degree node (name as tie-break),
        restarts the same way for every remaining component, and counts
        tree edges; self-links are excluded throughout.
        """
        self._require_nodes()
        unvisited = set(self.nodes)
        total = 0
        while unvisited:
            start = min(unvisited, key=lambda k: (self.degree(k), k))
            queue = [start]
            unvisited.discard(start)
            while queue:
                node = queue.pop(0)
                for neighbor in sorted(self._adjacent[node]):
                    if neighbor in unvisited:
                        unvisited.discard(neighbor)
                        total += 1
                        queue.append(neighbor)
        return total

    def to_json(self) -> dict:
        return {
            "project": self.project_id,
            "user": self.user_id,
            "generation": self.generation,
            "committed_at": self.committed_at,
            "nodes": [
                {
                    "key": node.key,
                    "user": node.user_id,
                    "project": node.project_id,
                    "stories": list(node.stories),
                    "active": node.is_active,
                    "expiry": node.expiry_date,
                }
                for node in sorted(self.nodes.values(), key=lambda n: n.key)
            ],
            "edges": [
                {"from": e.a, "to": e.b, "self": e.self_link}
                for e in sorted(self.edges, key=lambda e: (e.a, e.b))
            ],
        }

    def to_dot(self) -> str:
        lines = ["graph concepts {"]
        for node in sorted(self.nodes.values(), key=lambda n: n.key):
            attrs = f'label="{node.key}\\n{len(node.stories)} stories"'
            if node.key in self._self_linked and not self._adjacent[node.key]:
                attrs += ", color=red"
            lines.append(f'  "{node.key}" [{attrs}];')
        for e in sorted(self.edges, key=lambda e: (e.a, e.b)):
            lines.append(f'  "{e.a}" -- "{e.b}";')
        lines.append("}")
        return "\n".join(lines)


class GraphStore:
    """All scopes' graph histories plus commit machinery."""

    def __init__(self, clock=utc_now_iso):
        self._clock = clock
        self._lock = threading.RLock()
        self._scopes: dict[tuple[str, Optional[str]], list[Generation]] = {}

    def commit(
        self,
        project_id: str,
        user_id: Optional[str],
        mapping: ConceptMapping,
        at: Optional[str] = None,
    ) -> CommitSummary:
        """Supersede the scope's active generation with ``mapping``."""
        mapping.check()
        with self._lock:
            at = at or self._clock()
            gens = self._scopes.setdefault((project_id, user_id), [])
            deactivated = 0
            if gens:
                previous = gens[-1]
                for node in previous.nodes.values():
                    if node.is_active:
                        node.expiry_date = at
                        deactivated += 1
            nodes: dict[str, ConceptNode] = {}
            for term in mapping.terms():
                nodes[term] = ConceptNode(
                    key=term,
                    user_id=user_id,
                    project_id=project_id,
                    stories=sorted(mapping.provenance.get(term, ())),
                    created_at=at,
                )
            seen: set[tuple[str, str]] = set()
            edges: list[GraphEdge] = []
            for parent, members in mapping.parents.items():
                real = [m for m in members if m]
                pairs = [(parent, m) for m in real] if real else [(parent, parent)]
                for a, b in pairs:
                    key = (min(a, b), max(a, b))
                    if key not in seen:
                        seen.add(key)
                        edges.append(GraphEdge(*key))
            edges.sort(key=lambda e: (e.a, e.b))
            generation = Generation(index=len(gens), at=at, nodes=nodes, edges=edges)
            gens.append(generation)
            return CommitSummary(
                at=at,
                generation=generation.index,
                nodes_added=len(nodes),
                nodes_deactivated=deactivated,
                edge_count=len(edges),
                self_link_count=sum(1 for e in edges if e.self_link),
            )

    def view(self, project_id: str, user_id: Optional[str] = None) -> GraphView:
        """Immutable snapshot of the newest generation (possibly empty)."""
        with self._lock:
            gens = self._scopes.get((project_id, user_id), [])
            if not gens:
                return GraphView(project_id, user_id, -1, None, {}, [])
            latest = gens[-1]
            nodes = {
                key: ConceptNode(
                    key=node.key,
                    user_id=node.user_id,
                    project_id=node.project_id,
                    stories=list(node.stories),
                    created_at=node.created_at,
                    expiry_date=node.expiry_date,
                )
                for key, node in latest.nodes.items()
            }
            edges = [GraphEdge(e.a, e.b) for e in latest.edges]
            return GraphView(project_id, user_id, latest.index, latest.at, nodes, edges)

    def generation_count(self, project_id: str, user_id: Optional[str] = None) -> int:
        with self._lock:
            return len(self._scopes.get((project_id, user_id), []))

    def history(self, project_id: str, user_id: Optional[str] = None) -> list[dict]:
        """Every generation of the scope, oldest first."""
        with self._lock:
            out = []
            for gen in self._scopes.get((project_id, user_id), []):
                out.append(
                    {
                        "generation": gen.index,
                        "at": gen.at,
                        "nodes": [
                            {
                                "key": node.key,
                                "stories": list(node.stories),
                                "active": node.is_active,
                                "created_at": node.created_at,
                                "expiry": node.expiry_date,
                            }
                            for node in sorted(gen.nodes.values(), key=lambda n: n.key)
                        ],
                        "edges": [
                            {"from": e.a, "to": e.b, "self": e.self_link}
                            for e in sorted(gen.edges, key=lambda e: (e.a, e.b))
                        ],
                    }
                )
            return out

    # -- persistence ---------------------------------------------------

    def to_dict(self) -> dict:
        with self._lock:
            scopes = []
            for (project_id, user_id) in sorted(
                self._scopes, key=lambda s: (s[0], s[1] or "")
            ):
                scopes.append(
                    {
                        "project": project_id,
                        "user": user_id,
                        "generations": self.history(project_id, user_id),
                    }
                )
            return {"scopes": scopes}

    @classmethod
    def from_dict(cls, data: dict, clock=utc_now_iso) -> "GraphStore":
        store = cls(clock=clock)
        for scope in data.get("scopes", []):
            gens: list[Generation] = []
            for g in scope.get("generations", []):
                nodes = {
                    n["key"]: ConceptNode(
                        key=n["key"],
                        user_id=scope["user"],
                        project_id=scope["project"],
                        stories=list(n["stories"]),
                        created_at=n["created_at"],
                        expiry_date=n["expiry"],
                    )
                    for n in g["nodes"]
                }
                edges = [GraphEdge(e["from"], e["to"]) for e in g["edges"]]
                gens.append(Generation(index=g["generation"], at=g["at"], nodes=nodes, edges=edges))
            store._scopes[(scope["project"], scope["user"])] = gens
        return store
