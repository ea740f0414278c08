"""Statistics for evaluating story sets and concept graphs.

The Mann-Whitney U test here computes the exact null distribution
whenever both samples have at most 20 observations, including tied
values (the distribution is built over mid-ranks), and falls back to the
tie-corrected normal approximation with continuity correction above
that.  Exact p-values are computed in rational arithmetic so they match
a brute-force enumeration of label permutations to machine precision.

Average node connectivity is the mean, over unordered node pairs, of
the number of internally disjoint paths between the pair, computed with
a node-splitting max-flow.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .errors import EmptySampleError
from .graph import GraphView

TWO_SIDED = "two_sided"
GREATER = "greater"
LESS = "less"
EXACT_LIMIT = 20


def std_dev(values: Sequence[float]) -> float:
    """Population standard deviation."""
    if not values:
        raise EmptySampleError("std_dev of an empty sample")
    mean = sum(values) / len(values)
    return math.sqrt(sum((v - mean) ** 2 for v in values) / len(values))


@dataclass(slots=True)
class UTestResult:
    u1: float
    u2: float
    p_value: float
    method: str
    alternative: str

    def to_dict(self) -> dict:
        return {
            "u1": self.u1,
            "u2": self.u2,
            "pValue": self.p_value,
            "method": self.method,
            "alternative": self.alternative,
        }


def _mid_ranks(pooled: Sequence[float]) -> list[Fraction]:
    order = sorted(range(len(pooled)), key=lambda i: pooled[i])
    ranks: list[Fraction] = [Fraction(0)] * len(pooled)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and pooled[order[j + 1]] == pooled[order[i]]:
            j += 1
        # tied block [i, j] shares the average of ranks i+1 .. j+1
        avg = Fraction(i + 1 + j + 1, 2)
        for k in range(i, j + 1):
            ranks[order[k]] = avg
        i = j + 1
    return ranks


def _exact_tail_probs(
    doubled_ranks: list[int], n1: int, observed_doubled_r1: int
) -> tuple[Fraction, Fraction]:
    """P(R1 <= observed) and P(R1 >= observed) under random labelling.

    Ranks arrive doubled so ties (half-integer mid-ranks) stay integral.
    The distribution is accumulated value-group by value-group, which is
    equivalent to enumerating all C(n, n1) label assignments.
    """
    groups: dict[int, int] = {}
    for r in doubled_ranks:
        groups[r] = groups.get(r, 0) + 1

    # dist[k][s] = number of ways to pick k ranks summing to s
    dist: list[dict[int, int]] = [dict() for _ in range(n1 + 1)]
    dist[0][0] = 1
    for value, count in sorted(groups.items()):
        binom = [math.comb(count, j) for j in range(count + 1)]
        new_dist: list[dict[int, int]] = [dict() for _ in range(n1 + 1)]
        for k in range(n1 + 1):
            for s, ways in dist[k].items():
                for j in range(0, min(count, n1 - k) + 1):
                    target = new_dist[k + j]
                    key = s + j * value
                    target[key] = target.get(key, 0) + ways * binom[j]
        dist = new_dist

    total = sum(dist[n1].values())
    le = sum(w for s, w in dist[n1].items() if s <= observed_doubled_r1)
    ge = sum(w for s, w in dist[n1].items() if s >= observed_doubled_r1)
    return Fraction(le, total), Fraction(ge, total)


def _normal_sf(z: float) -> float:
    return 0.5 * math.erfc(z / math.sqrt(2.0))


def mann_whitney_u(
    a: Sequence[float], b: Sequence[float], alternative: str = TWO_SIDED
) -> UTestResult:
    """Rank-sum test of two independent samples.

    ``alternative="greater"`` asks whether values in ``a`` tend to be
    larger than values in ``b``; ``"less"`` the reverse.
    """
    if alternative not in (TWO_SIDED, GREATER, LESS):
        raise ValueError(f"unknown alternative {alternative!r}")
    if not a or not b:
        raise EmptySampleError("mann_whitney_u needs two non-empty samples")

    n1, n2 = len(a), len(b)
    pooled = list(a) + list(b)
    ranks = _mid_ranks(pooled)
    r1 = sum(ranks[:n1])
    u1 = r1 - Fraction(n1 * (n1 + 1), 2)
    u2 = n1 * n2 - u1

    if n1 <= EXACT_LIMIT and n2 <= EXACT_LIMIT:
        doubled = [int(2 * r) for r in ranks]
        p_le, p_ge = _exact_tail_probs(doubled, n1, int(2 * r1))
        if alternative == LESS:
            p = p_le
        elif alternative == GREATER:
            p = p_ge
        else:
            p = min(Fraction(1), 2 * min(p_le, p_ge))
        return UTestResult(float(u1), float(u2), float(p), "exact", alternative)

    n = n1 + n2
    mu = n1 * n2 / 2.0
    tie_groups: dict[float, int] = {}
    for v in pooled:
        tie_groups[v] = tie_groups.get(v, 0) + 1
    tie_term = sum(t**3 - t for t in tie_groups.values())
    sigma_sq = (n1 * n2 / 12.0) * ((n + 1) - tie_term / (n * (n - 1)))
    if sigma_sq <= 0:
        # all values tied; no evidence either way
        return UTestResult(float(u1), float(u2), 1.0, "normal", alternative)
    sigma = math.sqrt(sigma_sq)
    u1f = float(u1)
    p_greater = _normal_sf((u1f - mu - 0.5) / sigma)
    p_less = _normal_sf((mu - u1f - 0.5) / sigma)
    if alternative == GREATER:
        p = p_greater
    elif alternative == LESS:
        p = p_less
    else:
        p = min(1.0, 2.0 * min(p_greater, p_less))
    return UTestResult(u1f, float(u2), float(p), "normal", alternative)


# -- graph connectivity ----------------------------------------------


def _max_flow_unit(
    adjacency: Mapping[str, set[str]], source: str, sink: str
) -> int:
    """Internally disjoint paths between two nodes via node splitting.

    Every node v becomes v_in -> v_out with capacity 1 (source and sink
    uncapped); an undirected edge a-b becomes a_out -> b_in and
    b_out -> a_in.  Max flow from source_out to sink_in then counts
    internally disjoint source-sink paths, the direct edge included.
    """
    cap: dict[tuple, int] = {}
    big = len(adjacency) + 1

    def add(u, v, c):
        cap[(u, v)] = cap.get((u, v), 0) + c
        cap.setdefault((v, u), 0)

    for v in adjacency:
        add(("in", v), ("out", v), big if v in (source, sink) else 1)
    for a, nbrs in adjacency.items():
        for b in nbrs:
            add(("out", a), ("in", b), 1)

    s, t = ("out", source), ("in", sink)
    out_edges: dict[tuple, list[tuple]] = {}
    for (u, v) in cap:
        out_edges.setdefault(u, []).append(v)

    flow = 0
    while True:
        parent: dict[tuple, tuple] = {s: s}
        queue = deque([s])
        while queue and t not in parent:
            u = queue.popleft()
            for v in out_edges.get(u, ()):
                if v not in parent and cap[(u, v)] > 0:
                    parent[v] = u
                    queue.append(v)
        if t not in parent:
            return flow
        v = t
        while v != s:
            u = parent[v]
            cap[(u, v)] -= 1
            cap[(v, u)] += 1
            v = u
        flow += 1


def avg_node_connectivity(adjacency: Mapping[str, Iterable[str]]) -> float:
    """Mean number of internally disjoint paths over unordered node pairs.

    ``adjacency`` maps each node to its neighbours; self loops are
    ignored.  Graphs with fewer than two nodes have connectivity 0.
    """
    adj: dict[str, set[str]] = {v: set() for v in adjacency}
    for v, nbrs in adjacency.items():
        for w in nbrs:
            if w == v:
                continue
            adj[v].add(w)
            adj.setdefault(w, set()).add(v)
    nodes = sorted(adj)
    if len(nodes) < 2:
        return 0.0
    total = 0
    pairs = 0
    for i, s in enumerate(nodes):
        for t in nodes[i + 1 :]:
            total += _max_flow_unit(adj, s, t)
            pairs += 1
    return total / pairs


def view_adjacency(view: GraphView) -> dict[str, set[str]]:
    """Non-self-link adjacency of a graph snapshot."""
    adj: dict[str, set[str]] = {k: set() for k in view.nodes}
    for e in view.edges:
        if not e.self_link:
            adj[e.a].add(e.b)
            adj[e.b].add(e.a)
    return adj


# -- project report ---------------------------------------------------


@dataclass(slots=True)
class ProjectMetrics:
    project_id: str
    story_count: int
    concept_count: int
    isolated_count: int
    bfs_edges: int
    avg_connectivity: float

    def to_dict(self) -> dict:
        return {
            "project": self.project_id,
            "storyCount": self.story_count,
            "conceptCount": self.concept_count,
            "isolatedCount": self.isolated_count,
            "bfsEdges": self.bfs_edges,
            "avgNodeConnectivity": self.avg_connectivity,
        }


def project_metrics(
    project_id: str, story_count: int, view: Optional[GraphView]
) -> ProjectMetrics:
    if view is None or not view.nodes:
        return ProjectMetrics(project_id, story_count, 0, 0, 0, 0.0)
    return ProjectMetrics(
        project_id,
        story_count,
        len(view.nodes),
        len(view.isolated_concepts()),
        view.bfs_edge_count(),
        avg_node_connectivity(view_adjacency(view)),
    )


def format_metrics_table(metrics: ProjectMetrics) -> str:
    rows = [
        ("project", metrics.project_id),
        ("stories", str(metrics.story_count)),
        ("concepts", str(metrics.concept_count)),
        ("isolated concepts", str(metrics.isolated_count)),
        ("bfs tree edges", str(metrics.bfs_edges)),
        ("avg node connectivity", f"{metrics.avg_connectivity:.4f}"),
    ]
    width = max(len(name) for name, _ in rows)
    return "\n".join(f"{name.ljust(width)}  {value}" for name, value in rows)
