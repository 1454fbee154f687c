"""Immutable unweighted graphs and exact shortest-path machinery.

Graphs are simple and undirected, with vertices 0..n-1 and sorted adjacency
tuples. Derived graphs (induced subgraphs, minors) carry a ``labels`` tuple
tracing each vertex back to the id it had in the graph it came from.
All distances are hop counts; density values are exact rationals.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import DomainError, InputFormatError, NotATreeError

UNREACHABLE = -1


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[tuple[int, ...], ...]
    labels: tuple[int, ...] | None = None

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        labels: Iterable[int] | None = None,
    ) -> "Graph":
        """Build a graph, deduplicating edges and rejecting self-loops."""
        if n < 0:
            raise InputFormatError("vertex count must be nonnegative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputFormatError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InputFormatError(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        adj = tuple(tuple(sorted(s)) for s in nbrs)
        lab = tuple(labels) if labels is not None else None
        if lab is not None and len(lab) != n:
            raise InputFormatError("label map length differs from vertex count")
        return cls(n, adj, lab)

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def label(self, v: int) -> int:
        return self.labels[v] if self.labels is not None else v

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]


def load_graph(text: str) -> Graph:
    """Parse a graph from JSON ``{"n":..,"edges":[[u,v],..]}`` or an edge list.

    Edge-list lines hold two vertex ids; ``#`` starts a comment. Ids are
    compacted to 0..n-1 and remembered in ``labels`` when not already compact.
    """
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputFormatError(f"invalid JSON graph: {exc}") from exc
        return graph_from_json_dict(doc)
    edges: list[tuple[int, int]] = []
    ids: set[int] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InputFormatError(f"line {lineno}: expected two vertex ids")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise InputFormatError(f"line {lineno}: vertex ids must be integers") from exc
        if u < 0 or v < 0:
            raise InputFormatError(f"line {lineno}: vertex ids must be nonnegative")
        if u == v:
            raise InputFormatError(f"line {lineno}: self-loop at vertex {u}")
        ids.update((u, v))
        edges.append((u, v))
    order = sorted(ids)
    index = {orig: i for i, orig in enumerate(order)}
    compact = [(index[u], index[v]) for u, v in edges]
    labels = None if order == list(range(len(order))) else order
    return Graph.from_edges(len(order), compact, labels)


def graph_from_json_dict(doc: dict) -> Graph:
    if not isinstance(doc, dict) or "n" not in doc or "edges" not in doc:
        raise InputFormatError('graph JSON needs "n" and "edges" fields')
    n = doc["n"]
    if not isinstance(n, int) or n < 0:
        raise InputFormatError('"n" must be a nonnegative integer')
    edges = []
    for item in doc["edges"]:
        if not (isinstance(item, (list, tuple)) and len(item) == 2):
            raise InputFormatError(f"bad edge entry: {item!r}")
        edges.append((item[0], item[1]))
    return Graph.from_edges(n, edges)


def graph_to_json_dict(g: Graph) -> dict:
    return {"n": g.n, "edges": [[u, v] for u, v in g.edges()]}


def bfs_distances(g: Graph, source: int, cutoff: int | None = None) -> list[int]:
    """Hop distances from ``source``; UNREACHABLE (-1) where no path exists."""
    dist = [UNREACHABLE] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u]
        if cutoff is not None and du >= cutoff:
            continue
        for w in g.adj[u]:
            if dist[w] == UNREACHABLE:
                dist[w] = du + 1
                queue.append(w)
    return dist


@dataclass(frozen=True)
class DistanceTable:
    """All-pairs hop distances; UNREACHABLE (-1) marks disconnected pairs."""

    rows: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.rows)

    def d(self, u: int, v: int) -> int:
        return self.rows[u][v]

    def connected(self, u: int, v: int) -> bool:
        return self.rows[u][v] != UNREACHABLE

    def eccentricity(self, v: int) -> int:
        return max(self.rows[v], default=0)


def apsp(g: Graph) -> DistanceTable:
    """All-pairs shortest paths via one BFS per vertex."""
    return DistanceTable(tuple(tuple(bfs_distances(g, v)) for v in g.vertices()))


def smallest_parent_tree(g: Graph, source: int) -> tuple[list[int], list[int]]:
    """BFS distances plus, for each reached vertex, its smallest-id predecessor."""
    dist = bfs_distances(g, source)
    parent = [UNREACHABLE] * g.n
    for v in g.vertices():
        if v == source or dist[v] == UNREACHABLE:
            continue
        parent[v] = min(u for u in g.adj[v] if dist[u] == dist[v] - 1)
    return dist, parent


def components(g: Graph) -> tuple[tuple[int, ...], ...]:
    """Connected components, each sorted, ordered by smallest member."""
    seen = [False] * g.n
    out: list[tuple[int, ...]] = []
    for start in g.vertices():
        if seen[start]:
            continue
        comp = [start]
        seen[start] = True
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        out.append(tuple(sorted(comp)))
    return tuple(out)


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def is_forest(g: Graph) -> bool:
    return g.m == g.n - len(components(g))


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and is_connected(g)


def induced_subgraph(g: Graph, keep: Iterable[int]) -> Graph:
    """Induced subgraph on ``keep``; labels trace back to ids of ``g``."""
    kept = sorted(set(keep))
    for v in kept:
        if not (0 <= v < g.n):
            raise DomainError(f"vertex {v} not in graph")
    index = {v: i for i, v in enumerate(kept)}
    edges = [
        (index[u], index[v])
        for u in kept
        for v in g.adj[u]
        if u < v and v in index
    ]
    labels = tuple(g.label(v) for v in kept)
    return Graph.from_edges(len(kept), edges, labels)


def delete_vertices(g: Graph, remove: Iterable[int]) -> Graph:
    """Graph with ``remove`` deleted; identity (same object) for an empty set."""
    rem = set(remove)
    if not rem:
        return g
    for v in rem:
        if not (0 <= v < g.n):
            raise DomainError(f"vertex {v} not in graph")
    return induced_subgraph(g, (v for v in g.vertices() if v not in rem))


def longest_path_in_tree(t: Graph) -> tuple[int, ...]:
    """A diameter path of a tree, deterministic under smallest-id tie-breaks."""
    if not is_tree(t):
        raise NotATreeError("longest_path_in_tree requires a tree")
    if t.n == 1:
        return (0,)

    def farthest(src: int) -> tuple[int, list[int]]:
        dist, parent = smallest_parent_tree(t, src)
        best = max(range(t.n), key=lambda v: (dist[v], -v))
        return best, parent

    a, _ = farthest(0)
    b, parent = farthest(a)
    path = [b]
    while path[-1] != a:
        path.append(parent[path[-1]])
    path.reverse()
    if path[0] > path[-1]:
        path.reverse()
    return tuple(path)


@dataclass(frozen=True)
class DensityProfile:
    """Largest ball-growth rate (|Ball(v,R)|-1)/(2R) and where it occurs."""

    delta: Fraction
    witness: tuple[int, int] | None


def local_density(g: Graph) -> DensityProfile:
    """Exact maximum of (|Ball(v,R)|-1)/(2R) over vertices and integer radii.

    Radii run from 1 to the eccentricity of each vertex; beyond that the
    ball stops growing and the ratio only decays. Edgeless graphs have
    density 0 and no witness.
    """
    best = Fraction(0)
    witness: tuple[int, int] | None = None
    for v in g.vertices():
        dist = bfs_distances(g, v)
        finite = sorted(d for d in dist if d != UNREACHABLE)
        ecc = finite[-1]
        # finite is sorted, so ball sizes come from a single scan
        idx = 0
        size = 0
        for radius in range(1, ecc + 1):
            while idx < len(finite) and finite[idx] <= radius:
                idx += 1
            size = idx
            ratio = Fraction(size - 1, 2 * radius)
            if ratio > best:
                best = ratio
                witness = (v, radius)
    return DensityProfile(best, witness)
