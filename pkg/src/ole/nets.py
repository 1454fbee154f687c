"""Greedy nets, Voronoi partitions, and cluster-contraction minors.

A net at radius R is a vertex set that is pairwise more than R apart and
covers every vertex within R. The partition assigns each vertex to the
center reached by its lexicographically least shortest path, which keeps
every cell connected. Contracting cells to their centers gives the minor.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import ConsistencyError, DomainError
from .graphs import UNREACHABLE, Graph, apsp, bfs_distances, induced_subgraph
from .rational import rat_str


@dataclass(frozen=True)
class NetSystem:
    """A net, its Voronoi partition, and the contracted minor over one base graph.

    ``minor`` vertex i stands for center ``minor.labels[i]`` (a base id).
    """

    base: Graph
    radius: Fraction
    net: tuple[int, ...]
    cluster_of: dict[int, int]
    minor: Graph

    def center_index(self) -> dict[int, int]:
        return {c: i for i, c in enumerate(self.minor.labels)}

    def cells(self) -> dict[int, tuple[int, ...]]:
        """Cluster members per center, sorted."""
        out: dict[int, list[int]] = {c: [] for c in self.net}
        for v, c in self.cluster_of.items():
            out[c].append(v)
        return {c: tuple(sorted(vs)) for c, vs in out.items()}


def build_rnet(g: Graph, r: Fraction) -> tuple[int, ...]:
    """Greedy net in vertex-id order: admit v when all net points are > r away."""
    r = Fraction(r)
    if r <= 0:
        raise ValueError("net radius must be positive")
    cutoff = int(r)  # BFS only needs to certify distances <= r
    nearest = [UNREACHABLE] * g.n
    net: list[int] = []
    for v in g.vertices():
        if nearest[v] != UNREACHABLE and nearest[v] <= r:
            continue
        net.append(v)
        dist = bfs_distances(g, v, cutoff=cutoff)
        for u, du in enumerate(dist):
            if du == UNREACHABLE:
                continue
            if nearest[u] == UNREACHABLE or du < nearest[u]:
                nearest[u] = du
    return tuple(net)


def build_partition(g: Graph, net: Iterable[int]) -> dict[int, int]:
    """Assign each vertex to the net center on its lexicographically least
    shortest path to the net, realized by always stepping to the smallest
    neighbor that decreases the distance to the net."""
    centers = sorted(set(net))
    if not centers:
        raise DomainError("net must be nonempty")
    for c in centers:
        if not (0 <= c < g.n):
            raise DomainError(f"net vertex {c} not in graph")
    dist = [UNREACHABLE] * g.n
    queue = deque()
    for c in centers:
        dist[c] = 0
        queue.append(c)
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if dist[w] == UNREACHABLE:
                dist[w] = dist[u] + 1
                queue.append(w)
    cluster: dict[int, int] = {c: c for c in centers}
    for v in g.vertices():
        if v in cluster:
            continue
        if dist[v] == UNREACHABLE:
            raise DomainError(f"component of vertex {v} contains no net vertex")
        chain = []
        cur = v
        while cur not in cluster:
            chain.append(cur)
            cur = min(u for u in g.adj[cur] if dist[u] == dist[cur] - 1)
        center = cluster[cur]
        for w in chain:
            cluster[w] = center
    return cluster


def build_rminor(g: Graph, r: Fraction) -> NetSystem:
    """Net, partition, and contracted minor at radius r, fully validated."""
    net = build_rnet(g, r)
    cluster = build_partition(g, net)
    return _assemble(g, Fraction(r), net, cluster)


def _assemble(
    g: Graph, r: Fraction, net: tuple[int, ...], cluster: dict[int, int]
) -> NetSystem:
    centers = sorted(net)
    index = {c: i for i, c in enumerate(centers)}
    edges = set()
    for u, v in g.edges():
        cu, cv = cluster[u], cluster[v]
        if cu != cv:
            a, b = index[cu], index[cv]
            edges.add((min(a, b), max(a, b)))
    minor = Graph.from_edges(len(centers), sorted(edges), centers)
    ns = NetSystem(g, r, tuple(centers), dict(cluster), minor)
    validate_net_system(ns)
    return ns


def validate_net_system(ns: NetSystem) -> None:
    """Re-check every net/partition/minor invariant; raises ConsistencyError."""
    g, r = ns.base, ns.radius
    centers = list(ns.net)
    if centers != sorted(set(centers)):
        raise ConsistencyError("net is not a sorted duplicate-free tuple")
    dist_from = {c: bfs_distances(g, c) for c in centers}
    for i, a in enumerate(centers):
        for b in centers[i + 1 :]:
            dab = dist_from[a][b]
            if dab != UNREACHABLE and dab <= r:
                raise ConsistencyError(f"net points {a},{b} are only {dab} apart")
    nearest = [UNREACHABLE] * g.n
    for c in centers:
        row = dist_from[c]
        for v in g.vertices():
            dv = row[v]
            if dv != UNREACHABLE and (nearest[v] == UNREACHABLE or dv < nearest[v]):
                nearest[v] = dv
    if set(ns.cluster_of) != set(g.vertices()):
        raise ConsistencyError("partition does not cover the vertex set")
    for v in g.vertices():
        c = ns.cluster_of[v]
        if c not in dist_from:
            raise ConsistencyError(f"vertex {v} assigned to non-center {c}")
        dvc = dist_from[c][v]
        if dvc == UNREACHABLE or dvc > r:
            raise ConsistencyError(f"vertex {v} is not covered by its center {c}")
        if dvc != nearest[v]:
            raise ConsistencyError(f"vertex {v} not assigned to a nearest center")
    for c, members in sorted(ns.cells().items()):
        inside = set(members)
        seen = {c}
        stack = [c]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if w in inside and w not in seen:
                    seen.add(w)
                    stack.append(w)
        if seen != inside:
            raise ConsistencyError(f"cell of center {c} is disconnected")
    expected = set()
    index = {c: i for i, c in enumerate(centers)}
    for u, v in g.edges():
        cu, cv = ns.cluster_of[u], ns.cluster_of[v]
        if cu != cv:
            a, b = index[cu], index[cv]
            expected.add((min(a, b), max(a, b)))
    if set(ns.minor.edges()) != expected:
        raise ConsistencyError("minor edges do not match contracted cells")
    if ns.minor.labels != tuple(centers):
        raise ConsistencyError("minor labels do not list the centers")


def restrict_after_deletion(ns: NetSystem, y: Iterable[int]) -> NetSystem:
    """Delete the cells of centers ``y`` and inherit net, partition, and minor.

    Commutes with building the same structures from scratch on the reduced
    graph: identical net, cluster map, and minor edge set.
    """
    removed = sorted(set(y))
    net_set = set(ns.net)
    for c in removed:
        if c not in net_set:
            raise DomainError(f"{c} is not a net vertex")
    cells = ns.cells()
    gone: set[int] = set()
    for c in removed:
        gone.update(cells[c])
    keep = [v for v in ns.base.vertices() if v not in gone]
    reduced = induced_subgraph(ns.base, keep)
    to_new = {v: i for i, v in enumerate(keep)}
    net2 = tuple(to_new[c] for c in ns.net if c not in removed)
    cluster2 = {to_new[v]: to_new[ns.cluster_of[v]] for v in keep}
    return _assemble(reduced, ns.radius, net2, cluster2)


def check_minor_metric(
    ns: NetSystem, x: Iterable[int]
) -> tuple[bool, dict | None]:
    """Verify d_minor <= d_base <= (2R+1) d_minor after deleting centers x
    (cells on the base side, vertices on the minor side), for every pair of
    surviving centers. Returns (ok, witness)."""
    removed = sorted(set(x))
    net_set = set(ns.net)
    for c in removed:
        if c not in net_set:
            raise DomainError(f"{c} is not a net vertex")
    cells = ns.cells()
    gone: set[int] = set()
    for c in removed:
        gone.update(cells[c])
    keep_base = [v for v in ns.base.vertices() if v not in gone]
    base_cut = induced_subgraph(ns.base, keep_base)
    idx = ns.center_index()
    removed_idx = {idx[c] for c in removed}
    keep_minor = [i for i in ns.minor.vertices() if i not in removed_idx]
    minor_cut = induced_subgraph(ns.minor, keep_minor)
    survivors = [c for c in ns.net if c not in removed]
    base_pos = {v: i for i, v in enumerate(keep_base)}
    minor_pos = {ns.net[old]: i for i, old in enumerate(keep_minor)}
    d_base = apsp(base_cut)
    d_minor = apsp(minor_cut)
    bound = 2 * ns.radius + 1
    for i, a in enumerate(survivors):
        for b in survivors[i + 1 :]:
            dg = d_base.d(base_pos[a], base_pos[b])
            dh = d_minor.d(minor_pos[a], minor_pos[b])
            if (dg == UNREACHABLE) != (dh == UNREACHABLE):
                return False, {"pair": (a, b), "reason": "connectivity mismatch"}
            if dg == UNREACHABLE:
                continue
            if not (dh <= dg <= bound * dh):
                return False, {
                    "pair": (a, b),
                    "d_base": dg,
                    "d_minor": dh,
                    "bound": rat_str(bound),
                }
    return True, None


def net_system_to_json_dict(ns: NetSystem) -> dict:
    labels = ns.minor.labels or tuple(range(ns.minor.n))
    return {
        "radius": rat_str(ns.radius),
        "net": list(ns.net),
        "cluster_of": {str(v): ns.cluster_of[v] for v in sorted(ns.cluster_of)},
        "minor_edges": sorted([labels[u], labels[v]] for u, v in ns.minor.edges()),
    }
