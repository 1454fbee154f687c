"""Line embeddings of tripod-free trees and forests.

The embedder clusters a tree around its longest path, lays each cluster
out by a closed depth-first walk, and places clusters left to right with
gaps of 2r. First-visit positions along a walk never contract tree
distances, and the gaps keep separate clusters from contracting either,
so the result is non-contractive with expansion bounded by cluster size.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .embeddings import LineEmbedding, combine_components
from .errors import ConsistencyError, DomainError, NotATreeError, PreconditionError
from .graphs import (
    Graph,
    bfs_distances,
    components,
    induced_subgraph,
    is_forest,
    is_tree,
    longest_path_in_tree,
)
from .nets import NetSystem, build_partition
from .tripods import tree_has_r_tripod


@dataclass(frozen=True)
class TreeEmbedPlan:
    """Layout data for one tree: spine, cluster walks, and cluster offsets.

    ``walks[i]`` is the closed depth-first walk of the cluster of spine
    vertex i; a vertex is placed at ``offsets[i]`` plus its first 1-based
    position in that walk.
    """

    spine: tuple[int, ...]
    cluster_of: dict[int, int]
    walks: tuple[tuple[int, ...], ...]
    offsets: tuple[Fraction, ...]
    radius: Fraction


def _closed_walk(t: Graph, root: int, members: frozenset[int]) -> tuple[int, ...]:
    """Depth-first closed walk of the subtree on ``members``, smallest child first."""
    walk = [root]
    seen = {root}
    stack = [(root, iter(t.adj[root]))]
    while stack:
        v, neighbors = stack[-1]
        pushed = False
        for w in neighbors:
            if w in members and w not in seen:
                seen.add(w)
                walk.append(w)
                stack.append((w, iter(t.adj[w])))
                pushed = True
                break
        if not pushed:
            stack.pop()
            if stack:
                walk.append(stack[-1][0])
    if seen != members:
        raise ConsistencyError("cluster walk missed vertices; cell not connected")
    return tuple(walk)


def plan_tree_embedding(t: Graph, r: Fraction) -> TreeEmbedPlan:
    r = Fraction(r)
    if r < 1:
        raise ValueError("embedding radius must be at least 1")
    if not is_tree(t):
        raise NotATreeError("tree embedding requires a connected acyclic graph")
    if tree_has_r_tripod(t, r):
        raise PreconditionError(f"tree contains a tripod of radius {r}")
    spine = longest_path_in_tree(t)
    cluster_of = build_partition(t, spine)
    walks: list[tuple[int, ...]] = []
    members: dict[int, set[int]] = {s: set() for s in spine}
    for v, c in cluster_of.items():
        members[c].add(v)
    for s in spine:
        dist = bfs_distances(t, s)
        for v in members[s]:
            # tripod-free trees keep every vertex strictly within r of the spine
            if dist[v] >= r:
                raise ConsistencyError(
                    f"vertex {v} at distance {dist[v]} >= {r} from its spine center"
                )
        walks.append(_closed_walk(t, s, frozenset(members[s])))
    offsets = [Fraction(0)]
    for walk in walks[:-1]:
        first_span = max(_first_positions(walk).values())
        offsets.append(offsets[-1] + first_span + 2 * r)
    return TreeEmbedPlan(spine, cluster_of, tuple(walks), tuple(offsets), r)


def _first_positions(walk: tuple[int, ...]) -> dict[int, int]:
    first: dict[int, int] = {}
    for pos, v in enumerate(walk, start=1):
        if v not in first:
            first[v] = pos
    return first


def embed_tripod_free_tree(t: Graph, r: Fraction) -> LineEmbedding:
    plan = plan_tree_embedding(t, r)
    coords: dict[int, Fraction] = {}
    for offset, walk in zip(plan.offsets, plan.walks):
        for v, pos in _first_positions(walk).items():
            coords[v] = offset + pos
    if len(coords) != t.n:
        raise ConsistencyError("embedding missed vertices")
    return LineEmbedding(coords)


def embed_forest(f: Graph, r: Fraction) -> LineEmbedding:
    """Embed every tree of the forest, then concatenate with safe gaps."""
    if not is_forest(f):
        raise NotATreeError("forest embedding requires an acyclic graph")
    if f.n == 0:
        return LineEmbedding({})
    parts: list[LineEmbedding] = []
    for comp in components(f):
        sub = induced_subgraph(f, comp)
        local = embed_tripod_free_tree(sub, r)
        parts.append(LineEmbedding({comp[v]: x for v, x in local.coords.items()}))
    return combine_components(parts)


@dataclass(frozen=True)
class AttachedForest:
    """A center forest with every surviving non-center re-attached as a leaf.

    ``origin`` maps forest-local vertex ids back to the ids the net system's
    base graph was labeled with; ``center_of`` maps each attached leaf to its
    center, both in forest-local ids.
    """

    forest: Graph
    origin: dict[int, int]
    center_of: dict[int, int]


def build_attached_forest(
    f_prime: Graph, ns: NetSystem, removed: Iterable[int] = ()
) -> AttachedForest:
    """Expand a forest of centers back over the surviving cluster members.

    ``f_prime`` is a forest whose vertex labels are net centers of ``ns``;
    ``removed`` lists base vertices already deleted (whole cells). Edges of
    f_prime join centers directly and each other surviving vertex hangs off
    its own center, so the expansion adds one edge per new vertex and stays
    a forest with the same component count.
    """
    if not is_forest(f_prime):
        raise NotATreeError("attached forest requires a forest of centers")
    gone = frozenset(removed)
    centers = tuple(f_prime.label(i) for i in range(f_prime.n))
    center_set = frozenset(centers)
    if not center_set <= frozenset(ns.net):
        raise DomainError("f_prime vertices must be net centers of the system")
    if center_set & gone:
        raise DomainError("a surviving center cannot also be removed")
    survivors: list[int] = []
    for v in ns.base.vertices():
        if v in gone:
            continue
        if ns.cluster_of[v] not in center_set:
            raise ConsistencyError(
                f"vertex {v} survives but its center {ns.cluster_of[v]} was deleted"
            )
        survivors.append(v)
    pos = {v: i for i, v in enumerate(survivors)}
    edges: list[tuple[int, int]] = []
    for i, j in f_prime.edges():
        edges.append((pos[centers[i]], pos[centers[j]]))
    center_of: dict[int, int] = {}
    for v in survivors:
        c = ns.cluster_of[v]
        if v != c:
            edges.append((pos[v], pos[c]))
            center_of[pos[v]] = pos[c]
    labels = tuple(ns.base.label(v) for v in survivors)
    forest = Graph.from_edges(len(survivors), edges, labels=labels)
    if not is_forest(forest):
        raise ConsistencyError("attaching leaves created a cycle")
    origin = {i: labels[i] for i in range(len(survivors))}
    return AttachedForest(forest, origin, center_of)
