"""Tripod detection and elimination in forests.

A tripod of radius R is a branch vertex with three paths leaving it whose
endpoints each sit at distance >= R from every vertex of the other two
paths; it forces line distortion at least 2R. In a forest every tripod
contains a median-rooted one on the same three endpoints, so it suffices
to enumerate triples, root them at their median, and keep those whose
three branch lengths all reach R. Elimination is a greedy hitting set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConsistencyError, DomainError, NotATreeError
from .graphs import UNREACHABLE, Graph, bfs_distances, components, delete_vertices, is_forest


@dataclass(frozen=True)
class Tripod:
    root: int
    leaves: tuple[int, int, int]
    paths: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    radius: Fraction

    def vertex_set(self) -> frozenset[int]:
        return frozenset(v for path in self.paths for v in path)


@dataclass(frozen=True)
class TripodCoverResult:
    hitting_set: tuple[int, ...]
    universe_size: int
    greedy_bound: Fraction
    rejected: bool


def _walk_down(f: Graph, dist_from_root: list[int], leaf: int) -> tuple[int, ...]:
    """Tree path root -> leaf recovered by descending distances."""
    path = [leaf]
    cur = leaf
    while dist_from_root[cur] > 0:
        cur = next(u for u in f.adj[cur] if dist_from_root[u] == dist_from_root[cur] - 1)
        path.append(cur)
    path.reverse()
    return tuple(path)


def is_r_tripod(
    f: Graph, v1: int, v2: int, v3: int, r: Fraction
) -> Tripod | None:
    """The median-rooted tripod on three forest vertices, if it has radius r.

    The three vertices must be pairwise distinct and in the same tree.
    Because the three median paths meet only at the median, the distance
    condition collapses to every branch being at least r long.
    """
    r = Fraction(r)
    if not is_forest(f):
        raise NotATreeError("tripods are defined on forests")
    trio = (v1, v2, v3)
    if len(set(trio)) != 3:
        raise DomainError("tripod endpoints must be pairwise distinct")
    for v in trio:
        if not (0 <= v < f.n):
            raise DomainError(f"vertex {v} not in graph")
    d1 = bfs_distances(f, v1)
    if d1[v2] == UNREACHABLE or d1[v3] == UNREACHABLE:
        raise DomainError("tripod endpoints must lie in the same tree")
    d2 = bfs_distances(f, v2)
    d12, d13, d23 = d1[v2], d1[v3], d2[v3]
    b1 = (d12 + d13 - d23) // 2
    b2 = (d12 + d23 - d13) // 2
    b3 = (d13 + d23 - d12) // 2
    if min(b1, b2, b3) < r:
        return None
    # median lies b1 steps from v1 along the v1 -> v2 path
    path12 = _walk_down(f, d1, v2)
    root = path12[b1]
    dr = bfs_distances(f, root)
    paths = tuple(_walk_down(f, dr, leaf) for leaf in trio)
    return Tripod(root, trio, paths, r)


def enumerate_canonical_tripods(f: Graph, r: Fraction) -> tuple[Tripod, ...]:
    """All median-rooted tripods of radius r, in lexicographic leaf order."""
    r = Fraction(r)
    if not is_forest(f):
        raise NotATreeError("tripods are defined on forests")
    found: list[Tripod] = []
    for comp in components(f):
        if len(comp) < 4:
            continue
        dist = {v: bfs_distances(f, v) for v in comp}
        root_rows: dict[int, list[int]] = {}
        for ia in range(len(comp)):
            a = comp[ia]
            da = dist[a]
            for ib in range(ia + 1, len(comp)):
                b = comp[ib]
                db = dist[b]
                dab = da[b]
                for ic in range(ib + 1, len(comp)):
                    c = comp[ic]
                    dac, dbc = da[c], db[c]
                    twice_b1 = dab + dac - dbc
                    twice_b2 = dab + dbc - dac
                    twice_b3 = dac + dbc - dab
                    if min(twice_b1, twice_b2, twice_b3) < 2 * r:
                        continue
                    path_ab = _walk_down(f, da, b)
                    root = path_ab[twice_b1 // 2]
                    if root not in root_rows:
                        root_rows[root] = bfs_distances(f, root)
                    dr = root_rows[root]
                    paths = tuple(_walk_down(f, dr, leaf) for leaf in (a, b, c))
                    found.append(Tripod(root, (a, b, c), paths, r))
    return tuple(found)


def tree_has_r_tripod(t: Graph, r: Fraction) -> bool:
    """Fast existence check: some vertex has three branches of depth >= r.

    Quadratic rather than cubic, used as an embedding precondition guard.
    """
    r = Fraction(r)
    if not is_forest(t):
        raise NotATreeError("tripods are defined on forests")
    for m in t.vertices():
        if t.degree(m) < 3:
            continue
        deep = 0
        for w in t.adj[m]:
            depth = _branch_depth(t, m, w)
            if depth >= r:
                deep += 1
                if deep >= 3:
                    return True
    return False


def _branch_depth(t: Graph, block: int, start: int) -> int:
    """Greatest distance from ``block`` reachable through ``start`` in t - block."""
    best = 1
    seen = {block, start}
    frontier = [start]
    depth = 1
    while frontier:
        depth += 1
        nxt = []
        for u in frontier:
            for w in t.adj[u]:
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        if nxt:
            best = depth
        frontier = nxt
    return best


def eliminate_tripods(
    f: Graph, r: Fraction, k_prime: Fraction
) -> TripodCoverResult:
    """Greedy hitting set over all canonical tripods of radius r.

    Greedy covers within a ln(universe)+1 factor of the optimum, so a cover
    larger than k_prime*(ln(universe)+1) certifies that no k_prime vertices
    hit every tripod. An accepted cover is re-verified by re-enumeration.
    """
    r = Fraction(r)
    k_prime = Fraction(k_prime)
    tripods = enumerate_canonical_tripods(f, r)
    universe = len(tripods)
    if universe == 0:
        return TripodCoverResult((), 0, Fraction(0), False)
    covers: dict[int, set[int]] = {}
    for idx, tri in enumerate(tripods):
        for v in tri.vertex_set():
            covers.setdefault(v, set()).add(idx)
    uncovered = set(range(universe))
    chosen: list[int] = []
    while uncovered:
        pick = max(
            sorted(covers),
            key=lambda v: (len(covers[v] & uncovered), -v),
        )
        gain = covers[pick] & uncovered
        if not gain:
            raise ConsistencyError("greedy cover stalled with tripods uncovered")
        chosen.append(pick)
        uncovered -= gain
    bound = k_prime * (Fraction(math.log(universe)) + 1)
    rejected = len(chosen) > bound
    if not rejected:
        leftover = enumerate_canonical_tripods(delete_vertices(f, chosen), r)
        if leftover:
            raise ConsistencyError("hitting set left a tripod alive")
    return TripodCoverResult(tuple(sorted(chosen)), universe, bound, rejected)
