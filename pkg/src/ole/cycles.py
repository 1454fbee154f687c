"""Cycle elimination on the contracted minor via 2-approximate feedback vertex set.

A long cycle in the radius-R minor certifies a long metrical cycle in the
base graph, and a line embedding cannot keep every edge of a cycle short.
If even a 2-approximate feedback vertex set of the minor is larger than
twice the deletion allowance, no allowed deletion can break all cycles.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .graphs import Graph
from .nets import NetSystem, build_rminor


@dataclass(frozen=True)
class CycleBreakResult:
    net_system: NetSystem
    fvs: tuple[int, ...]  # minor vertex ids
    threshold: Fraction
    rejected: bool


def _live_is_acyclic(g: Graph, removed: set[int]) -> bool:
    n_alive = g.n - len(removed)
    comp_count = 0
    edge_count = 0
    seen: set[int] = set()
    for start in g.vertices():
        if start in removed or start in seen:
            continue
        comp_count += 1
        stack = [start]
        seen.add(start)
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if w in removed:
                    continue
                if u < w:
                    edge_count += 1
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    return edge_count == n_alive - comp_count


def _semidisjoint_cycle(adj: dict[int, set[int]]) -> list[int] | None:
    """A cycle whose vertices all have degree 2, except at most one.

    Found by walking maximal chains of degree-2 vertices; a chain closing on
    itself is such a cycle, and a chain whose two ends meet the same anchor
    forms one with the anchor.
    """
    walked: set[int] = set()
    for v in sorted(adj):
        if len(adj[v]) != 2 or v in walked:
            continue
        chain: list[int] = [v]
        walked.add(v)
        ends: list[int] = []
        looped = False
        for start in sorted(adj[v]):
            prev, cur = v, start
            while len(adj[cur]) == 2 and cur not in walked:
                chain.append(cur)
                walked.add(cur)
                nxt = next(u for u in adj[cur] if u != prev)
                prev, cur = cur, nxt
            if cur in walked and len(adj[cur]) == 2:
                looped = True  # degree-2 chain closed into a full cycle
                break
            ends.append(cur)
        if looped:
            return chain
        if len(ends) == 2 and ends[0] == ends[1]:
            return chain + [ends[0]]
    return None


def fvs_2approx(g: Graph) -> tuple[int, ...]:
    """Feedback vertex set at most twice the minimum, by the local-ratio scheme.

    Repeatedly prunes degree <= 1 vertices, charges semidisjoint cycles
    uniformly when one exists and otherwise charges every vertex
    proportionally to degree-1, removes the vertices whose weight hits
    zero, and finally drops removed vertices that turn out unnecessary
    (scanned in reverse removal order).
    """
    adj: dict[int, set[int]] = {v: set(g.adj[v]) for v in g.vertices()}
    weight: dict[int, Fraction] = {v: Fraction(1) for v in g.vertices()}

    def drop(v: int) -> None:
        for u in adj[v]:
            adj[u].discard(v)
        del adj[v]

    def prune() -> None:
        low = [v for v in adj if len(adj[v]) <= 1]
        while low:
            v = low.pop()
            if v not in adj:
                continue
            nbrs = list(adj[v])
            drop(v)
            low.extend(u for u in nbrs if u in adj and len(adj[u]) <= 1)

    removal_order: list[int] = []
    prune()
    while adj:
        cycle = _semidisjoint_cycle(adj)
        if cycle is not None:
            gamma = min(weight[u] for u in cycle)
            for u in cycle:
                weight[u] -= gamma
        else:
            gamma = min(weight[u] / (len(adj[u]) - 1) for u in adj)
            for u in list(adj):
                weight[u] -= gamma * (len(adj[u]) - 1)
        for u in sorted(v for v in adj if weight[v] == 0):
            removal_order.append(u)
            drop(u)
        prune()
    chosen = set(removal_order)
    for u in reversed(removal_order):
        if _live_is_acyclic(g, chosen - {u}):
            chosen.discard(u)
    return tuple(sorted(chosen))


def eliminate_cycles(g: Graph, c_prime: Fraction, k_prime: Fraction) -> CycleBreakResult:
    """Build the c'-minor of g and decide whether its cycles can be broken.

    Rejects when the approximate feedback vertex set exceeds 2*k_prime,
    which certifies that no deletion of k_prime centers can work.
    """
    ns = build_rminor(g, Fraction(c_prime))
    fvs = fvs_2approx(ns.minor)
    threshold = 2 * Fraction(k_prime)
    return CycleBreakResult(ns, fvs, threshold, len(fvs) > threshold)
