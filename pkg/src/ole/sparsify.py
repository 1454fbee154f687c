"""Density reduction via recursive balanced separators, plus the reject budget.

A graph that embeds into the line with distortion c cannot contain a ball
of more than 2Rc+1 vertices at any radius R, so regions of local density
above c must be cut away. Removing a 3/4-balanced separator and recursing
on the pieces strips those regions while deleting few vertices overall.
"""

from __future__ import annotations

import decimal
import itertools
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Iterable

from .errors import ConsistencyError, PreconditionError
from .graphs import (
    Graph,
    bfs_distances,
    components,
    delete_vertices,
    induced_subgraph,
    is_connected,
    local_density,
)


@dataclass(frozen=True)
class SeparatorResult:
    separator: tuple[int, ...]
    balance: Fraction  # largest remaining component as a fraction of n
    method: str  # "exact" or "heuristic"


@dataclass(frozen=True)
class SparsifyResult:
    removed: tuple[int, ...]
    # one entry per separator round: (subgraph size, separator size, depth)
    recursion_log: tuple[tuple[int, int, int], ...]


def _is_balanced(g: Graph, sep: Iterable[int], alpha: Fraction) -> bool:
    rest = delete_vertices(g, sep)
    limit = alpha * g.n
    return all(len(comp) <= limit for comp in components(rest))


def _max_component_fraction(g: Graph, sep: Iterable[int]) -> Fraction:
    rest = delete_vertices(g, sep)
    biggest = max((len(comp) for comp in components(rest)), default=0)
    return Fraction(biggest, g.n)


def balanced_separator(
    g: Graph, alpha: Fraction = Fraction(3, 4), exact_limit: int = 18
) -> SeparatorResult:
    """Vertex set whose removal leaves components of at most alpha*n vertices.

    Exact mode (n <= exact_limit) enumerates subsets by size and returns the
    smallest separator, breaking ties toward the most balanced split and then
    lexicographically; above the limit, the best greedily-shrunk BFS layer
    over both endpoints of an approximate diameter path.
    """
    alpha = Fraction(alpha)
    if not (Fraction(1, 2) <= alpha < 1):
        raise PreconditionError("alpha must lie in [1/2, 1)")
    if g.n < 2 or not is_connected(g):
        raise PreconditionError("separator requires a connected graph on >= 2 vertices")
    if g.n <= exact_limit:
        for size in range(1, g.n + 1):
            best_combo: tuple[int, ...] | None = None
            best_bal: Fraction | None = None
            for combo in itertools.combinations(range(g.n), size):
                if _is_balanced(g, combo, alpha):
                    bal = _max_component_fraction(g, combo)
                    if best_bal is None or bal < best_bal:
                        best_combo, best_bal = combo, bal
            if best_combo is not None:
                return SeparatorResult(best_combo, best_bal, "exact")
        raise ConsistencyError("no balanced separator found")  # unreachable
    dist0 = bfs_distances(g, 0)
    a = max(g.vertices(), key=lambda v: (dist0[v], -v))
    dista = bfs_distances(g, a)
    b = max(g.vertices(), key=lambda v: (dista[v], -v))
    best: tuple[int, ...] | None = None
    for endpoint in (a, b):
        dist = bfs_distances(g, endpoint)
        ecc = max(dist)
        for level in range(ecc + 1):
            layer = [v for v in g.vertices() if dist[v] == level]
            if not _is_balanced(g, layer, alpha):
                continue
            trimmed = list(layer)
            for v in list(trimmed):
                reduced = [u for u in trimmed if u != v]
                if reduced and _is_balanced(g, reduced, alpha):
                    trimmed = reduced
            if best is None or len(trimmed) < len(best):
                best = tuple(trimmed)
    if best is None:
        raise ConsistencyError("no BFS layer separates; should be impossible")
    return SeparatorResult(best, _max_component_fraction(g, best), "heuristic")


def sparsify(g: Graph, c: Fraction, exact_limit: int = 18) -> SparsifyResult:
    """Delete vertices until no region is denser than c.

    Recursion: if the local density is already at most c, stop; otherwise
    remove a 3/4-balanced separator and recurse into each remaining
    component. Deleted ids refer to ``g``.
    """
    c = Fraction(c)
    if c < 1:
        raise PreconditionError("density threshold must be at least 1")
    removed: list[int] = []
    log: list[tuple[int, int, int]] = []

    def recurse(h: Graph, origin: tuple[int, ...], depth: int) -> None:
        if local_density(h).delta <= c:
            log.append((h.n, 0, depth))
            return
        comps = components(h)
        if len(comps) > 1:
            for comp in comps:
                sub = induced_subgraph(h, comp)
                recurse(sub, tuple(origin[v] for v in comp), depth)
            return
        sep = balanced_separator(h, Fraction(3, 4), exact_limit)
        log.append((h.n, len(sep.separator), depth))
        removed.extend(origin[v] for v in sep.separator)
        rest = delete_vertices(h, sep.separator)
        rest_origin = tuple(
            origin[v] for v in h.vertices() if v not in set(sep.separator)
        )
        for comp in components(rest):
            sub = induced_subgraph(rest, comp)
            recurse(sub, tuple(rest_origin[v] for v in comp), depth + 1)

    recurse(g, tuple(range(g.n)), 0)
    leftover = delete_vertices(g, removed)
    if local_density(leftover).delta > c:
        raise ConsistencyError("sparsify left a region denser than the threshold")
    return SparsifyResult(tuple(sorted(removed)), tuple(log))


def density_budget(n: int, k: int, c: Fraction, beta: Fraction = Fraction(8)) -> Fraction:
    """Rejection budget beta*k*c*(log_{4/3} n)^{3/2} as an exact rational.

    Evaluated with 50 significant digits and returned as the exact value of
    that decimal, so comparisons against it are deterministic. Zero when
    k = 0 or n <= 1.
    """
    if k <= 0 or n <= 1:
        return Fraction(0)
    with decimal.localcontext() as ctx:
        ctx.prec = 50
        log43 = Decimal(n).ln() / (Decimal(4) / Decimal(3)).ln()
        power = log43 * log43.sqrt()
    return Fraction(beta) * k * Fraction(c) * Fraction(power)
