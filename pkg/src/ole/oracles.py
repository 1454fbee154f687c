"""Brute-force reference computations for desk-scale validation.

Everything here trades speed for trustworthiness: exhaustive search over
orders or subsets, exact rational arithmetic, and certification of the
winner by an independent feasibility routine. Sizes are hard-capped so a
typo cannot silently launch a week-long enumeration.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .embeddings import (
    LineEmbedding,
    OutlierEmbedding,
    combine_components,
    outlier_embedding,
    verify_kc,
)
from .errors import ConsistencyError, DomainError, SizeLimitError
from .graphs import (
    DistanceTable,
    Graph,
    apsp,
    components,
    delete_vertices,
    induced_subgraph,
    is_connected,
    is_forest,
)
from .rational import simplest_in_interval

DEFAULT_TOL = Fraction(1, 10**9)


@dataclass(frozen=True)
class OracleResult:
    value: Fraction
    order: tuple[int, ...]
    coords: dict[int, Fraction]
    search_space: int


def _leftmost(order: Sequence[int], d: DistanceTable) -> tuple[list[int], Fraction]:
    """Greedy tightest placement for a fixed left-to-right order.

    Each vertex goes to the smallest coordinate that keeps every gap at
    least the graph distance. Among placements in this order that never
    contract, this one minimizes expansion, and its largest gap-to-distance
    ratio equals the least distortion achievable with this order.
    """
    xs = [0]
    best_n, best_d = 1, 1  # running max ratio as an integer pair
    for j in range(1, len(order)):
        x = max(xs[i] + d.d(order[i], order[j]) for i in range(j))
        for i in range(j):
            num = x - xs[i]
            den = d.d(order[i], order[j])
            if num * best_d > best_n * den:
                best_n, best_d = num, den
        xs.append(x)
    return xs, Fraction(best_n, best_d)


def _feasible(
    order: Sequence[int], d: DistanceTable, e: Fraction
) -> dict[int, Fraction] | None:
    """Coordinates with every gap in [distance, e*distance], or None.

    Difference constraints form a digraph; Bellman-Ford from a virtual
    source either finds potentials satisfying all of them or a negative
    cycle proving expansion e is unreachable for this order.
    """
    n = len(order)
    edges: list[tuple[int, int, Fraction | int]] = []
    for i in range(n):
        for j in range(i + 1, n):
            dij = d.d(order[i], order[j])
            edges.append((i, j, e * dij))
            edges.append((j, i, -dij))
    pot: list[Fraction] = [Fraction(0)] * n
    for _ in range(n):
        changed = False
        for u, v, w in edges:
            cand = pot[u] + w
            if cand < pot[v]:
                pot[v] = cand
                changed = True
        if not changed:
            break
    else:
        return None  # still relaxing after n passes: negative cycle
    low = min(pot)
    return {order[i]: pot[i] - low for i in range(n)}


def optimal_distortion_fixed_order(
    d: DistanceTable, order: Sequence[int], tol: Fraction = DEFAULT_TOL
) -> OracleResult:
    """Least distortion of any line embedding realizing the given order.

    Binary search on the expansion bound with feasibility testing, seeded
    by the greedy placement, and cross-checked against it: the two routes
    must agree exactly or the call fails loudly.
    """
    order = tuple(order)
    if len(set(order)) != len(order):
        raise DomainError("order must not repeat vertices")
    if len(order) <= 1:
        coords = {order[0]: Fraction(0)} if order else {}
        return OracleResult(Fraction(1), order, coords, 1)
    for i in range(len(order)):
        for j in range(i + 1, len(order)):
            if not d.connected(order[i], order[j]):
                raise DomainError("order spans more than one component")
    xs, e_exact = _leftmost(order, d)
    if e_exact == 1:
        coords = {v: Fraction(x) for v, x in zip(order, xs)}
        return OracleResult(Fraction(1), order, coords, 1)
    if _feasible(order, d, e_exact) is None:
        raise ConsistencyError("greedy placement bound reported infeasible")
    lo, hi = Fraction(1), e_exact
    probes = 1
    if _feasible(order, d, lo) is not None:
        raise ConsistencyError("expansion 1 feasible but greedy bound exceeds 1")
    while hi - lo > tol * lo:
        mid = (lo + hi) / 2
        probes += 1
        if _feasible(order, d, mid) is None:
            lo = mid
        else:
            hi = mid
    snap = simplest_in_interval(lo, hi)
    probes += 1
    if snap != hi and _feasible(order, d, snap) is not None:
        hi = snap
    if hi != e_exact:
        raise ConsistencyError(
            f"binary search settled on {hi}, greedy optimum is {e_exact}"
        )
    coords = {v: Fraction(x) for v, x in zip(order, xs)}
    return OracleResult(hi, order, coords, probes)


def optimal_line_distortion(
    g: Graph, tol: Fraction = DEFAULT_TOL, limit_n: int = 9
) -> OracleResult:
    """Exhaustive minimum line distortion of a small connected graph.

    Branch and bound over vertex orders: partial orders are placed greedily
    and abandoned once their ratio reaches the best complete one. Reversed
    orders embed identically, so only orders with first vertex smaller than
    last are completed.
    """
    if g.n == 0:
        raise DomainError("empty graph has no embedding")
    if g.n > limit_n:
        raise SizeLimitError(f"n={g.n} exceeds oracle limit {limit_n}")
    if not is_connected(g):
        raise DomainError("distortion oracle requires a connected graph")
    if g.n == 1:
        return OracleResult(Fraction(1), (0,), {0: Fraction(0)}, 1)
    d = apsp(g)
    best_n, best_d = None, None  # best complete ratio as an integer pair
    best_order: tuple[int, ...] | None = None
    leaves = 0

    order = [0] * g.n
    xs = [0] * g.n
    used = [False] * g.n

    def ratio_after(j: int) -> tuple[int, int]:
        """Place order[j] leftmost; return the worst new (num, den) pair."""
        x = 0
        for i in range(j):
            cand = xs[i] + d.d(order[i], order[j])
            if cand > x:
                x = cand
        xs[j] = x
        worst_n, worst_d = 0, 1
        for i in range(j):
            num = x - xs[i]
            den = d.d(order[i], order[j])
            if num * worst_d > worst_n * den:
                worst_n, worst_d = num, den
        return worst_n, worst_d

    def extend(j: int, cur_n: int, cur_d: int) -> None:
        nonlocal best_n, best_d, best_order, leaves
        if j == g.n:
            leaves += 1
            if best_n is None or cur_n * best_d < best_n * cur_d:
                best_n, best_d = cur_n, cur_d
                best_order = tuple(order)
            return
        last = j == g.n - 1
        for v in range(g.n):
            if used[v]:
                continue
            if last and v < order[0]:
                continue
            order[j] = v
            new_n, new_d = ratio_after(j)
            if new_n * cur_d < cur_n * new_d:
                new_n, new_d = cur_n, cur_d
            if best_n is not None and new_n * best_d >= best_n * new_d:
                continue  # already as bad as the incumbent
            used[v] = True
            extend(j + 1, new_n, new_d)
            used[v] = False

    for first in range(g.n):
        order[0] = first
        xs[0] = 0
        used[first] = True
        extend(1, 1, 1)
        used[first] = False
    if best_order is None:
        raise ConsistencyError("search finished without a complete order")
    certified = optimal_distortion_fixed_order(d, best_order, tol)
    if certified.value != Fraction(best_n, best_d):
        raise ConsistencyError(
            f"search optimum {Fraction(best_n, best_d)} disagrees with "
            f"certified value {certified.value}"
        )
    return OracleResult(certified.value, best_order, certified.coords, leaves)


def optimal_outlier_decision(
    g: Graph, k: int, c: Fraction, limit_n: int = 9
) -> tuple[bool, tuple[int, ...] | None, OutlierEmbedding | None]:
    """Does deleting some k vertices leave distortion at most c? Exhaustive.

    Subsets are tried smallest first, in lexicographic order, so the
    witness is the canonical minimal one. Every residual component runs
    through the distortion oracle; the combined embedding is re-verified
    before being returned.
    """
    c = Fraction(c)
    if g.n > limit_n + k:
        raise SizeLimitError(f"n={g.n} exceeds oracle limit {limit_n}+k")
    for size in range(min(k, g.n) + 1):
        for combo in itertools.combinations(range(g.n), size):
            rest = delete_vertices(g, combo)
            parts: list[LineEmbedding] = []
            ok = True
            for comp in components(rest):
                sub = induced_subgraph(rest, comp)
                if sub.n > limit_n:
                    raise SizeLimitError(
                        f"residual component of size {sub.n} exceeds {limit_n}"
                    )
                res = optimal_line_distortion(sub, limit_n=limit_n)
                if res.value > c:
                    ok = False
                    break
                parts.append(
                    LineEmbedding(
                        {rest.label(comp[v]): x for v, x in res.coords.items()}
                    )
                )
            if not ok:
                continue
            coords: dict[int, Fraction] = {}
            if parts:
                coords = dict(combine_components(parts).coords)
            oe = outlier_embedding(g, combo, coords)
            good, _ = verify_kc(g, oe, size, c)
            if not good:
                raise ConsistencyError("oracle witness failed verification")
            return True, combo, oe
    return False, None, None


def exact_fvs(g: Graph, limit_n: int = 16) -> tuple[int, ...]:
    """Smallest vertex set meeting every cycle, by subset enumeration."""
    if g.n > limit_n:
        raise SizeLimitError(f"n={g.n} exceeds oracle limit {limit_n}")
    if is_forest(g):
        return ()
    for size in range(1, g.n + 1):
        for combo in itertools.combinations(range(g.n), size):
            if is_forest(delete_vertices(g, combo)):
                return combo
    raise ConsistencyError("no feedback vertex set found")  # unreachable


def exact_separator(
    g: Graph, alpha: Fraction = Fraction(3, 4), limit_n: int = 18
) -> tuple[int, ...]:
    """Smallest vertex set whose removal caps components at alpha*n vertices."""
    alpha = Fraction(alpha)
    if g.n > limit_n:
        raise SizeLimitError(f"n={g.n} exceeds oracle limit {limit_n}")
    limit = alpha * g.n
    for size in range(g.n + 1):
        for combo in itertools.combinations(range(g.n), size):
            rest = delete_vertices(g, combo)
            if all(len(comp) <= limit for comp in components(rest)):
                return combo
    raise ConsistencyError("no balanced separator found")  # unreachable
