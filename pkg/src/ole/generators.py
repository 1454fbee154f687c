"""Deterministic instance generators for the CLI and the test suite."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import ConfigError
from .graphs import Graph

FAMILIES = (
    "path",
    "cycle",
    "grid3xm",
    "spider",
    "caterpillar",
    "planted_outliers",
    "random",
)


@dataclass(frozen=True)
class InstanceSpec:
    family: str
    n: int = 0  # vertices (path, cycle, planted base, random) or spine length
    m: int = 0  # grid columns
    k: int = 0  # planted outliers
    legs: int = 0
    leg_len: int = 0
    p: float = 0.1  # edge probability for the random family
    seed: int = 0


def make_path(n: int) -> Graph:
    if n < 1:
        raise ConfigError("path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def make_cycle(n: int) -> Graph:
    if n < 3:
        raise ConfigError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def make_grid3xm(m: int) -> Graph:
    """3 x m grid; vertex (row, col) gets id 3*col + row."""
    if m < 1:
        raise ConfigError("grid needs m >= 1")
    edges = []
    for col in range(m):
        for row in range(2):
            edges.append((3 * col + row, 3 * col + row + 1))
    for col in range(m - 1):
        for row in range(3):
            edges.append((3 * col + row, 3 * (col + 1) + row))
    return Graph.from_edges(3 * m, edges)


def make_spider(legs: int, leg_len: int) -> Graph:
    """Center 0 with the given number of paths hanging off it."""
    if legs < 0 or (legs > 0 and leg_len < 1):
        raise ConfigError("spider needs legs >= 0 and leg_len >= 1")
    edges = []
    nxt = 1
    for _ in range(legs):
        prev = 0
        for _ in range(leg_len):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph.from_edges(nxt, edges)


def make_caterpillar(spine: int, seed: int) -> Graph:
    """Spine path 0..spine-1; each spine vertex grows a leaf with probability 1/2."""
    if spine < 1:
        raise ConfigError("caterpillar needs spine >= 1")
    rng = random.Random(seed)
    edges = [(i, i + 1) for i in range(spine - 1)]
    nxt = spine
    for v in range(spine):
        if rng.random() < 0.5:
            edges.append((v, nxt))
            nxt += 1
    return Graph.from_edges(nxt, edges)


def make_planted_outliers(n: int, k: int, seed: int) -> tuple[Graph, tuple[int, ...]]:
    """Path 0..n-1 plus k extra vertices, each attached to 1..3 random spots.

    The extras take the top ids, so deleting them leaves the base path with
    its original edge set exactly.
    """
    if n < 1 or k < 0:
        raise ConfigError("planted_outliers needs n >= 1 and k >= 0")
    rng = random.Random(seed)
    edges = [(i, i + 1) for i in range(n - 1)]
    planted = tuple(range(n, n + k))
    for v in planted:
        count = rng.randint(1, min(3, n))
        for u in sorted(rng.sample(range(n), count)):
            edges.append((u, v))
    return Graph.from_edges(n + k, edges), planted


def make_gnp(n: int, p: float, seed: int) -> Graph:
    if n < 1 or not 0 <= p <= 1:
        raise ConfigError("random family needs n >= 1 and 0 <= p <= 1")
    rng = random.Random(seed)
    edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
    ]
    return Graph.from_edges(n, edges)


def build_instance(spec: InstanceSpec) -> tuple[Graph, dict]:
    """Build the graph plus a ground-truth sidecar document."""
    truth: dict = {"family": spec.family, "seed": spec.seed, "planted": []}
    if spec.family == "path":
        g = make_path(spec.n)
        truth["params"] = {"n": spec.n}
    elif spec.family == "cycle":
        g = make_cycle(spec.n)
        truth["params"] = {"n": spec.n}
    elif spec.family == "grid3xm":
        g = make_grid3xm(spec.m)
        truth["params"] = {"m": spec.m}
    elif spec.family == "spider":
        g = make_spider(spec.legs, spec.leg_len)
        truth["params"] = {"legs": spec.legs, "leg_len": spec.leg_len}
    elif spec.family == "caterpillar":
        g = make_caterpillar(spec.n, spec.seed)
        truth["params"] = {"spine": spec.n}
    elif spec.family == "planted_outliers":
        g, planted = make_planted_outliers(spec.n, spec.k, spec.seed)
        truth["params"] = {"n": spec.n, "k": spec.k}
        truth["planted"] = list(planted)
        truth["base_family"] = "path"
    elif spec.family == "random":
        g = make_gnp(spec.n, spec.p, spec.seed)
        truth["params"] = {"n": spec.n, "p": spec.p}
    else:
        raise ConfigError(f"unknown family {spec.family!r}; choose from {FAMILIES}")
    return g, truth
