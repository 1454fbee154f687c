"""Line embeddings with exact rational coordinates and distortion reports.

Distortion of an embedding f of a graph G restricted to a domain D is
measured per connected component of G[D]: the supremum of |f(x)-f(y)|/d(x,y)
times the supremum of d(x,y)/|f(x)-f(y)| over pairs in the same component,
where d is the shortest-path metric of G[D]. Pairs in different components
contribute nothing, but f must be injective on all of D.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DomainError, InputFormatError, PreconditionError
from .graphs import Graph, apsp, components, induced_subgraph
from .rational import parse_rational, rat_json, rat_str


@dataclass(frozen=True)
class LineEmbedding:
    """Map from vertex ids to exact rational line coordinates."""

    coords: dict[int, Fraction]

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(self.coords)

    def __contains__(self, v: int) -> bool:
        return v in self.coords

    def coord(self, v: int) -> Fraction:
        return self.coords[v]

    def span(self) -> Fraction:
        if len(self.coords) <= 1:
            return Fraction(0)
        vals = self.coords.values()
        return max(vals) - min(vals)

    def translate(self, offset: Fraction) -> "LineEmbedding":
        return LineEmbedding({v: x + offset for v, x in self.coords.items()})

    def restrict(self, vs: Iterable[int]) -> "LineEmbedding":
        keep = set(vs)
        missing = keep - self.domain
        if missing:
            raise DomainError(f"vertices {sorted(missing)} outside embedding domain")
        return LineEmbedding({v: self.coords[v] for v in sorted(keep)})

    def injective(self) -> bool:
        return len(set(self.coords.values())) == len(self.coords)


def scale(f: LineEmbedding, s: Fraction) -> LineEmbedding:
    """Multiply every coordinate by s > 0 (distortion is invariant)."""
    s = Fraction(s)
    if s <= 0:
        raise ValueError("scale factor must be positive")
    return LineEmbedding({v: x * s for v, x in f.coords.items()})


@dataclass(frozen=True)
class DistortionReport:
    """Measured expansion/contraction suprema with attaining witnesses.

    ``None`` values mean infinite distortion (the embedding repeated a
    coordinate). For an empty pair scope all three values are 1.
    """

    expansion: Fraction | None
    contraction: Fraction | None
    distortion: Fraction | None
    expansion_witness: tuple[int, int] | None
    contraction_witness: tuple[int, int] | None
    pairs: int

    @property
    def finite(self) -> bool:
        return self.distortion is not None


def distortion_of(g: Graph, f: LineEmbedding) -> DistortionReport:
    """Exact distortion of f on g restricted to the embedding's domain."""
    domain = sorted(f.domain)
    for v in domain:
        if not (0 <= v < g.n):
            raise DomainError(f"embedded vertex {v} not in graph")
    if not f.injective():
        by_coord: dict[Fraction, int] = {}
        for v in domain:
            x = f.coords[v]
            if x in by_coord:
                dup = (by_coord[x], v)
                return DistortionReport(None, None, None, None, dup, 0)
            by_coord[x] = v
    h = induced_subgraph(g, domain)
    dist = apsp(h)
    # suprema tracked by cross-multiplication to avoid building every ratio
    exp_n, exp_d = 0, 1  # numerator: coordinate gap, denominator: hop distance
    exp_wit: tuple[int, int] | None = None
    con_n, con_d = 0, 1
    con_wit: tuple[int, int] | None = None
    pairs = 0
    for i in range(h.n):
        fi = f.coords[domain[i]]
        row = dist.rows[i]
        for j in range(i + 1, h.n):
            dij = row[j]
            if dij < 0:
                continue
            pairs += 1
            gap = abs(f.coords[domain[j]] - fi)
            if gap * exp_d > exp_n * dij:
                exp_n, exp_d = gap, dij
                exp_wit = (domain[i], domain[j])
            if dij * con_d > con_n * gap:
                con_n, con_d = dij, gap
                con_wit = (domain[i], domain[j])
    if pairs == 0:
        one = Fraction(1)
        return DistortionReport(one, one, one, None, None, 0)
    expansion = Fraction(exp_n) / exp_d
    contraction = Fraction(con_n) / con_d
    return DistortionReport(
        expansion, contraction, expansion * contraction, exp_wit, con_wit, pairs
    )


@dataclass(frozen=True)
class OutlierEmbedding:
    """A removed vertex set plus a verified embedding of everything else."""

    outliers: tuple[int, ...]
    embedding: LineEmbedding
    report: DistortionReport


def outlier_embedding(
    g: Graph, outliers: Iterable[int], coords: Mapping[int, Fraction]
) -> OutlierEmbedding:
    """Validate domain = V(g) minus outliers and measure the distortion."""
    out = tuple(sorted(set(outliers)))
    for v in out:
        if not (0 <= v < g.n):
            raise DomainError(f"outlier {v} not in graph")
    expected = set(g.vertices()) - set(out)
    if set(coords) != expected:
        raise DomainError("embedding domain must be exactly the non-outlier vertices")
    emb = LineEmbedding({v: Fraction(coords[v]) for v in sorted(coords)})
    return OutlierEmbedding(out, emb, distortion_of(g, emb))


def verify_kc(
    g: Graph, oe: OutlierEmbedding, k: int, c: Fraction
) -> tuple[bool, DistortionReport]:
    """Recompute the report and test |K| <= k and distortion <= c."""
    expected = set(g.vertices()) - set(oe.outliers)
    if oe.embedding.domain != expected:
        raise DomainError("embedding domain must be exactly the non-outlier vertices")
    report = distortion_of(g, oe.embedding)
    ok = (
        len(oe.outliers) <= k
        and report.finite
        and report.distortion <= Fraction(c)
    )
    return ok, report


def combine_components(parts: Sequence[LineEmbedding]) -> LineEmbedding:
    """Lay out disjoint embeddings left to right with separating gaps.

    Part i is shifted to start at 2*i*M where M = max(largest span, 1).
    Within-part coordinate differences are preserved exactly, and every
    part sits strictly to the right of the previous one.
    """
    coords: dict[int, Fraction] = {}
    if not parts:
        return LineEmbedding(coords)
    big = max((p.span() for p in parts), default=Fraction(0))
    m = max(big, Fraction(1))
    for i, part in enumerate(parts):
        if not part.coords:
            continue
        base = min(part.coords.values())
        offset = 2 * i * m - base
        for v, x in part.coords.items():
            if v in coords:
                raise DomainError(f"vertex {v} appears in two parts")
            coords[v] = x + offset
    return LineEmbedding(coords)


def _normalized_parts(
    g: Graph, oe: OutlierEmbedding
) -> tuple[list[tuple[int, ...]], LineEmbedding]:
    """Per-component noncontractive rescale of oe, combined left to right.

    Every pairwise coordinate gap of the result is at least 1, which is what
    the outlier-count bound of repair_embedding leans on.
    """
    residual = sorted(oe.embedding.domain)
    h = induced_subgraph(g, residual)
    comps = [tuple(residual[i] for i in comp) for comp in components(h)]
    dist = apsp(h)
    pos = {v: i for i, v in enumerate(residual)}
    parts = []
    for comp in comps:
        part = {v: oe.embedding.coords[v] for v in comp}
        if len(comp) >= 2:
            worst = Fraction(0)
            for a in range(len(comp)):
                for b in range(a + 1, len(comp)):
                    u, w = comp[a], comp[b]
                    gap = abs(part[u] - part[w])
                    ratio = Fraction(dist.d(pos[u], pos[w])) / gap
                    if ratio > worst:
                        worst = ratio
            part = {v: x * worst for v, x in part.items()}
        parts.append(LineEmbedding(part))
    return comps, combine_components(parts)


def repair_embedding(
    g: Graph, u_set: Iterable[int], oe: OutlierEmbedding, c: Fraction
) -> OutlierEmbedding:
    """Grow the outlier set so that vertices near u_set's images disappear.

    Given a verified (|K|, c)-embedding, deletes every vertex whose image
    falls within distance c of the image of some u in u_set, then rescales
    each remaining component by 4c^2+1 and re-separates them. The result
    satisfies |K'| <= |K| + (2c+1)|u_set| and has distortion at most 4c^3+c.
    """
    c = Fraction(c)
    u_list = sorted(set(u_set))
    for v in u_list:
        if not (0 <= v < g.n):
            raise DomainError(f"vertex {v} not in graph")
    ok, _ = verify_kc(g, oe, len(oe.outliers), c)
    if not ok:
        raise PreconditionError("input is not a verified (|K|, c)-embedding")
    kept = set(oe.outliers)
    _, flat = _normalized_parts(g, oe)
    inner: set[int] = set()
    for u in u_list:
        if u in kept:
            continue
        center = flat.coords[u]
        for v, x in flat.coords.items():
            if abs(x - center) <= c:
                inner.add(v)
    k_new = tuple(sorted(kept | inner))
    survivors = sorted(set(g.vertices()) - set(k_new))
    h = induced_subgraph(g, survivors)
    factor = 4 * c * c + 1
    parts = []
    for comp in components(h):
        orig = [survivors[i] for i in comp]
        parts.append(
            LineEmbedding({v: flat.coords[v] * factor for v in orig})
        )
    final = combine_components(parts)
    return outlier_embedding(g, k_new, final.coords)


def embedding_to_json_dict(oe: OutlierEmbedding) -> dict:
    if not oe.report.finite:
        raise ValueError("refusing to serialize an embedding with infinite distortion")
    return {
        "outliers": list(oe.outliers),
        "coords": {str(v): rat_str(x) for v, x in sorted(oe.embedding.coords.items())},
        "distortion": rat_json(oe.report.distortion),
    }


def embedding_from_json_dict(g: Graph, doc: dict) -> tuple[OutlierEmbedding, Fraction]:
    """Rebuild an OutlierEmbedding; returns it with the distortion the file claims."""
    if not isinstance(doc, dict) or "outliers" not in doc or "coords" not in doc:
        raise InputFormatError('embedding JSON needs "outliers" and "coords"')
    try:
        outliers = [int(v) for v in doc["outliers"]]
        coords = {int(v): parse_rational(x) for v, x in doc["coords"].items()}
    except (TypeError, ValueError) as exc:
        raise InputFormatError(f"malformed embedding document: {exc}") from exc
    claimed = doc.get("distortion")
    if claimed is None or "num" not in claimed or "den" not in claimed:
        raise InputFormatError('embedding JSON needs a "distortion" {num, den} field')
    value = Fraction(int(claimed["num"]), int(claimed["den"]))
    return outlier_embedding(g, outliers, coords), value
