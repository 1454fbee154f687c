"""End-to-end outlier embedding: sparsify, break cycles, break tripods, embed.

Each stage either shrinks the instance or rejects with a certificate naming
the inequality that fired. An accepted run returns the outlier set together
with a line embedding of everything else whose distortion was measured from
scratch, never trusted from intermediate bookkeeping.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .cycles import eliminate_cycles
from .embeddings import (
    OutlierEmbedding,
    embedding_to_json_dict,
    outlier_embedding,
    scale,
)
from .errors import ConfigError, ConsistencyError
from .graphs import Graph, delete_vertices, is_forest, local_density
from .nets import restrict_after_deletion
from .rational import parse_rational, rat_json, rat_str
from .sparsify import density_budget, sparsify
from .tree_embed import build_attached_forest, embed_forest
from .tripods import eliminate_tripods

log = logging.getLogger("ole.pipeline")

TRIPOD_RADIUS_MODES = ("analysis", "step3_text")

_CONFIG_KEYS = frozenset(
    {"c", "k", "beta", "tripod_radius_mode", "separator_exact_limit", "seed"}
)


@dataclass(frozen=True)
class PipelineConfig:
    """Target parameters plus the constants every stage derives from them."""

    c: Fraction = Fraction(1)
    k: int = 0
    beta: Fraction = Fraction(8)
    tripod_radius_mode: str = "analysis"
    separator_exact_limit: int = 18
    seed: int = 0

    @property
    def c_prime(self) -> Fraction:
        """Distortion target handed to the residual stages: 4c^3 + c."""
        return 4 * self.c**3 + self.c

    @property
    def tripod_radius(self) -> Fraction:
        if self.tripod_radius_mode == "analysis":
            return Fraction(3, 2) * self.c_prime + 1
        return self.c_prime / 2 + 1

    @property
    def embed_radius(self) -> Fraction:
        return self.tripod_radius + 2

    @property
    def final_scale(self) -> Fraction:
        return 2 * self.c_prime * self.c

    def deletion_allowance(self, density_removed: int) -> Fraction:
        """Per-stage deletion cap k' = (2c+1)|X_density| + k."""
        return (2 * self.c + 1) * density_removed + self.k


def _as_int(value: object, name: str, minimum: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        try:
            value = int(str(value))
        except ValueError as exc:
            raise ConfigError(f"{name} must be an integer") from exc
    if minimum is not None and value < minimum:
        raise ConfigError(f"{name} must be at least {minimum}")
    return value


def validate_config(cfg: Mapping[str, object] | PipelineConfig) -> PipelineConfig:
    """Normalize raw parameters into an exact, range-checked PipelineConfig."""
    if isinstance(cfg, PipelineConfig):
        data: dict[str, object] = {
            "c": cfg.c,
            "k": cfg.k,
            "beta": cfg.beta,
            "tripod_radius_mode": cfg.tripod_radius_mode,
            "separator_exact_limit": cfg.separator_exact_limit,
            "seed": cfg.seed,
        }
    else:
        data = dict(cfg)
    unknown = sorted(set(data) - _CONFIG_KEYS)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    c = parse_rational(data.get("c", 1))
    if c < 1:
        raise ConfigError("c must be at least 1")
    beta = parse_rational(data.get("beta", 8))
    if beta <= 0:
        raise ConfigError("beta must be positive")
    mode = str(data.get("tripod_radius_mode", "analysis"))
    if mode not in TRIPOD_RADIUS_MODES:
        raise ConfigError(
            f"tripod_radius_mode must be one of {', '.join(TRIPOD_RADIUS_MODES)}"
        )
    return PipelineConfig(
        c=c,
        k=_as_int(data.get("k", 0), "k", minimum=0),
        beta=beta,
        tripod_radius_mode=mode,
        separator_exact_limit=_as_int(
            data.get("separator_exact_limit", 18), "separator_exact_limit", minimum=0
        ),
        seed=_as_int(data.get("seed", 0), "seed"),
    )


@dataclass(frozen=True)
class PipelineOutcome:
    """Accept (outliers + verified embedding) or reject (stage + certificate)."""

    accepted: bool
    stage: str | None
    certificate: dict | None
    result: OutlierEmbedding | None
    stage_stats: dict


def _theorem_ratios(
    n: int, cfg: PipelineConfig, outlier_count: int, distortion: Fraction
) -> dict:
    """Measured quantities over the analysis bounds c^6*k*log^{5/2}n and c^13."""
    ratios: dict[str, float | None] = {
        "distortion_vs_bound": float(distortion) / float(cfg.c) ** 13
    }
    if cfg.k == 0 or n <= 1:
        ratios["outliers_vs_bound"] = None
    else:
        bound = float(cfg.c) ** 6 * cfg.k * math.log(n) ** 2.5
        ratios["outliers_vs_bound"] = outlier_count / bound
    return ratios


def _reject(stage: str, certificate: dict, stats: dict) -> PipelineOutcome:
    return PipelineOutcome(False, stage, certificate, None, stats)


def run_pipeline(g: Graph, cfg: Mapping[str, object] | PipelineConfig) -> PipelineOutcome:
    cfg = validate_config(cfg)
    stats: dict = {
        "n": g.n,
        "m": g.m,
        "params": {
            "c": rat_str(cfg.c),
            "k": cfg.k,
            "beta": rat_str(cfg.beta),
            "c_prime": rat_str(cfg.c_prime),
            "tripod_radius": rat_str(cfg.tripod_radius),
            "tripod_radius_mode": cfg.tripod_radius_mode,
            "embed_radius": rat_str(cfg.embed_radius),
            "scale": rat_str(cfg.final_scale),
        },
    }

    profile = local_density(g)
    budget = density_budget(g.n, cfg.k, cfg.c, cfg.beta)
    sp = sparsify(g, cfg.c, cfg.separator_exact_limit)
    x_density = sp.removed
    stats["density"] = {
        "delta": rat_str(profile.delta),
        "removed": len(x_density),
        "budget": rat_str(budget),
        "rounds": len(sp.recursion_log),
        "max_depth": max((entry[2] for entry in sp.recursion_log), default=0),
    }
    log.info(
        "density stage removed %d of %d vertices (budget %s)",
        len(x_density),
        g.n,
        rat_str(budget),
    )
    if len(x_density) > budget:
        return _reject(
            "density",
            {
                "inequality": (
                    f"|X_density|={len(x_density)} > budget={rat_str(budget)}"
                ),
                "removed": len(x_density),
                "budget": rat_str(budget),
                "note": "rejection is relative to the configured beta",
            },
            stats,
        )

    k_prime = cfg.deletion_allowance(len(x_density))
    stats["k_prime"] = rat_str(k_prime)
    g1 = delete_vertices(g, x_density)

    if g1.n == 0:
        # Sparsification consumed the whole graph within budget; the empty
        # residual embeds vacuously.
        oe = outlier_embedding(g, g.vertices(), {})
        stats["cycles"] = {"skipped": "empty residual"}
        stats["tripods"] = {"skipped": "empty residual"}
        stats["outliers"] = {
            "x_density": len(x_density),
            "x_forest": 0,
            "x_tripod": 0,
            "total": len(oe.outliers),
            "max_cell_cycles": 0,
            "max_cell_tripods": 0,
        }
        stats["embedding"] = {
            "distortion": rat_json(oe.report.distortion),
            "expansion": rat_str(oe.report.expansion),
            "contraction": rat_str(oe.report.contraction),
            "vertices": 0,
        }
        stats["theorem_ratios"] = _theorem_ratios(
            g.n, cfg, len(oe.outliers), oe.report.distortion
        )
        return PipelineOutcome(True, None, None, oe, stats)

    cyc = eliminate_cycles(g1, cfg.c_prime, k_prime)
    ns = cyc.net_system
    log.info(
        "cycle stage: net %d, minor edges %d, feedback set %d",
        len(ns.net),
        ns.minor.m,
        len(cyc.fvs),
    )
    stats["cycles"] = {
        "net_size": len(ns.net),
        "minor_edges": ns.minor.m,
        "fvs_size": len(cyc.fvs),
        "threshold": rat_str(cyc.threshold),
    }
    if cyc.rejected:
        witness = sorted(g1.label(ns.minor.labels[i]) for i in cyc.fvs)
        return _reject(
            "cycles",
            {
                "inequality": (
                    f"|S|={len(cyc.fvs)} > 2k'={rat_str(cyc.threshold)}"
                ),
                "fvs_size": len(cyc.fvs),
                "threshold": rat_str(cyc.threshold),
                "fvs_centers": witness,
            },
            stats,
        )

    cells1 = ns.cells()
    y_centers = tuple(ns.minor.labels[i] for i in cyc.fvs)
    x_forest = sorted(g1.label(v) for c0 in y_centers for v in cells1[c0])
    ns2 = restrict_after_deletion(ns, y_centers)
    if not is_forest(ns2.minor):
        raise ConsistencyError("minor must be acyclic once feedback cells are gone")

    cover = eliminate_tripods(ns2.minor, cfg.tripod_radius, k_prime)
    log.info(
        "tripod stage: universe %d, cover %d",
        cover.universe_size,
        len(cover.hitting_set),
    )
    stats["tripods"] = {
        "universe": cover.universe_size,
        "cover_size": len(cover.hitting_set),
        "greedy_bound": rat_str(cover.greedy_bound),
    }
    if cover.rejected:
        return _reject(
            "tripods",
            {
                "inequality": (
                    f"greedy={len(cover.hitting_set)} > "
                    f"k'*(ln|U|+1)={rat_str(cover.greedy_bound)}"
                ),
                "cover_size": len(cover.hitting_set),
                "greedy_bound": rat_str(cover.greedy_bound),
                "universe": cover.universe_size,
            },
            stats,
        )

    cells2 = ns2.cells()
    hit_centers = tuple(ns2.minor.labels[i] for i in cover.hitting_set)
    x_tripod = sorted(ns2.base.label(v) for c0 in hit_centers for v in cells2[c0])
    ns3 = restrict_after_deletion(ns2, hit_centers)

    af = build_attached_forest(ns3.minor, ns3)
    lifted = embed_forest(af.forest, cfg.embed_radius)
    final = scale(lifted, cfg.final_scale)
    coords = {af.forest.label(v): x for v, x in final.coords.items()}

    outliers = sorted(set(x_density) | set(x_forest) | set(x_tripod))
    if len(outliers) != len(x_density) + len(x_forest) + len(x_tripod):
        raise ConsistencyError("stage outlier sets must be disjoint")
    oe = outlier_embedding(g, outliers, coords)
    if not oe.report.finite:
        raise ConsistencyError("accepted embedding must separate residual vertices")

    stats["outliers"] = {
        "x_density": len(x_density),
        "x_forest": len(x_forest),
        "x_tripod": len(x_tripod),
        "total": len(outliers),
        "max_cell_cycles": max((len(cells1[c0]) for c0 in ns.net), default=0),
        "max_cell_tripods": max((len(cells2[c0]) for c0 in ns2.net), default=0),
    }
    stats["embedding"] = {
        "distortion": rat_json(oe.report.distortion),
        "expansion": rat_str(oe.report.expansion),
        "contraction": rat_str(oe.report.contraction),
        "vertices": len(coords),
    }
    stats["theorem_ratios"] = _theorem_ratios(
        g.n, cfg, len(outliers), oe.report.distortion
    )
    log.info(
        "accept: %d outliers, distortion %s", len(outliers), rat_str(oe.report.distortion)
    )
    return PipelineOutcome(True, None, None, oe, stats)


def outcome_report(out: PipelineOutcome) -> dict:
    """JSON-ready report: outcome, per-stage stats, certificates, embedding."""
    doc: dict = {
        "outcome": "accept" if out.accepted else "reject",
        "stage": out.stage,
        "stage_stats": out.stage_stats,
        "certificates": {} if out.certificate is None else {out.stage: out.certificate},
    }
    if out.result is not None:
        doc["embedding"] = embedding_to_json_dict(out.result)
    return doc
