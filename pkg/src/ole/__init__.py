"""Outlier embeddings of graphs into the line.

Delete a small vertex set, embed the rest with provably bounded distortion,
or reject with a stage certificate. Brute-force oracles cover desk-scale
instances for validation.
"""

from .cycles import eliminate_cycles, fvs_2approx
from .embeddings import (
    DistortionReport,
    LineEmbedding,
    OutlierEmbedding,
    combine_components,
    distortion_of,
    embedding_from_json_dict,
    embedding_to_json_dict,
    outlier_embedding,
    repair_embedding,
    scale,
    verify_kc,
)
from .generators import InstanceSpec, build_instance
from .graphs import Graph, apsp, load_graph
from .nets import (
    NetSystem,
    build_partition,
    build_rminor,
    build_rnet,
    check_minor_metric,
    restrict_after_deletion,
)
from .oracles import (
    exact_fvs,
    exact_separator,
    optimal_distortion_fixed_order,
    optimal_line_distortion,
    optimal_outlier_decision,
)
from .pipeline import (
    PipelineConfig,
    PipelineOutcome,
    outcome_report,
    run_pipeline,
    validate_config,
)
from .sparsify import balanced_separator, density_budget, sparsify
from .tree_embed import build_attached_forest, embed_forest, embed_tripod_free_tree
from .tripods import (
    eliminate_tripods,
    enumerate_canonical_tripods,
    is_r_tripod,
    tree_has_r_tripod,
)

__version__ = "0.1.0"

__all__ = [
    "DistortionReport",
    "Graph",
    "InstanceSpec",
    "LineEmbedding",
    "NetSystem",
    "OutlierEmbedding",
    "PipelineConfig",
    "PipelineOutcome",
    "apsp",
    "balanced_separator",
    "build_attached_forest",
    "build_instance",
    "build_partition",
    "build_rminor",
    "build_rnet",
    "check_minor_metric",
    "combine_components",
    "density_budget",
    "distortion_of",
    "eliminate_cycles",
    "eliminate_tripods",
    "embed_forest",
    "embed_tripod_free_tree",
    "embedding_from_json_dict",
    "embedding_to_json_dict",
    "enumerate_canonical_tripods",
    "exact_fvs",
    "exact_separator",
    "fvs_2approx",
    "is_r_tripod",
    "load_graph",
    "optimal_distortion_fixed_order",
    "optimal_line_distortion",
    "optimal_outlier_decision",
    "outcome_report",
    "outlier_embedding",
    "repair_embedding",
    "restrict_after_deletion",
    "run_pipeline",
    "scale",
    "sparsify",
    "tree_has_r_tripod",
    "validate_config",
    "verify_kc",
]
