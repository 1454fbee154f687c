"""Command line interface: embed, verify, oracle, sparsify, stats, gen.

Exit codes for embed and verify: 0 accept/pass, 2 reject/fail, 1 error.
Set OLE_LOG=info (or debug) for stage-by-stage progress on stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from .embeddings import embedding_from_json_dict, embedding_to_json_dict, verify_kc
from .errors import ConfigError
from .generators import FAMILIES, InstanceSpec, build_instance
from .graphs import (
    Graph,
    components,
    graph_to_json_dict,
    is_forest,
    load_graph,
    local_density,
)
from .nets import build_rminor, net_system_to_json_dict
from .oracles import optimal_line_distortion, optimal_outlier_decision
from .pipeline import outcome_report, run_pipeline
from .plots import render_embedding_figure, write_coords_csv
from .rational import parse_rational, rat_json, rat_str
from .sparsify import density_budget, sparsify

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_REJECT = 2

# --tripod-radius-mode spelling on the command line vs. the config value
_MODE_MAP = {"analysis": "analysis", "step3": "step3_text"}


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; 2 means reject here, so remap to 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


def _read_text(path: str) -> str:
    with open(path, "r") as fh:
        return fh.read()


def _flatten(prefix: str, value, lines: list[str]) -> None:
    if isinstance(value, dict):
        for key in sorted(value, key=str):
            child = f"{prefix}.{key}" if prefix else str(key)
            _flatten(child, value[key], lines)
    elif isinstance(value, list):
        lines.append(f"{prefix} = {json.dumps(value)}")
    else:
        lines.append(f"{prefix} = {value}")


def _emit(doc: dict, fmt: str, out: str | None) -> None:
    if fmt == "json":
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    else:
        lines: list[str] = []
        _flatten("", doc, lines)
        text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_embed(args: argparse.Namespace) -> int:
    g = load_graph(_read_text(args.graph))
    outcome = run_pipeline(
        g,
        {
            "c": args.c,
            "k": args.k,
            "beta": args.beta,
            "tripod_radius_mode": _MODE_MAP[args.tripod_radius_mode],
            "separator_exact_limit": args.exact_limit,
            "seed": args.seed,
        },
    )
    _emit(outcome_report(outcome), args.format, args.out)
    if outcome.result is not None:
        if args.csv:
            write_coords_csv(args.csv, g, outcome.result)
        if args.plot:
            render_embedding_figure(args.plot, g, outcome.result)
    return EXIT_OK if outcome.accepted else EXIT_REJECT


def cmd_verify(args: argparse.Namespace) -> int:
    g = load_graph(_read_text(args.graph))
    doc_in = json.loads(_read_text(args.embedding))
    if isinstance(doc_in, dict) and "coords" not in doc_in and "embedding" in doc_in:
        doc_in = doc_in["embedding"]
    oe, claimed = embedding_from_json_dict(g, doc_in)
    report = oe.report
    doc: dict = {
        "outliers": len(oe.outliers),
        "claimed": rat_json(claimed),
        "measured": rat_json(report.distortion) if report.finite else None,
        "matches_claim": report.finite and report.distortion == claimed,
    }
    ok = doc["matches_claim"]
    if args.k is not None or args.c is not None:
        k = args.k if args.k is not None else len(oe.outliers)
        c = parse_rational(args.c) if args.c is not None else report.distortion
        passed, _ = verify_kc(g, oe, k, c)
        doc["k"] = k
        doc["c"] = rat_str(c)
        doc["within_kc"] = passed
        ok = ok and passed
    doc["verified"] = ok
    _emit(doc, args.format, args.out)
    return EXIT_OK if ok else EXIT_REJECT


def cmd_oracle(args: argparse.Namespace) -> int:
    g = load_graph(_read_text(args.graph))
    if args.k is not None or args.c is not None:
        if args.k is None or args.c is None:
            raise ConfigError("outlier decision needs both --k and --c")
        yes, witness, oe = optimal_outlier_decision(
            g, args.k, parse_rational(args.c), limit_n=args.limit
        )
        doc = {
            "mode": "decision",
            "k": args.k,
            "c": args.c,
            "embeddable": yes,
        }
        if yes:
            doc["outliers"] = list(witness)
            doc["embedding"] = embedding_to_json_dict(oe)
    else:
        res = optimal_line_distortion(
            g, tol=parse_rational(args.tol), limit_n=args.limit
        )
        doc = {
            "mode": "optimum",
            "distortion": rat_json(res.value),
            "order": list(res.order),
            "coords": {str(v): rat_str(x) for v, x in sorted(res.coords.items())},
            "search_space": res.search_space,
        }
    _emit(doc, args.format, args.out)
    return EXIT_OK


def cmd_sparsify(args: argparse.Namespace) -> int:
    g = load_graph(_read_text(args.graph))
    profile = local_density(g)
    res = sparsify(g, parse_rational(args.c), args.exact_limit)
    doc = {
        "n": g.n,
        "m": g.m,
        "delta": rat_str(profile.delta),
        "witness": list(profile.witness) if profile.witness else None,
        "removed": list(res.removed),
        "recursion_log": [
            {"n": size, "separator": sep, "depth": depth}
            for size, sep, depth in res.recursion_log
        ],
        "budget": rat_str(density_budget(g.n, args.k, parse_rational(args.c),
                                         parse_rational(args.beta))),
    }
    _emit(doc, args.format, args.out)
    return EXIT_OK


def cmd_stats(args: argparse.Namespace) -> int:
    g = load_graph(_read_text(args.graph))
    profile = local_density(g)
    comps = components(g)
    doc = {
        "n": g.n,
        "m": g.m,
        "max_degree": max((g.degree(v) for v in g.vertices()), default=0),
        "components": len(comps),
        "largest_component": max((len(c) for c in comps), default=0),
        "is_forest": is_forest(g),
        "delta": rat_str(profile.delta),
        "delta_witness": list(profile.witness) if profile.witness else None,
    }
    if args.minor_r is not None:
        ns = build_rminor(g, parse_rational(args.minor_r))
        doc["minor"] = net_system_to_json_dict(ns)
    _emit(doc, args.format, args.out)
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    spec = InstanceSpec(
        family=args.family,
        n=args.n,
        m=args.m,
        k=args.k,
        legs=args.legs,
        leg_len=args.leg_len,
        p=args.p,
        seed=args.seed,
    )
    g, truth = build_instance(spec)
    gdoc = graph_to_json_dict(g)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(json.dumps(gdoc, sort_keys=True) + "\n")
        base, _ = os.path.splitext(args.out)
        with open(base + ".truth.json", "w") as fh:
            fh.write(json.dumps(truth, sort_keys=True, indent=2) + "\n")
    else:
        _emit({"graph": gdoc, "truth": truth}, args.format, None)
    return EXIT_OK


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out", help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ole", description="outlier line embeddings of graphs")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("embed", parents=[], help="run the full pipeline")
    p.add_argument("graph", help="graph file (JSON or edge list)")
    p.add_argument("--k", type=int, default=0, help="outlier budget")
    p.add_argument("--c", default="1", help="distortion target, rational")
    p.add_argument("--beta", default="8", help="density rejection constant")
    p.add_argument(
        "--tripod-radius-mode", choices=sorted(_MODE_MAP), default="analysis"
    )
    p.add_argument("--exact-limit", type=int, default=18,
                   help="max subgraph size for exact separators")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", help="also dump per-vertex coordinates to this CSV")
    p.add_argument("--plot", help="also render the embedding to this image file")
    _add_common(p)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("verify", help="recheck an embedding file against its graph")
    p.add_argument("graph")
    p.add_argument("embedding", help="embedding JSON produced by embed/oracle")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--c", default=None)
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="brute-force optimum (small graphs only)")
    p.add_argument("graph")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--c", default=None)
    p.add_argument("--tol", default="1/1000000000")
    p.add_argument("--limit", type=int, default=9, help="largest n the search accepts")
    _add_common(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("sparsify", help="density reduction stage only")
    p.add_argument("graph")
    p.add_argument("--c", default="1")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--beta", default="8")
    p.add_argument("--exact-limit", type=int, default=18)
    _add_common(p)
    p.set_defaults(func=cmd_sparsify)

    p = sub.add_parser("stats", help="basic structure and density of a graph")
    p.add_argument("graph")
    p.add_argument("--minor-r", dest="minor_r", default=None,
                   help="also dump the R-net cluster system at this radius")
    _add_common(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("gen", help="generate a test instance")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--legs", type=int, default=0)
    p.add_argument("--leg-len", type=int, default=0, dest="leg_len")
    p.add_argument("--p", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    _add_common(p)
    p.set_defaults(func=cmd_gen)

    return parser


def _setup_logging() -> None:
    level = os.environ.get("OLE_LOG", "").strip().upper()
    if level:
        logging.basicConfig(
            level=getattr(logging, level, logging.INFO),
            format="%(name)s %(levelname)s %(message)s",
            stream=sys.stderr,
        )


def main(argv: list[str] | None = None) -> int:
    _setup_logging()
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse raises for usage errors and --help alike
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
