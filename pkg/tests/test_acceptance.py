"""Acceptance suite: one test per shipped guarantee, one PASS line each.

Each criterion has a pure builder returning (report, timings): the report
holds only deterministic values (ints, strings, bools), the timings stay
outside it so reports from repeat runs can be byte-compared. Run with -s
to see the PASS lines.
"""

import functools
import itertools
import json
import random
import time
from fractions import Fraction

from ole.cycles import fvs_2approx
from ole.embeddings import distortion_of, repair_embedding, verify_kc
from ole.generators import (
    make_caterpillar,
    make_cycle,
    make_gnp,
    make_grid3xm,
    make_path,
    make_planted_outliers,
    make_spider,
)
from ole.graphs import Graph, apsp, delete_vertices, local_density
from ole.nets import build_rminor, check_minor_metric, restrict_after_deletion
from ole.oracles import exact_fvs, optimal_line_distortion, optimal_outlier_decision
from ole.pipeline import run_pipeline, validate_config
from ole.sparsify import sparsify
from ole.tree_embed import embed_tripod_free_tree
from ole.tripods import eliminate_tripods, enumerate_canonical_tripods

from bruteforce import (
    brute_has_cycle,
    brute_has_tripod,
    brute_min_hitting_set_size,
    brute_tripod_vertex_sets,
)


def rat(x):
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}" if f.denominator != 1 else str(f.numerator)


def complete_graph(n):
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def star_graph(q):
    return Graph.from_edges(q + 1, [(0, i) for i in range(1, q + 1)])


def random_tree(n, seed):
    rng = random.Random(seed)
    return Graph.from_edges(n, [(rng.randrange(v), v) for v in range(1, n)])


def random_forest(n, seed):
    rng = random.Random(seed)
    edges = [(rng.randrange(v), v) for v in range(1, n) if rng.random() < 0.8]
    return Graph.from_edges(n, edges)


# ---------------------------------------------------------------- criterion 1


@functools.lru_cache(maxsize=None)
def build_report_1():
    cases = []
    for n in range(1, 10):
        cases.append((f"P{n}", make_path(n)))
    for n in (4, 5, 6):
        cases.append((f"C{n}", make_cycle(n)))
    for r in (1, 2):
        cases.append((f"spider3x{r}", make_spider(3, r)))
    report, timings = {}, {}
    for name, g in cases:
        t0 = time.perf_counter()
        res = optimal_line_distortion(g)
        timings[name] = time.perf_counter() - t0
        report[name] = rat(res.value)
    return report, timings


def test_criterion_1():
    report, timings = build_report_1()
    try:
        for n in range(1, 10):
            assert report[f"P{n}"] == "1"
        assert report["C4"] == "3"
        for n in (4, 5, 6):
            assert Fraction(report[f"C{n}"]) >= n - 1
        for r in (1, 2):
            assert Fraction(report[f"spider3x{r}"]) >= 2 * r
        assert max(timings.values()) < 10.0
    except BaseException:
        print("FAIL criterion 1: oracle distortion fixtures")
        raise
    print(
        f"PASS criterion 1: oracle distortion fixtures exact on "
        f"{len(report)} cases, slowest {max(timings.values()):.2f}s"
    )


# ---------------------------------------------------------------- criterion 2


def density_suite():
    graphs = []
    for n in (20, 60, 100, 140, 180, 220, 260, 300):
        graphs.append((f"path{n}", make_path(n)))
        graphs.append((f"cycle{n}", make_cycle(n)))
    for i, spine in enumerate(range(10, 160, 10)):
        graphs.append((f"cat{spine}", make_caterpillar(spine, seed=i)))
    for i, n in enumerate((40, 80, 120, 160, 200, 240, 280, 298)):
        graphs.append((f"tree{n}", random_tree(n, seed=50 + i)))
    for m in (2, 5, 8, 11, 14, 17, 20, 23, 26, 30):
        graphs.append((f"grid3x{m}", make_grid3xm(m)))
    for legs, leg_len in (
        (3, 5), (3, 10), (3, 20), (3, 40), (4, 5), (4, 10),
        (4, 20), (5, 5), (5, 10), (6, 8), (7, 5), (8, 4),
    ):
        graphs.append((f"spider{legs}x{leg_len}", make_spider(legs, leg_len)))
    for q in (4, 8, 16, 32, 64, 128):
        graphs.append((f"star{q}", star_graph(q)))
    for n in (4, 6, 8, 10, 12):
        graphs.append((f"K{n}", complete_graph(n)))
    for i, n in enumerate((30, 45, 60, 75, 90, 105, 120)):
        graphs.append((f"gnp{n}a", make_gnp(n, 0.03, seed=i)))
        graphs.append((f"gnp{n}b", make_gnp(n, 0.08, seed=100 + i)))
        graphs.append((f"gnp{n}c", make_gnp(n, 0.05, seed=200 + i)))
    for i, (n, k) in enumerate(
        ((50, 1), (80, 2), (120, 3), (200, 3), (297, 3), (250, 2), (150, 1))
    ):
        graphs.append((f"planted{n}", make_planted_outliers(n, k, seed=i)[0]))
    return graphs


@functools.lru_cache(maxsize=None)
def build_report_2():
    graphs = density_suite()
    report, timings = {
        "graphs": len(graphs),
        "max_n": max(g.n for _, g in graphs),
        "cases": {},
    }, {}
    t0 = time.perf_counter()
    for name, g in graphs:
        delta_before = local_density(g).delta
        for c in (Fraction(1), Fraction(3, 2), Fraction(2)):
            res = sparsify(g, c)
            rest = delete_vertices(g, res.removed)
            after = local_density(rest).delta
            report["cases"][f"{name}@c={rat(c)}"] = {
                "delta_before": rat(delta_before),
                "removed": len(res.removed),
                "delta_after": rat(after),
                "clean": after <= c,
                "untouched_when_sparse": delta_before > c or not res.removed,
            }
    timings["total"] = time.perf_counter() - t0
    return report, timings


def test_criterion_2():
    report, timings = build_report_2()
    try:
        assert report["graphs"] == 100
        assert report["max_n"] <= 300
        assert len(report["cases"]) == 300
        for name, row in report["cases"].items():
            assert row["clean"], name
            assert row["untouched_when_sparse"], name
        assert timings["total"] < 60.0
    except BaseException:
        print("FAIL criterion 2: density reduction suite")
        raise
    print(
        f"PASS criterion 2: sparsify clean on {report['graphs']} graphs x 3 "
        f"thresholds in {timings['total']:.1f}s"
    )


# ---------------------------------------------------------------- criterion 3


def nets_suite():
    graphs = []
    for n in (10, 20, 30, 40, 50, 60, 70, 80):
        graphs.append((f"path{n}", make_path(n)))
        graphs.append((f"cycle{n}", make_cycle(n)))
    for i, spine in enumerate(range(5, 85, 2)):
        graphs.append((f"cat{spine}", make_caterpillar(spine, seed=i)))
    for m in (2, 4, 6, 8, 10, 13, 16, 20):
        graphs.append((f"grid3x{m}", make_grid3xm(m)))
    for legs, leg_len in ((3, 3), (3, 8), (4, 4), (5, 3), (6, 2), (3, 15)):
        graphs.append((f"spider{legs}x{leg_len}", make_spider(legs, leg_len)))
    for i, n in enumerate((12, 16, 20, 24, 28, 32, 36, 40)):
        graphs.append((f"gnp{n}", make_gnp(n, 0.12, seed=i)))
    for i, n in enumerate((14, 22, 30, 38, 44)):
        graphs.append((f"gnp{n}b", make_gnp(n, 0.07, seed=60 + i)))
    for q in (4, 9, 20):
        graphs.append((f"star{q}", star_graph(q)))
    for n in (5, 7, 9):
        graphs.append((f"K{n}", complete_graph(n)))
    for i, n in enumerate((20, 26, 32, 38, 44, 50, 56, 62, 68, 74, 80)):
        graphs.append((f"tree{n}", random_tree(n, seed=40 + i)))
    return graphs


@functools.lru_cache(maxsize=None)
def build_report_3():
    graphs = nets_suite()
    radii = (Fraction(1), Fraction(3, 2), Fraction(2), Fraction(5, 2))
    report, timings = {"graphs": len(graphs), "cases": {}}, {}
    t0 = time.perf_counter()
    for idx, (name, g) in enumerate(graphs):
        r = radii[idx % 4]
        ns = build_rminor(g, r)
        y = ns.net[::3]
        cells = ns.cells()
        gone = {v for c in y for v in cells[c]}
        ns2 = restrict_after_deletion(ns, y)

        keep = [v for v in g.vertices() if v not in gone]
        base_ok = [ns2.base.label(v) for v in ns2.base.vertices()] == keep

        relabel = {i: ns2.base.label(i) for i in ns2.base.vertices()}
        cluster_ok = {relabel[v]: relabel[c] for v, c in ns2.cluster_of.items()} == {
            v: ns.cluster_of[v] for v in keep
        }

        old_idx = ns.center_index()
        scratch = delete_vertices(ns.minor, [old_idx[c] for c in y])
        minor_ok = {
            tuple(sorted((relabel[ns2.minor.label(a)], relabel[ns2.minor.label(b)])))
            for a, b in ns2.minor.edges()
        } == {
            tuple(sorted((scratch.label(a), scratch.label(b))))
            for a, b in scratch.edges()
        }

        sandwich_full, _ = check_minor_metric(ns, ())
        sandwich_rest, _ = check_minor_metric(ns, y)
        report["cases"][f"{name}@r={rat(r)}"] = {
            "net": len(ns.net),
            "deleted_centers": len(y),
            "base_restricted": base_ok,
            "clusters_inherited": cluster_ok,
            "minor_restricted": minor_ok,
            "sandwich": sandwich_full and sandwich_rest,
        }
    timings["total"] = time.perf_counter() - t0
    return report, timings


def test_criterion_3():
    report, timings = build_report_3()
    try:
        assert report["graphs"] == 100
        for name, row in report["cases"].items():
            assert row["base_restricted"], name
            assert row["clusters_inherited"], name
            assert row["minor_restricted"], name
            assert row["sandwich"], name
        assert timings["total"] < 60.0
    except BaseException:
        print("FAIL criterion 3: net system restriction lemma")
        raise
    print(
        f"PASS criterion 3: restriction lemma and metric sandwich on "
        f"{report['graphs']} graphs in {timings['total']:.1f}s"
    )


# ---------------------------------------------------------------- criterion 4


def fvs_suite():
    graphs = []
    for n in range(3, 15):
        graphs.append((f"C{n}", make_cycle(n)))
    for n in (4, 5, 6):
        graphs.append((f"K{n}", complete_graph(n)))
    graphs.append(("theta", Graph.from_edges(5, [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)])))
    for m in (2, 3, 4):
        graphs.append((f"grid3x{m}", make_grid3xm(m)))
    for chord in (2, 3, 4):
        edges = [(i, (i + 1) % 8) for i in range(8)] + [(0, chord)]
        graphs.append((f"C8+{chord}", Graph.from_edges(8, edges)))
    edges = [(i, (i + 1) % 12) for i in range(12)] + [(0, 6), (3, 9)]
    graphs.append(("C12+spokes", Graph.from_edges(12, edges)))
    for i, (n, p) in enumerate(
        itertools.product((8, 10, 12, 14), (0.18, 0.28, 0.4))
    ):
        graphs.append((f"gnp{n}p{i}", make_gnp(n, p, seed=i)))
    return graphs


@functools.lru_cache(maxsize=None)
def build_report_4():
    graphs = fvs_suite()
    report, timings = {"graphs": len(graphs), "cases": {}}, {}
    t0 = time.perf_counter()
    for name, g in graphs:
        approx = fvs_2approx(g)
        acyclic = not brute_has_cycle(delete_vertices(g, approx))
        exact = exact_fvs(g)
        report["cases"][name] = {
            "n": g.n,
            "approx": len(approx),
            "exact": len(exact),
            "acyclic": acyclic,
        }
    timings["total"] = time.perf_counter() - t0
    return report, timings


def test_criterion_4():
    report, timings = build_report_4()
    try:
        for name, row in report["cases"].items():
            assert row["n"] <= 14
            assert row["acyclic"], name
            assert row["approx"] <= 2 * row["exact"], name
        assert timings["total"] < 120.0
    except BaseException:
        print("FAIL criterion 4: feedback vertex set approximation")
        raise
    print(
        f"PASS criterion 4: 2-approx FVS acyclic and within twice optimum on "
        f"{report['graphs']} graphs in {timings['total']:.1f}s"
    )


# ---------------------------------------------------------------- criterion 5


def forest_suite():
    forests = []
    for i, spine in enumerate(range(4, 24)):
        forests.append((f"cat{spine}", make_caterpillar(spine, seed=i)))
    for legs, leg_len in (
        (3, 2), (3, 4), (3, 6), (4, 3), (4, 5), (5, 2), (5, 4), (6, 3), (3, 9), (4, 8),
    ):
        forests.append((f"spider{legs}x{leg_len}", make_spider(legs, leg_len)))
    for i in range(5):
        base = make_spider(3, 3 + i)
        shift = base.n
        edges = list(base.edges()) + [(u + shift, v + shift) for u, v in base.edges()]
        forests.append((f"twin{i}", Graph.from_edges(2 * shift, edges)))
    for i, n in enumerate((12, 18, 24, 30, 36, 42, 48, 54, 60, 15, 21, 27, 33, 39, 45)):
        forests.append((f"forest{n}", random_forest(n, seed=i)))
    return forests


@functools.lru_cache(maxsize=None)
def build_report_5():
    forests = forest_suite()
    report, timings = {"forests": len(forests), "cases": {}}, {}
    t0 = time.perf_counter()
    for idx, (name, f) in enumerate(forests):
        r = (1, 2, 3)[idx % 3]
        canon = enumerate_canonical_tripods(f, Fraction(r))
        brute = brute_has_tripod(f, r)
        row = {
            "n": f.n,
            "r": r,
            "canonical": len(canon),
            "existence_agrees": bool(canon) == brute,
        }
        res = eliminate_tripods(f, Fraction(r), Fraction(2))
        if not res.rejected:
            rest = delete_vertices(f, res.hitting_set)
            row["survivor_free"] = not brute_has_tripod(rest, r)
        if f.n <= 18:
            sets = brute_tripod_vertex_sets(f, r)
            for k_prime in (0, 1):
                dec = eliminate_tripods(f, Fraction(r), Fraction(k_prime))
                if dec.rejected:
                    row[f"reject_k{k_prime}_sound"] = (
                        brute_min_hitting_set_size(sets, k_prime) is None
                    )
        report["cases"][name] = row
    timings["total"] = time.perf_counter() - t0
    return report, timings


def test_criterion_5():
    report, timings = build_report_5()
    try:
        assert report["forests"] == 50
        for name, row in report["cases"].items():
            assert row["n"] <= 60
            assert row["existence_agrees"], name
            for key, val in row.items():
                if key.startswith(("survivor_free", "reject_")):
                    assert val, f"{name}:{key}"
        assert timings["total"] < 180.0
    except BaseException:
        print("FAIL criterion 5: tripod enumeration and rejection")
        raise
    print(
        f"PASS criterion 5: canonical tripods match brute force on "
        f"{report['forests']} forests in {timings['total']:.1f}s"
    )


# ---------------------------------------------------------------- criterion 6


def tree_suite():
    rng = random.Random(77)
    trees = []
    for n in (2, 5, 9, 14, 20, 27, 33, 40):
        trees.append((f"path{n}", make_path(n), 1))
    for i, spine in enumerate(range(3, 23)):
        trees.append((f"cat{spine}", make_caterpillar(spine, seed=i), 2))
    for q in (3, 4, 5, 6):
        trees.append((f"star{q}", make_spider(q, 1), 2))
    for i in range(12):
        spine = 3 + i
        edges = [(v - 1, v) for v in range(1, spine)]
        nxt = spine
        for v in range(spine):
            depth = rng.randrange(3)
            prev = v
            for _ in range(depth):
                edges.append((prev, nxt))
                prev = nxt
                nxt += 1
        trees.append((f"legged{i}", Graph.from_edges(nxt, edges), 3))
    return trees


@functools.lru_cache(maxsize=None)
def build_report_6():
    trees = tree_suite()
    report, timings = {"trees": len(trees), "cases": {}, "c_tree_max": None}, {}
    worst = Fraction(0)
    t0 = time.perf_counter()
    for name, t, r in trees:
        emb = embed_tripod_free_tree(t, Fraction(r))
        d = apsp(t)
        verts = list(t.vertices())
        noncontractive = all(
            abs(emb.coords[u] - emb.coords[v]) >= d.d(u, v)
            for i, u in enumerate(verts)
            for v in verts[i + 1 :]
        )
        res = distortion_of(t, emb)
        max_deg = max((t.degree(v) for v in t.vertices()), default=1)
        ratio = res.distortion / (max(max_deg, 1) * r)
        worst = max(worst, ratio)
        report["cases"][name] = {
            "n": t.n,
            "r": r,
            "noncontractive": noncontractive,
            "distortion": rat(res.distortion),
            "bound": 16 * max(max_deg, 1) * r,
            "within_bound": res.distortion <= 16 * max(max_deg, 1) * r,
        }
    report["c_tree_max"] = rat(worst)
    timings["total"] = time.perf_counter() - t0
    return report, timings


def test_criterion_6():
    report, timings = build_report_6()
    try:
        for name, row in report["cases"].items():
            assert row["noncontractive"], name
            assert row["within_bound"], name
        assert Fraction(report["c_tree_max"]) <= 16
        assert timings["total"] < 60.0
    except BaseException:
        print("FAIL criterion 6: tree embedder bounds")
        raise
    print(
        f"PASS criterion 6: non-contractive embeddings within 16*deg*r on "
        f"{report['trees']} trees (C_tree={report['c_tree_max']}) "
        f"in {timings['total']:.1f}s"
    )


# ---------------------------------------------------------------- criterion 7


def certified_instances():
    """50 (name, graph, k, c) tuples the decision oracle must certify."""
    out = []
    for n in range(4, 10):
        g = make_cycle(n)
        for k, c in ((1, 1), (1, 2), (2, 1), (2, 2)):
            out.append((f"C{n}k{k}c{c}", g, k, Fraction(c)))
    for n in range(2, 10):
        out.append((f"P{n}", make_path(n), 0, Fraction(1)))
    for n in range(5, 10):
        edges = [(i, i + 1) for i in range(n - 1)] + [(0, 2)]
        out.append((f"P{n}+chord", Graph.from_edges(n, edges), 1, Fraction(1)))
    out.append(("claw_k0c3", make_spider(3, 1), 0, Fraction(3)))
    out.append(("claw_k1c1", make_spider(3, 1), 1, Fraction(1)))
    out.append(("claw_k2c1", make_spider(3, 1), 2, Fraction(1)))
    out.append(("spider32_k1c1", make_spider(3, 2), 1, Fraction(1)))
    out.append(("spider32_k1c2", make_spider(3, 2), 1, Fraction(2)))
    out.append(("spider32_k2c1", make_spider(3, 2), 2, Fraction(1)))
    out.append(("spider41_k1c3", make_spider(4, 1), 1, Fraction(3)))
    out.append(("spider41_k2c1", make_spider(4, 1), 2, Fraction(1)))
    theta = Graph.from_edges(5, [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)])
    out.append(("theta_k1c3", theta, 1, Fraction(3)))
    out.append(("theta_k2c1", theta, 2, Fraction(1)))
    out.append(("K4_k1c2", complete_graph(4), 1, Fraction(2)))
    out.append(("K4_k2c1", complete_graph(4), 2, Fraction(1)))
    out.append(("C9_k3c1", make_cycle(9), 3, Fraction(1)))
    return out


@functools.lru_cache(maxsize=None)
def build_report_7():
    instances = certified_instances()
    report, timings = {"instances": len(instances), "cases": {}}, {}
    t0 = time.perf_counter()
    for name, g, k, c in instances:
        ok, witness, oe = optimal_outlier_decision(g, k, c)
        row = {"certified": ok, "k": k, "c": rat(c)}
        if ok:
            domain = sorted(oe.embedding.coords)
            u_set = (domain[len(domain) // 2],) if domain else ()
            repaired = repair_embedding(g, u_set, oe, c)
            target = 4 * c**3 + c
            good, measured = verify_kc(
                g, repaired, len(repaired.outliers), target
            )
            row.update(
                {
                    "u": len(u_set),
                    "k_before": len(oe.outliers),
                    "k_after": len(repaired.outliers),
                    "growth_ok": len(repaired.outliers)
                    <= len(oe.outliers) + (2 * c + 1) * len(u_set),
                    "distortion_ok": good,
                    "distortion": rat(measured.distortion) if measured.finite else None,
                }
            )
        report["cases"][name] = row
    timings["total"] = time.perf_counter() - t0
    return report, timings


def test_criterion_7():
    report, timings = build_report_7()
    try:
        assert report["instances"] == 50
        for name, row in report["cases"].items():
            assert row["certified"], name
            assert row["growth_ok"], name
            assert row["distortion_ok"], name
        assert timings["total"] < 300.0
    except BaseException:
        print("FAIL criterion 7: repair after certified embedding")
        raise
    print(
        f"PASS criterion 7: repair bound and distortion hold on "
        f"{report['instances']} certified instances in {timings['total']:.1f}s"
    )


# ---------------------------------------------------------------- criterion 8


def planted_population():
    cases = []
    for i in range(20):
        n = 80 + 20 * i
        k = i % 4
        cases.append((f"planted{n}k{k}", n, k, i))
    return cases


@functools.lru_cache(maxsize=None)
def build_report_8():
    report, timings = {"cases": {}}, {}

    t0 = time.perf_counter()
    out = run_pipeline(make_path(200), validate_config({"c": 1, "k": 0}))
    timings["P200"] = time.perf_counter() - t0
    report["cases"]["P200"] = {
        "outcome": "accept" if out.accepted else "reject",
        "outliers": len(out.result.outliers) if out.result else None,
    }

    t0 = time.perf_counter()
    out = run_pipeline(make_cycle(200), validate_config({"c": 1, "k": 0}))
    timings["C200"] = time.perf_counter() - t0
    report["cases"]["C200"] = {
        "outcome": "accept" if out.accepted else "reject",
        "stage": out.stage,
        "inequality": out.certificate["inequality"] if out.certificate else None,
    }

    for name, n, k, seed in planted_population():
        g, planted = make_planted_outliers(n, k, seed=seed)
        t0 = time.perf_counter()
        out = run_pipeline(g, validate_config({"c": 2, "k": k}))
        timings[name] = time.perf_counter() - t0
        row = {"n": g.n, "k": k, "outcome": "accept" if out.accepted else "reject"}
        if out.accepted:
            budget = Fraction(out.stage_stats["density"]["budget"])
            dist = out.stage_stats["embedding"]["distortion"]
            measured = Fraction(dist["num"], dist["den"])
            ok, _ = verify_kc(g, out.result, len(out.result.outliers), measured)
            row.update(
                {
                    "outliers": len(out.result.outliers),
                    "within_budget": len(out.result.outliers) <= budget,
                    "verified": ok,
                    "distortion": rat(measured),
                }
            )
        report["cases"][name] = row
    return report, timings


def test_criterion_8():
    report, timings = build_report_8()
    try:
        assert report["cases"]["P200"] == {"outcome": "accept", "outliers": 0}
        assert report["cases"]["C200"]["outcome"] == "reject"
        assert report["cases"]["C200"]["stage"] == "cycles"
        planted = [v for k, v in report["cases"].items() if k.startswith("planted")]
        assert len(planted) == 20
        for row in planted:
            assert row["outcome"] == "accept", row
            assert row["within_budget"], row
            assert row["verified"], row
        assert max(timings.values()) < 60.0
    except BaseException:
        print("FAIL criterion 8: pipeline end-to-end")
        raise
    print(
        f"PASS criterion 8: P200 accepts, C200 rejects at cycles, 20 planted "
        f"instances verified, slowest run {max(timings.values()):.1f}s"
    )


# ---------------------------------------------------------------- criterion 9


def test_criterion_9():
    builders = [
        build_report_1,
        build_report_2,
        build_report_3,
        build_report_4,
        build_report_5,
        build_report_6,
        build_report_7,
        build_report_8,
    ]
    try:
        for builder in builders:
            first = json.dumps(builder()[0], sort_keys=True)
            fresh = json.dumps(builder.__wrapped__()[0], sort_keys=True)
            assert first == fresh, builder.__name__
    except BaseException:
        print("FAIL criterion 9: determinism")
        raise
    print("PASS criterion 9: two runs of every criterion report byte-identical")
