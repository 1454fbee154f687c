"""Canonical tripod enumeration, greedy hitting, and the rejection rule."""

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ole.errors import DomainError, NotATreeError
from ole.generators import make_cycle, make_path, make_spider
from ole.graphs import Graph, delete_vertices
from ole.tripods import (
    eliminate_tripods,
    enumerate_canonical_tripods,
    is_r_tripod,
    tree_has_r_tripod,
)

from bruteforce import brute_has_tripod, brute_min_hitting_set_size, brute_tripod_vertex_sets


def random_forests(max_n=14):
    @st.composite
    def build(draw):
        n = draw(st.integers(1, max_n))
        edges = []
        for v in range(1, n):
            if draw(st.booleans()):
                edges.append((draw(st.integers(0, v - 1)), v))
        return Graph.from_edges(n, edges)

    return build()


RADII = (Fraction(1), Fraction(2), Fraction(3))


class TestIsRTripod:
    def test_claw_center(self):
        g = make_spider(3, 1)
        tri = is_r_tripod(g, 1, 2, 3, Fraction(1))
        assert tri is not None
        assert tri.root == 0 and tri.leaves == (1, 2, 3)
        assert tri.paths == ((0, 1), (0, 2), (0, 3))

    def test_too_shallow(self):
        g = make_spider(3, 1)
        assert is_r_tripod(g, 1, 2, 3, Fraction(2)) is None

    def test_median_off_endpoint(self):
        # legs 2,2,2: median of the three tips is the hub
        g = make_spider(3, 2)
        tri = is_r_tripod(g, 2, 4, 6, Fraction(2))
        assert tri is not None and tri.root == 0

    def test_duplicate_endpoints_rejected(self):
        with pytest.raises(DomainError):
            is_r_tripod(make_path(5), 0, 0, 4, Fraction(1))

    def test_split_trees_rejected(self):
        g = Graph.from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
        with pytest.raises(DomainError):
            is_r_tripod(g, 0, 2, 5, Fraction(1))

    def test_cycle_rejected(self):
        with pytest.raises(NotATreeError):
            is_r_tripod(make_cycle(5), 0, 1, 2, Fraction(1))


class TestEnumeration:
    def test_spider_3x3_radius2(self):
        tris = enumerate_canonical_tripods(make_spider(3, 3), Fraction(2))
        assert len(tris) == 8
        assert all(t.root == 0 for t in tris)
        # one deep tip choice per leg
        assert {t.leaves for t in tris} == {
            (a, b, c) for a in (2, 3) for b in (5, 6) for c in (8, 9)
        }

    def test_claw_radius1(self):
        tris = enumerate_canonical_tripods(make_spider(3, 1), Fraction(1))
        assert len(tris) == 1 and tris[0].leaves == (1, 2, 3)

    def test_paths_have_none(self):
        assert enumerate_canonical_tripods(make_path(9), Fraction(1)) == ()

    @given(random_forests(), st.sampled_from(RADII))
    def test_existence_matches_bruteforce(self, f, r):
        tris = enumerate_canonical_tripods(f, r)
        assert bool(tris) == brute_has_tripod(f, int(r))

    @given(random_forests(max_n=11), st.sampled_from(RADII))
    def test_canonical_sets_appear_in_brute_enumeration(self, f, r):
        brute = brute_tripod_vertex_sets(f, int(r))
        for tri in enumerate_canonical_tripods(f, r):
            assert frozenset(tri.vertex_set()) in brute

    @given(random_forests(max_n=11), st.sampled_from(RADII), st.integers(0, 2**14))
    def test_no_canonical_survivor_iff_no_survivor(self, f, r, mask):
        x = [v for v in f.vertices() if (mask >> v) & 1]
        rest = delete_vertices(f, x)
        canon = enumerate_canonical_tripods(rest, r)
        assert bool(canon) == brute_has_tripod(rest, int(r))


class TestFastCheck:
    @given(random_forests(), st.sampled_from(RADII))
    def test_agrees_with_enumeration(self, t, r):
        assert tree_has_r_tripod(t, r) == bool(enumerate_canonical_tripods(t, r))


class TestEliminateTripods:
    def test_spider_hits_hub(self):
        res = eliminate_tripods(make_spider(3, 3), Fraction(2), Fraction(1))
        assert res.hitting_set == (0,)
        assert res.universe_size == 8
        assert not res.rejected

    def test_empty_universe_accepts(self):
        res = eliminate_tripods(make_path(20), Fraction(1), Fraction(0))
        assert res == type(res)((), 0, Fraction(0), False)

    def test_zero_budget_rejects_spider(self):
        res = eliminate_tripods(make_spider(3, 3), Fraction(2), Fraction(0))
        assert res.rejected and res.greedy_bound == 0

    def test_two_trees_need_two_hits(self):
        # two disjoint spiders, each holding one radius-2 tripod
        a = make_spider(3, 2)
        edges = list(a.edges()) + [(u + 7, v + 7) for u, v in a.edges()]
        f = Graph.from_edges(14, edges)
        res = eliminate_tripods(f, Fraction(2), Fraction(1))
        # ln(2)+1 < 2, so a single allowed deletion is certifiably short
        assert res.rejected
        assert brute_min_hitting_set_size(brute_tripod_vertex_sets(f, 2), 1) is None

    def test_bound_formula(self):
        res = eliminate_tripods(make_spider(3, 3), Fraction(2), Fraction(3))
        assert res.greedy_bound == 3 * (Fraction(math.log(8)) + 1)

    @given(random_forests(max_n=12), st.sampled_from(RADII), st.integers(0, 2))
    def test_decisions_cross_checked(self, f, r, k_prime):
        res = eliminate_tripods(f, r, Fraction(k_prime))
        if res.rejected:
            # rejection must be sound: no k_prime vertices hit everything
            sets = brute_tripod_vertex_sets(f, int(r))
            assert brute_min_hitting_set_size(sets, k_prime) is None
        else:
            rest = delete_vertices(f, res.hitting_set)
            assert not brute_has_tripod(rest, int(r))
