from hypothesis import given
from hypothesis import strategies as st

import pytest

from ole.errors import ConfigError
from ole.generators import (
    InstanceSpec,
    build_instance,
    make_caterpillar,
    make_grid3xm,
    make_planted_outliers,
    make_spider,
)
from ole.graphs import delete_vertices, is_connected, is_forest


class TestFamilies:
    def test_grid_shape(self):
        g = make_grid3xm(4)
        assert g.n == 12
        assert g.degree(0) == 2 and g.degree(4) == 4

    def test_spider_ids_consecutive(self):
        g = make_spider(3, 2)
        assert g.n == 7 and g.degree(0) == 3
        assert is_forest(g) and is_connected(g)

    def test_caterpillar_deterministic(self):
        a = make_caterpillar(12, seed=5)
        b = make_caterpillar(12, seed=5)
        assert tuple(a.edges()) == tuple(b.edges())
        assert is_forest(a)

    def test_bad_sizes_rejected(self):
        with pytest.raises(ConfigError):
            build_instance(InstanceSpec("cycle", n=2))
        with pytest.raises(ConfigError):
            build_instance(InstanceSpec("path", n=0))


class TestPlanted:
    @given(st.integers(4, 60), st.integers(0, 3), st.integers(0, 99))
    def test_deleting_planted_restores_path(self, n, k, seed):
        g, planted = make_planted_outliers(n, k, seed)
        assert g.n == n + k
        assert planted == tuple(range(n, n + k))
        rest = delete_vertices(g, planted)
        want = {(i, i + 1) for i in range(n - 1)}
        got = {
            tuple(sorted((rest.label(u), rest.label(v)))) for u, v in rest.edges()
        }
        assert got == want

    def test_truth_record(self):
        g, truth = build_instance(InstanceSpec("planted_outliers", n=30, k=2, seed=1))
        assert truth["planted"] == [30, 31]
        assert truth["base_family"] == "path"
        assert g.n == 32
