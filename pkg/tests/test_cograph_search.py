"""Tests for cograph search — largest induced cograph, search limits, tau-criticality."""

from itertools import combinations
from unittest.mock import patch

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from src.cographs import TauParams, is_cograph, is_tau_critical, largest_cograph
from src.errors import GraphError, SearchLimitError
from src.graphs import induced, new_graph

PROPERTY_SETTINGS = settings(max_examples=40, deadline=None,
                             suppress_health_check=[HealthCheck.too_slow])


@st.composite
def graphs(draw, max_n: int = 7):
    n = draw(st.integers(min_value=1, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return new_graph(n, chosen)


def path(n: int, offset: int = 0):
    return [(offset + i, offset + i + 1) for i in range(n - 1)]


def brute_force_largest(g) -> int:
    for size in range(g.n, 0, -1):
        for members in combinations(range(g.n), size):
            if is_cograph(induced(g, members)) is not None:
                return size
    return 0


class TestLargestCograph:
    def test_path_keeps_lexicographically_first_triple(self):
        assert largest_cograph(new_graph(4, path(4))) == frozenset({0, 1, 2})

    def test_cograph_is_its_own_answer(self):
        g = new_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
        assert largest_cograph(g) == frozenset(range(4))

    def test_limit_exceeded(self):
        with pytest.raises(SearchLimitError) as exc:
            largest_cograph(new_graph(4, path(4)), limit=3)
        assert exc.value.limit == 3
        assert exc.value.requested == 4

    def test_empty_graph_rejected(self):
        with pytest.raises(GraphError):
            largest_cograph(new_graph(0, []))

    @PROPERTY_SETTINGS
    @given(graphs())
    def test_size_matches_brute_force(self, g):
        best = largest_cograph(g)
        assert len(best) == brute_force_largest(g)
        assert is_cograph(induced(g, best)) is not None


class TestTauCritical:
    def test_tau_must_lie_in_open_interval(self):
        with pytest.raises(ValueError):
            TauParams(1.0)
        with pytest.raises(ValueError):
            TauParams(0.0)

    def test_too_big_cograph(self):
        verdict = is_tau_critical(new_graph(4, path(4)), TauParams(0.5))
        assert verdict.status == "too-big-cograph"
        assert verdict.witness == frozenset({0, 1, 2})

    def test_path_on_four_vertices_is_critical_near_one(self):
        verdict = is_tau_critical(new_graph(4, path(4)), TauParams(0.99))
        assert verdict.is_critical
        # single vertices meet 1^tau = 1 exactly, which is not a boundary case
        assert verdict.boundary == []

    def test_boundary_uses_configured_guard(self):
        with patch("src.numeric.get_settings") as guard_settings:
            guard_settings.return_value.BOUNDARY_GUARD = 0.01
            verdict = is_tau_critical(new_graph(4, path(4)), TauParams(0.99))
        assert verdict.is_critical
        # every pair sits just above 2^0.99
        assert len(verdict.boundary) == 6
        assert set(size for size, _ in verdict.boundary) == {2}
        assert verdict.boundary[0][1] == pytest.approx(2 ** 0.99)

    def test_vertex_deleted_subgraph_violates(self):
        g = new_graph(8, path(4) + path(4, offset=4))
        verdict = is_tau_critical(g, TauParams(0.99))
        assert verdict.status == "subgraph-violates"
        assert verdict.witness == frozenset(range(7))

    def test_limit_exceeded(self):
        with pytest.raises(SearchLimitError):
            is_tau_critical(new_graph(5, path(5)), TauParams(0.5), limit=4)

    def test_to_dict(self):
        verdict = is_tau_critical(new_graph(4, path(4)), TauParams(0.5))
        assert verdict.to_dict()["witness"] == [0, 1, 2]
