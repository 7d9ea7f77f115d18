"""Tests for combs — validation, layered construction, the comb-or-bound dichotomy, W_G."""

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from src.combs import (
    BoundCertificate,
    Comb,
    build_layers,
    comb_or_bound,
    comb_violations,
    compute_W_G,
    fact_bound,
    fact_constant,
    required_tooth,
    validate_comb,
    w_g_witness,
)
from src.errors import GraphError, PreconditionError, SearchLimitError
from src.graphs import complement, new_graph

PROPERTY_SETTINGS = settings(max_examples=40, deadline=None,
                             suppress_health_check=[HealthCheck.too_slow])

# Apexes 0, 1 with private teeth {2, 3} and {4}
TWO_TEETH = new_graph(5, [(0, 2), (0, 3), (1, 4)])


@st.composite
def covered_bipartite(draw):
    """(graph, A, B) where every vertex of B has a neighbour in A."""
    a = draw(st.integers(min_value=1, max_value=8))
    b = draw(st.integers(min_value=1, max_value=16))
    seed = draw(st.integers(min_value=0, max_value=2**31))
    p = draw(st.floats(min_value=0.05, max_value=0.6))
    rng = np.random.default_rng(seed)
    edges = set()
    for y in range(a, a + b):
        hits = [x for x in range(a) if rng.random() < p]
        if not hits:
            hits = [int(rng.integers(0, a))]
        edges.update((x, y) for x in hits)
    return new_graph(a + b, sorted(edges)), list(range(a)), list(range(a, a + b))


@st.composite
def small_graphs(draw, max_n: int = 6):
    n = draw(st.integers(min_value=1, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    return new_graph(n, draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else [])


class TestCombValidation:
    def test_valid_comb(self):
        comb = Comb(pairs=((0, frozenset({2, 3})), (1, frozenset({4}))), k=1)
        assert validate_comb(TWO_TEETH, comb)
        assert comb.t == 2
        assert comb.width == 1
        assert comb.teeth_blockade().sizes == [2, 1]

    def test_apex_seeing_another_tooth(self):
        g = new_graph(5, [(0, 2), (0, 3), (1, 4), (0, 4)])
        comb = Comb(pairs=((0, frozenset({2, 3})), (1, frozenset({4}))), k=1)
        assert any("neighbour in tooth 1" in p for p in comb_violations(g, comb))

    def test_tooth_too_small(self):
        comb = Comb(pairs=((0, frozenset({2, 3})), (1, frozenset({4}))), k=2)
        assert comb_violations(TWO_TEETH, comb) == ["tooth 1 has 1 < 2 vertices"]

    def test_apex_not_complete_to_tooth(self):
        comb = Comb(pairs=((0, frozenset({2, 4})),), k=1)
        assert "apex 0 is not complete to its tooth" in comb_violations(TWO_TEETH, comb)

    def test_to_dict(self):
        comb = Comb(pairs=((0, frozenset({3, 2})),), k=2)
        assert comb.to_dict() == {"t": 1, "k": 2, "pairs": [{"apex": 0, "tooth": [2, 3]}]}


class TestLayers:
    def test_single_layer(self):
        g = new_graph(4, [(0, 1), (0, 2), (0, 3)])
        layers = build_layers(g, [0], [1, 2, 3], 3)
        assert len(layers.layers) == 1
        assert layers.layers[0].apexes == (0,)
        assert layers.residual == frozenset()
        assert layers.violations(g) == []

    def test_empty_layers_are_kept(self):
        # Apex 1 only qualifies once the threshold drops to (2/3)^3 * 3 < 1
        g = new_graph(6, [(0, 2), (0, 3), (0, 4), (1, 4), (1, 5)])
        layers = build_layers(g, [0, 1], [2, 3, 4, 5], 3)
        assert [layer.s for layer in layers.layers] == [1, 2, 3]
        assert [layer.apexes for layer in layers.layers] == [(0,), (), (1,)]
        assert layers.layers[2].teeth == (frozenset({5}),)
        assert layers.covered == frozenset({2, 3, 4, 5})
        assert layers.violations(g) == []

    def test_apex_order_stops_at_layer(self):
        g = new_graph(6, [(0, 2), (0, 3), (0, 4), (1, 4), (1, 5)])
        layers = build_layers(g, [0, 1], [2, 3, 4, 5], 3)
        assert [entry[2] for entry in layers.apex_order(up_to=2)] == [0]

    def test_delta_too_small(self):
        g = new_graph(4, [(0, 1), (0, 2), (0, 3)])
        with pytest.raises(PreconditionError) as exc:
            build_layers(g, [0], [1, 2, 3], 2)
        assert exc.value.counterexample == 0

    def test_overlapping_sides(self):
        with pytest.raises(GraphError):
            build_layers(TWO_TEETH, [0, 2], [2, 3], 2)

    @PROPERTY_SETTINGS
    @given(covered_bipartite())
    def test_layer_observations_hold(self, instance):
        g, a_side, b_side = instance
        delta = max(len([y for y in b_side if g.has_edge(x, y)]) for x in a_side)
        layers = build_layers(g, a_side, b_side, delta)
        assert layers.violations(g) == []
        assert layers.residual == frozenset()


class TestFactBound:
    def test_constant(self):
        assert fact_constant(0.5) == pytest.approx(3 ** 1.5 / (1.5 - 1.5 ** 0.5))

    def test_zero_delta(self):
        assert fact_bound(0.5, 4.0, 0) == 0.0

    def test_required_tooth(self):
        assert required_tooth(2.0, 0.5, 2) == 1
        assert required_tooth(8.0, 0.5, 2) == 2
        assert required_tooth(0.1, 0.5, 5) == 1


class TestCombOrBound:
    def test_induced_matching_gives_comb(self):
        g = new_graph(6, [(0, 3), (1, 4), (2, 5)])
        result = comb_or_bound(g, [0, 1, 2], [3, 4, 5], 1.0, 0.5)
        assert isinstance(result, Comb)
        assert validate_comb(g, result)

    def test_bound_branch(self):
        g = new_graph(2, [(0, 1)])
        result = comb_or_bound(g, [0], [1], 100.0, 0.5)
        assert isinstance(result, BoundCertificate)
        assert result.holds
        assert result.bound == pytest.approx(fact_bound(0.5, 100.0, 1))

    def test_uncovered_vertex_in_b(self):
        g = new_graph(3, [(0, 1)])
        with pytest.raises(PreconditionError):
            comb_or_bound(g, [0], [1, 2], 1.0, 0.5)

    def test_d_out_of_range(self):
        with pytest.raises(ValueError):
            comb_or_bound(TWO_TEETH, [0], [2, 3], 1.0, 1.0)

    @PROPERTY_SETTINGS
    @given(covered_bipartite(), st.floats(min_value=1.0, max_value=8.0),
           st.sampled_from([0.25, 0.5, 0.75]))
    def test_one_branch_always_holds(self, instance, gamma, d):
        g, a_side, b_side = instance
        result = comb_or_bound(g, a_side, b_side, gamma, d)
        if isinstance(result, Comb):
            assert validate_comb(g, result)
            assert set(result.apexes) <= set(a_side)
            assert result.width >= required_tooth(gamma, d, result.t)
        else:
            assert result.holds


class TestWidth:
    def test_edgeless_graph_has_no_comb(self):
        assert w_g_witness(new_graph(4, [])) is None
        assert compute_W_G(new_graph(4, [])) == 4

    def test_three_apexes_with_private_teeth(self):
        g = new_graph(7, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)])
        witness = w_g_witness(g)
        assert witness is not None
        assert (witness.side, witness.a, witness.s, witness.width) == ("graph", 0, 3, 1)
        assert validate_comb(g, witness.comb)
        assert compute_W_G(g) == 1

    def test_limit(self):
        with pytest.raises(SearchLimitError):
            compute_W_G(new_graph(13, []))

    @PROPERTY_SETTINGS
    @given(small_graphs())
    def test_same_for_the_complement(self, g):
        assert compute_W_G(g) == compute_W_G(complement(g))
