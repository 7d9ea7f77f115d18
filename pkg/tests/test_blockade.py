"""Tests for blockades — validation, minors, pure pairs, patterns, reshaping."""

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from src.blockades import (
    Blockade,
    coarsen,
    contraction,
    is_equicardinal,
    is_minor_of,
    is_pure_pair,
    pattern,
    sub_blockade,
    truncate_equicardinal,
    width,
)
from src.errors import BlockadeError
from src.graphs import new_graph


PROPERTY_SETTINGS = settings(max_examples=60, deadline=None,
                             suppress_health_check=[HealthCheck.too_slow])


@st.composite
def blockades(draw, max_length: int = 5, max_size: int = 4):
    """Consecutive blocks of random sizes over a shuffled vertex order."""
    sizes = draw(st.lists(st.integers(1, max_size), min_size=1, max_size=max_length))
    order = draw(st.permutations(range(sum(sizes))))
    blocks, start = [], 0
    for size in sizes:
        blocks.append(order[start:start + size])
        start += size
    return Blockade.of(*blocks)


@st.composite
def contractions(draw, b: Blockade):
    return contraction(b, [draw(st.sets(st.sampled_from(sorted(block)), min_size=1))
                           for block in b.blocks])


@st.composite
def minors(draw, b: Blockade):
    indices = draw(st.sets(st.integers(0, b.length - 1), min_size=1))
    return draw(contractions(sub_blockade(b, indices)))


class TestBlockade:
    def test_length_sizes_union(self):
        b = Blockade.of([0, 1], [2], [3, 4, 5])
        assert b.length == 3
        assert len(b) == 3
        assert b.sizes == [2, 1, 3]
        assert b.union == frozenset(range(6))
        assert width(b) == 1

    def test_empty_block_rejected(self):
        with pytest.raises(BlockadeError, match="empty"):
            Blockade.of([0], [])

    def test_overlap_rejected(self):
        with pytest.raises(BlockadeError, match="overlaps"):
            Blockade.of([0, 1], [1, 2])

    def test_block_of(self):
        b = Blockade.of([4], [0, 2])
        assert b.block_of(2) == 1
        assert b.block_of(3) is None

    def test_width_of_empty_blockade(self):
        with pytest.raises(BlockadeError):
            width(Blockade(()))

    def test_equicardinal(self):
        assert is_equicardinal(Blockade.of([0, 1], [2, 3]))
        assert not is_equicardinal(Blockade.of([0], [2, 3]))


class TestMinors:
    def test_sub_blockade_keeps_order(self):
        b = Blockade.of([0], [1], [2], [3])
        assert sub_blockade(b, [3, 1]) == Blockade.of([1], [3])

    def test_sub_blockade_bad_index(self):
        with pytest.raises(BlockadeError):
            sub_blockade(Blockade.of([0]), [1])
        with pytest.raises(BlockadeError):
            sub_blockade(Blockade.of([0]), [])

    def test_contraction(self):
        b = Blockade.of([0, 1], [2, 3])
        assert contraction(b, [[1], [2, 3]]) == Blockade.of([1], [2, 3])

    def test_contraction_must_shrink(self):
        b = Blockade.of([0, 1], [2, 3])
        with pytest.raises(BlockadeError, match="subset"):
            contraction(b, [[0, 2], [3]])
        with pytest.raises(BlockadeError, match="empty"):
            contraction(b, [[0], []])
        with pytest.raises(BlockadeError):
            contraction(b, [[0]])

    def test_is_minor_of(self):
        b = Blockade.of([0, 1], [2, 3], [4, 5])
        assert is_minor_of(Blockade.of([1], [4, 5]), b)
        # order reversed
        assert not is_minor_of(Blockade.of([4], [1]), b)
        # two blocks drawn from one
        assert not is_minor_of(Blockade.of([0], [1]), b)
        # straddles two blocks
        assert not is_minor_of(Blockade.of([1, 2]), b)
        assert not is_minor_of(Blockade.of([9]), b)


class TestPurePairs:
    def test_kinds(self):
        g = new_graph(4, [(0, 2), (0, 3), (1, 2), (1, 3)])
        assert is_pure_pair(g, [0, 1], [2, 3]) == "complete"
        assert is_pure_pair(g, [0], [1]) == "anticomplete"
        assert is_pure_pair(g, [0, 2], [1]) is None

    def test_sides_validated(self):
        g = new_graph(3, [])
        with pytest.raises(BlockadeError):
            is_pure_pair(g, [], [1])
        with pytest.raises(BlockadeError, match="overlap"):
            is_pure_pair(g, [0, 1], [1, 2])

    def test_pattern(self):
        # blocks {0,1} and {2,3} complete to each other, {4} isolated
        g = new_graph(5, [(0, 2), (0, 3), (1, 2), (1, 3)])
        pat = pattern(g, Blockade.of([0, 1], [2, 3], [4]))
        assert pat is not None
        assert pat.edges() == [(0, 1)]

    def test_pattern_of_mixed_pair(self):
        g = new_graph(4, [(0, 2)])
        assert pattern(g, Blockade.of([0, 1], [2, 3])) is None


class TestReshaping:
    def test_truncate_to_width(self):
        b = truncate_equicardinal(Blockade.of([5, 3, 4], [1, 0]))
        assert b == Blockade.of([3, 4], [0, 1])

    def test_truncate_too_wide(self):
        with pytest.raises(BlockadeError):
            truncate_equicardinal(Blockade.of([0, 1], [2]), 2)

    def test_coarsen_merges_consecutive_parts(self):
        parts = [[0], [1], [2, 3], [4], [5], [6]]
        b = coarsen(parts, 2, 2)
        assert b == Blockade.of([0, 1], [2, 3])

    def test_coarsen_runs_out(self):
        assert coarsen([[0], [1], [2]], 2, 2) is None


class TestMinorProperties:
    @PROPERTY_SETTINGS
    @given(blockades(), st.data())
    def test_sub_blockade_never_decreases_width(self, b, data):
        indices = data.draw(st.sets(st.integers(0, b.length - 1), min_size=1))
        assert width(sub_blockade(b, indices)) >= width(b)

    @PROPERTY_SETTINGS
    @given(blockades(), st.data())
    def test_contraction_never_increases_width(self, b, data):
        assert width(data.draw(contractions(b))) <= width(b)

    @PROPERTY_SETTINGS
    @given(blockades(), st.data())
    def test_minor_relation_is_reflexive_and_transitive(self, b, data):
        assert is_minor_of(b, b)
        middle = data.draw(minors(b))
        bottom = data.draw(minors(middle))
        assert is_minor_of(middle, b)
        assert is_minor_of(bottom, middle)
        assert is_minor_of(bottom, b)
