"""Tests for graph and blockade JSON I/O — parsing, validation, wrapped files."""

import json

import pytest

from src.blockades import Blockade
from src.errors import BlockadeError, GraphError
from src.graphs import (
    blockade_from_dict,
    blockade_to_dict,
    dump_json,
    graph_from_dict,
    graph_to_dict,
    load_blockade,
    load_graph,
    new_graph,
)


class TestGraphFromDict:
    def test_normalizes_edge_order(self):
        g = graph_from_dict({"n": 3, "edges": [[2, 0]]})
        assert g.edges() == [(0, 2)]

    def test_missing_n(self):
        with pytest.raises(GraphError):
            graph_from_dict({"edges": []})

    def test_duplicate_edge(self):
        with pytest.raises(GraphError, match="duplicate"):
            graph_from_dict({"n": 3, "edges": [[0, 1], [1, 0]]})

    def test_self_loop(self):
        with pytest.raises(GraphError, match="self-loop"):
            graph_from_dict({"n": 3, "edges": [[1, 1]]})

    def test_bad_edge_shape(self):
        with pytest.raises(GraphError):
            graph_from_dict({"n": 3, "edges": [[0, 1, 2]]})

    @pytest.mark.parametrize("edge", [[0.9, 2], [0, 1.0], [True, 2], ["0", 1]])
    def test_non_integer_vertex_rejected(self, edge):
        with pytest.raises(GraphError, match="not an integer"):
            graph_from_dict({"n": 3, "edges": [edge]})

    def test_to_dict(self):
        assert graph_to_dict(new_graph(3, [(1, 2)])) == {"n": 3, "edges": [[1, 2]]}


class TestBlockadeFromDict:
    def test_parses_blocks(self):
        b = blockade_from_dict({"blocks": [[0, 1], [2]]})
        assert b == Blockade.of([0, 1], [2])

    def test_rejects_vertices_outside_graph(self):
        with pytest.raises(BlockadeError, match="outside"):
            blockade_from_dict({"blocks": [[0, 5]]}, new_graph(3, []))

    def test_missing_blocks(self):
        with pytest.raises(BlockadeError):
            blockade_from_dict({"sets": []})

    @pytest.mark.parametrize("blocks", [[[1, 1.5]], [[0], [False]], [[2.0]]])
    def test_non_integer_vertex_rejected(self, blocks):
        with pytest.raises(BlockadeError, match="not an integer"):
            blockade_from_dict({"blocks": blocks})

    def test_block_must_be_a_list(self):
        with pytest.raises(BlockadeError, match="block 1"):
            blockade_from_dict({"blocks": [[0], 3]})

    def test_to_dict_sorted(self):
        assert blockade_to_dict(Blockade.of([3, 1], [0])) == {"blocks": [[1, 3], [0]]}


class TestFiles:
    def test_wrapped_instance_file(self, tmp_path):
        path = tmp_path / "inst.json"
        dump_json({"graph": {"n": 4, "edges": [[0, 1]]}, "blockade": {"blocks": [[0], [1, 2]]}},
                  path)
        g = load_graph(path)
        b = load_blockade(path, g)
        assert g.n == 4
        assert b.length == 2

    def test_invalid_json_reports_position(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"n": 3,\n "edges": [}')
        with pytest.raises(GraphError, match="line 2"):
            load_graph(path)

    def test_dump_is_sorted(self, tmp_path):
        path = tmp_path / "out" / "g.json"
        dump_json({"n": 2, "edges": []}, path)
        assert json.loads(path.read_text()) == {"edges": [], "n": 2}
        assert path.read_text().index('"edges"') < path.read_text().index('"n"')
