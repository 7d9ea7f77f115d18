"""JSON loading and dumping for graphs and blockades."""

import json
import logging
from pathlib import Path
from typing import Any

from src.errors import BlockadeError, GraphError

from .graph import Graph, new_graph

logger = logging.getLogger(__name__)


def _vertex(value: Any, error: type[Exception], where: str) -> int:
    """Accept only true integers; floats and booleans are rejected rather than truncated."""
    if not isinstance(value, int) or isinstance(value, bool):
        raise error(f"{where}: vertex {value!r} is not an integer")
    return value


def graph_from_dict(data: dict[str, Any]) -> Graph:
    """Parse ``{"n": int, "edges": [[u, v], ...]}``; duplicates and self-loops are rejected."""
    if not isinstance(data, dict) or "n" not in data:
        raise GraphError("graph JSON must be an object with an 'n' field")
    n = data["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise GraphError(f"'n' must be an integer, got {n!r}")
    seen: set[tuple[int, int]] = set()
    edges = []
    for raw in data.get("edges", []):
        if not isinstance(raw, (list, tuple)) or len(raw) != 2:
            raise GraphError(f"edge {raw!r} is not a pair")
        u, v = (_vertex(x, GraphError, f"edge {raw!r}") for x in raw)
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphError(f"duplicate edge {list(key)}")
        seen.add(key)
        edges.append(key)
    return new_graph(n, edges)


def graph_to_dict(g: Graph) -> dict[str, Any]:
    return {"n": g.n, "edges": [[u, v] for u, v in g.edges()]}


def blockade_from_dict(data: dict[str, Any], g: Graph | None = None):
    """Parse ``{"blocks": [[v, ...], ...]}``, validating against ``g`` when given."""
    from src.blockades import Blockade

    if not isinstance(data, dict) or "blocks" not in data:
        raise BlockadeError("blockade JSON must be an object with a 'blocks' field")
    blocks = []
    for i, block in enumerate(data["blocks"]):
        if not isinstance(block, (list, tuple)):
            raise BlockadeError(f"block {i} is not a list of vertices")
        blocks.append(frozenset(_vertex(v, BlockadeError, f"block {i}") for v in block))
    if g is not None:
        for i, block in enumerate(blocks):
            bad = sorted(v for v in block if not 0 <= v < g.n)
            if bad:
                raise BlockadeError(f"block {i} references vertices {bad} outside the graph")
    return Blockade(tuple(blocks))


def blockade_to_dict(b) -> dict[str, Any]:
    return {"blocks": [sorted(block) for block in b.blocks]}


def _read_json(path: str | Path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise GraphError(f"{path}: invalid JSON at line {e.lineno} column {e.colno}") from e


def load_graph(path: str | Path) -> Graph:
    data = _read_json(path)
    # Files written by `gen` wrap the graph together with an optional blockade
    if isinstance(data, dict) and "graph" in data:
        data = data["graph"]
    g = graph_from_dict(data)
    logger.debug("Loaded graph with %s vertices and %s edges from %s", g.n, g.edge_count, path)
    return g


def load_blockade(path: str | Path, g: Graph | None = None):
    data = _read_json(path)
    if isinstance(data, dict) and "blockade" in data:
        data = data["blockade"]
    return blockade_from_dict(data, g)


def dump_json(data: Any, path: str | Path) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        json.dump(data, fh, indent=2, sort_keys=True, default=str)
        fh.write("\n")
