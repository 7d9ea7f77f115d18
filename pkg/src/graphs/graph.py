"""Finite simple graphs stored as rows of integer bitmasks."""

from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from typing import Optional

from src.errors import GraphError

VertexSet = frozenset[int]


# ---------------------------------------------------------------------------
# Bitmask helpers
# ---------------------------------------------------------------------------

def mask_of(vertices: Iterable[int]) -> int:
    """Bitmask with one bit per vertex."""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def iter_bits(mask: int) -> Iterator[int]:
    """Yield set bit positions in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def set_of(mask: int) -> VertexSet:
    return frozenset(iter_bits(mask))


def lowest(mask: int) -> int:
    """Index of the lowest set bit; mask must be nonzero."""
    return (mask & -mask).bit_length() - 1


# ---------------------------------------------------------------------------
# Graph
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Graph:
    """Simple graph on vertices 0..n-1.

    ``rows[v]`` is the neighbourhood of ``v`` as a bitmask. ``labels`` records, for graphs
    produced by :func:`induced`, the host vertex each local vertex came from.
    """

    n: int
    rows: tuple[int, ...]
    labels: Optional[tuple[int, ...]] = field(default=None, compare=False)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def vertices(self) -> VertexSet:
        return frozenset(range(self.n))

    def has_edge(self, x: int, y: int) -> bool:
        return bool(self.rows[x] >> y & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        """Edges as sorted (u, v) pairs with u < v."""
        return [(u, v) for u in range(self.n) for v in iter_bits(self.rows[u] >> (u + 1) << (u + 1))]

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.rows) // 2

    def label_of(self, v: int) -> int:
        return self.labels[v] if self.labels is not None else v


def new_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from an edge list, symmetrizing it."""
    if n < 0:
        raise GraphError(f"vertex count must be non-negative, got {n}")
    rows = [0] * n
    for u, v in edges:
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n=n, rows=tuple(rows))


def complement(g: Graph) -> Graph:
    full = g.full_mask
    return Graph(
        n=g.n,
        rows=tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.rows)),
        labels=g.labels,
    )


def induced(g: Graph, x: Iterable[int]) -> Graph:
    """Subgraph induced on ``x``, relabelled 0..|x|-1 in increasing vertex order."""
    members = sorted(set(x))
    for v in members:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} not in graph on {g.n} vertices")
    position = {v: i for i, v in enumerate(members)}
    rows = []
    for v in members:
        row = 0
        for w in iter_bits(g.rows[v]):
            i = position.get(w)
            if i is not None:
                row |= 1 << i
        rows.append(row)
    return Graph(n=len(members), rows=tuple(rows), labels=tuple(g.label_of(v) for v in members))


def neighborhood(g: Graph, a: int, x: Iterable[int]) -> VertexSet:
    """E(a, x): members of x adjacent to a."""
    if not 0 <= a < g.n:
        raise GraphError(f"vertex {a} not in graph on {g.n} vertices")
    return set_of(g.rows[a] & mask_of(x))


def max_degree_in(g: Graph, x: Iterable[int]) -> tuple[int, int]:
    """Vertex of x with most neighbours inside x; lowest index wins ties."""
    return max_degree_in_mask(g, mask_of(x))


def max_degree_in_mask(g: Graph, mask: int) -> tuple[int, int]:
    if not mask:
        raise GraphError("max_degree_in needs a nonempty vertex set")
    best, best_count = -1, -1
    for v in iter_bits(mask):
        count = (g.rows[v] & mask).bit_count()
        if count > best_count:
            best, best_count = v, count
    return best, best_count


def connected_components(g: Graph, mask: int, in_complement: bool = False) -> list[int]:
    """Components of g[mask] (or of its complement) as bitmasks, ordered by lowest vertex."""
    components = []
    remaining = mask
    while remaining:
        start = remaining & -remaining
        component = start
        frontier = start
        while frontier:
            v = lowest(frontier)
            frontier ^= 1 << v
            row = g.rows[v]
            if in_complement:
                row = ~row & ~(1 << v)
            fresh = row & remaining & ~component
            component |= fresh
            frontier |= fresh
        components.append(component)
        remaining &= ~component
    return components


def is_anticomplete(g: Graph, a_mask: int, b_mask: int) -> bool:
    return all(not (g.rows[v] & b_mask) for v in iter_bits(a_mask))


def is_complete(g: Graph, a_mask: int, b_mask: int) -> bool:
    return all(g.rows[v] & b_mask == b_mask for v in iter_bits(a_mask))


# ---------------------------------------------------------------------------
# networkx bridge
# ---------------------------------------------------------------------------

def to_networkx(g: Graph):
    import networkx as nx

    graph = nx.Graph()
    graph.add_nodes_from(range(g.n))
    graph.add_edges_from(g.edges())
    return graph


def from_networkx(graph) -> Graph:
    """Graph from a networkx graph whose nodes are 0..n-1."""
    return new_graph(graph.number_of_nodes(), graph.edges())
