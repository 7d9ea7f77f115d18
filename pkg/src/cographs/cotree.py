"""Cotrees, cograph recognition and homogeneous-set extraction."""

from dataclasses import dataclass
from typing import Literal, Optional

from src.errors import GraphError
from src.graphs import Graph, connected_components, iter_bits, new_graph

NodeKind = Literal["leaf", "union", "join"]


@dataclass(frozen=True)
class Cotree:
    """Decomposition tree of a cograph: leaves are vertices, inner nodes union or join."""

    kind: NodeKind
    vertex: Optional[int] = None
    children: tuple["Cotree", ...] = ()

    @classmethod
    def leaf(cls, vertex: int) -> "Cotree":
        return cls(kind="leaf", vertex=vertex)

    @classmethod
    def union_of(cls, children: list["Cotree"]) -> "Cotree":
        return cls._combine("union", children)

    @classmethod
    def join_of(cls, children: list["Cotree"]) -> "Cotree":
        return cls._combine("join", children)

    @classmethod
    def _combine(cls, kind: NodeKind, children: list["Cotree"]) -> "Cotree":
        flat: list[Cotree] = []
        for child in children:
            if child.kind == kind:
                flat.extend(child.children)
            else:
                flat.append(child)
        if len(flat) == 1:
            return flat[0]
        if not flat:
            raise GraphError("a cotree node needs at least one child")
        return cls(kind=kind, children=tuple(flat))

    def leaves(self) -> list[int]:
        if self.kind == "leaf":
            return [self.vertex]
        out: list[int] = []
        for child in self.children:
            out.extend(child.leaves())
        return out

    @property
    def size(self) -> int:
        return len(self.leaves())

    def edges(self) -> set[tuple[int, int]]:
        """Edges of the evaluated graph as (u, v) pairs with u < v."""
        if self.kind == "leaf":
            return set()
        out: set[tuple[int, int]] = set()
        for child in self.children:
            out |= child.edges()
        if self.kind == "join":
            groups = [child.leaves() for child in self.children]
            for i, left in enumerate(groups):
                for right in groups[i + 1:]:
                    out.update((min(u, v), max(u, v)) for u in left for v in right)
        return out

    def evaluate(self, n: Optional[int] = None) -> Graph:
        """Graph the cotree denotes; vertices missing from the leaves stay isolated."""
        leaves = self.leaves()
        if len(set(leaves)) != len(leaves):
            raise GraphError("cotree leaves are not distinct")
        if n is None:
            n = max(leaves) + 1
        return new_graph(n, self.edges())

    def to_dict(self) -> dict:
        if self.kind == "leaf":
            return {"leaf": self.vertex}
        return {self.kind: [child.to_dict() for child in self.children]}

    def __str__(self) -> str:
        if self.kind == "leaf":
            return str(self.vertex)
        return f"{self.kind}({', '.join(str(c) for c in self.children)})"


# ---------------------------------------------------------------------------
# Recognition
# ---------------------------------------------------------------------------

def _decompose(g: Graph, mask: int) -> Optional[Cotree]:
    if mask & (mask - 1) == 0:
        return Cotree.leaf(mask.bit_length() - 1)
    parts = connected_components(g, mask)
    kind: NodeKind = "union"
    if len(parts) == 1:
        parts = connected_components(g, mask, in_complement=True)
        kind = "join"
        if len(parts) == 1:
            return None
    children = []
    for part in parts:
        child = _decompose(g, part)
        if child is None:
            return None
        children.append(child)
    return Cotree(kind=kind, children=tuple(children))


def is_cograph(g: Graph) -> Optional[Cotree]:
    """Cotree of g if g is a cograph, else None."""
    if g.n == 0:
        raise GraphError("the empty graph is not in the cograph family")
    return _decompose(g, g.full_mask)


def is_cograph_mask(g: Graph, mask: int) -> bool:
    """Whether g[mask] is a cograph; the empty set counts as one."""
    if mask & (mask - 1) == 0:
        return True
    parts = connected_components(g, mask)
    if len(parts) == 1:
        parts = connected_components(g, mask, in_complement=True)
        if len(parts) == 1:
            return False
    return all(is_cograph_mask(g, part) for part in parts)


# ---------------------------------------------------------------------------
# Homogeneous sets
# ---------------------------------------------------------------------------

def clique_and_anticlique(c: Cotree) -> tuple[frozenset[int], frozenset[int]]:
    """Largest clique and largest anticlique of the evaluated cograph.

    Their sizes multiply to at least the number of leaves.
    """
    if c.kind == "leaf":
        single = frozenset([c.vertex])
        return single, single
    results = [clique_and_anticlique(child) for child in c.children]
    if c.kind == "union":
        clique = max((r[0] for r in results), key=len)
        anticlique = frozenset().union(*(r[1] for r in results))
    else:
        clique = frozenset().union(*(r[0] for r in results))
        anticlique = max((r[1] for r in results), key=len)
    return clique, anticlique


def homogeneous_in_cograph(c: Cotree) -> frozenset[int]:
    """A clique or anticlique with at least ceil(sqrt(m)) vertices."""
    clique, anticlique = clique_and_anticlique(c)
    return clique if len(clique) >= len(anticlique) else anticlique


def is_homogeneous(g: Graph, x: frozenset[int]) -> bool:
    members = sorted(x)
    pairs = [(u, v) for i, u in enumerate(members) for v in members[i + 1:]]
    if not pairs:
        return True
    first = g.has_edge(*pairs[0])
    return all(g.has_edge(u, v) == first for u, v in pairs)
