"""Exhaustive oracles for the (k choose 2)-property and its rainbow and strong variants."""

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Literal, Optional

import networkx as nx

from config.settings import get_settings
from src.blockades import Blockade
from src.errors import GraphError, SearchLimitError
from src.graphs import Graph, complement, iter_bits, lowest, mask_of

logger = logging.getLogger(__name__)

Pair = tuple[int, int]


class RainbowReading(str, Enum):
    """How a tuple must sit in a blockade to count as rainbow."""

    DISTINCT_BLOCKS = "distinct-blocks"
    MEMBERSHIP = "membership"


@dataclass(frozen=True)
class WitnessMap:
    """Witness vertex for every 0-based position pair (i, j), i < j."""

    k: int
    entries: dict[Pair, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {f"{i},{j}": b for (i, j), b in sorted(self.entries.items())}

    def certifies(self, g: Graph, tup: Sequence[int], pool: Iterable[int]) -> bool:
        """Re-check every witness against the adjacency of g."""
        pool = set(pool)
        for (i, j), b in self.entries.items():
            if b not in pool or not (g.has_edge(b, tup[i]) and g.has_edge(b, tup[j])):
                return False
            if any(g.has_edge(b, tup[m]) for m in range(self.k) if m not in (i, j)):
                return False
        return len(self.entries) == self.k * (self.k - 1) // 2


@dataclass(frozen=True)
class K2Violation:
    tuple: tuple[int, ...]
    witnesses: WitnessMap

    def to_dict(self) -> dict:
        return {"tuple": list(self.tuple), "witnesses": self.witnesses.to_dict()}


@dataclass(frozen=True)
class StrongVerdict:
    status: Literal["free", "violation-in-graph", "violation-in-complement"]
    violation: Optional[K2Violation] = None

    @property
    def is_free(self) -> bool:
        return self.status == "free"

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "violation": self.violation.to_dict() if self.violation else None,
        }


# ---------------------------------------------------------------------------
# Single tuples
# ---------------------------------------------------------------------------

def _candidate_masks(g: Graph, tup: Sequence[int], pool_mask: int) -> dict[Pair, int]:
    k = len(tup)
    rows = [g.rows[a] for a in tup]
    out = {}
    for i, j in combinations(range(k), 2):
        forbidden = 0
        for m in range(k):
            if m != i and m != j:
                forbidden |= rows[m]
        out[(i, j)] = pool_mask & rows[i] & rows[j] & ~forbidden
    return out


def _distinct_assignment(candidates: dict[Pair, int], tuple_mask: int) -> Optional[dict[Pair, int]]:
    """Pairwise distinct witnesses avoiding the tuple, as a bipartite matching."""
    graph = nx.Graph()
    pair_nodes = [("pair", p) for p in candidates]
    graph.add_nodes_from(pair_nodes)
    for pair, mask in candidates.items():
        for b in iter_bits(mask & ~tuple_mask):
            graph.add_edge(("pair", pair), ("witness", b))
    matching = nx.bipartite.hopcroft_karp_matching(graph, top_nodes=pair_nodes)
    if any(node not in matching for node in pair_nodes):
        return None
    return {pair: matching[("pair", pair)][1] for pair in candidates}


def find_k2_witnesses(
    g: Graph,
    tup: Sequence[int],
    x: Iterable[int],
    distinct: bool = False,
) -> Optional[WitnessMap]:
    """Witnesses b_ij in x for every pair of the tuple, or None.

    Lowest-index witnesses are chosen. With ``distinct`` the witnesses must be pairwise
    distinct and avoid the tuple itself.
    """
    k = len(tup)
    if k < 2:
        raise GraphError(f"tuples need k >= 2, got {k}")
    if len(set(tup)) != k:
        raise GraphError(f"tuple {list(tup)} has repeated vertices")
    candidates = _candidate_masks(g, tup, mask_of(x))
    if any(mask == 0 for mask in candidates.values()):
        return None
    if distinct:
        entries = _distinct_assignment(candidates, mask_of(tup))
        if entries is None:
            return None
        return WitnessMap(k, entries)
    return WitnessMap(k, {pair: lowest(mask) for pair, mask in candidates.items()})


def is_rainbow_tuple(
    b: Blockade,
    tup: Sequence[int],
    reading: RainbowReading = RainbowReading.DISTINCT_BLOCKS,
) -> bool:
    if len(set(tup)) != len(tup):
        return False
    positions = [b.block_of(v) for v in tup]
    if any(p is None for p in positions):
        return False
    if reading == RainbowReading.MEMBERSHIP:
        return True
    return len(set(positions)) == len(positions)


# ---------------------------------------------------------------------------
# Exhaustive searches
# ---------------------------------------------------------------------------

def _check_caps(k: int, pool_size: int, max_vertices: Optional[int], max_k: Optional[int]) -> None:
    settings = get_settings()
    max_k = settings.K2_MAX_K if max_k is None else max_k
    max_vertices = settings.K2_MAX_VERTICES if max_vertices is None else max_vertices
    if k < 2:
        raise GraphError(f"k must be at least 2, got {k}")
    if k > max_k:
        raise SearchLimitError("k2 tuple search (k)", max_k, k)
    # Pairs are checked in quadratic time, so only k >= 3 is capped by vertex count
    if k >= 3 and pool_size > max_vertices:
        raise SearchLimitError("k2 tuple search (vertices)", max_vertices, pool_size)


def is_rainbow_k2_free(
    g: Graph,
    b: Blockade,
    k: int,
    reading: RainbowReading = RainbowReading.DISTINCT_BLOCKS,
    distinct: bool = False,
    max_vertices: Optional[int] = None,
    max_k: Optional[int] = None,
) -> Optional[K2Violation]:
    """None if no rainbow k-tuple has the property over the blockade's union.

    Otherwise the lexicographically least violating tuple (sorted) with its witnesses.
    """
    pool = sorted(b.union)
    _check_caps(k, len(pool), max_vertices, max_k)
    pool_mask = mask_of(pool)
    position = {v: i for i, block in enumerate(b.blocks) for v in block}
    for tup in combinations(pool, k):
        if reading == RainbowReading.DISTINCT_BLOCKS:
            if len({position[v] for v in tup}) != k:
                continue
        if distinct:
            witnesses = find_k2_witnesses(g, tup, pool, distinct=True)
        else:
            candidates = _candidate_masks(g, tup, pool_mask)
            witnesses = None
            if all(candidates.values()):
                witnesses = WitnessMap(k, {p: lowest(m) for p, m in candidates.items()})
        if witnesses is not None:
            logger.debug("Rainbow violation %s", tup)
            return K2Violation(tuple(tup), witnesses)
    return None


def is_k2_free(
    g: Graph,
    k: int,
    distinct: bool = False,
    max_vertices: Optional[int] = None,
    max_k: Optional[int] = None,
) -> Optional[K2Violation]:
    """None if no k-tuple of distinct vertices has the property over V(G)."""
    _check_caps(k, g.n, max_vertices, max_k)
    everything = range(g.n)
    for tup in combinations(everything, k):
        witnesses = find_k2_witnesses(g, tup, everything, distinct=distinct)
        if witnesses is not None:
            return K2Violation(tuple(tup), witnesses)
    return None


def is_strongly_k2_free(
    g: Graph,
    k: int,
    distinct: bool = False,
    max_vertices: Optional[int] = None,
    max_k: Optional[int] = None,
) -> StrongVerdict:
    """Check g first, then its complement."""
    violation = is_k2_free(g, k, distinct, max_vertices, max_k)
    if violation is not None:
        return StrongVerdict("violation-in-graph", violation)
    violation = is_k2_free(complement(g), k, distinct, max_vertices, max_k)
    if violation is not None:
        return StrongVerdict("violation-in-complement", violation)
    return StrongVerdict("free")
