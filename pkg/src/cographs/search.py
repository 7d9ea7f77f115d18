"""Exhaustive searches: largest induced cograph and tau-criticality."""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Literal, Optional

from config.settings import get_settings
from src.errors import GraphError, SearchLimitError
from src.graphs import Graph, iter_bits, set_of
from src.numeric import at_least

from .cotree import is_cograph_mask

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TauParams:
    tau: float

    def __post_init__(self):
        if not 0 < self.tau < 1:
            raise ValueError(f"tau must lie in (0, 1), got {self.tau}")


@dataclass(frozen=True)
class TauVerdict:
    """Result of a tau-criticality check.

    ``witness`` is the too-big cograph, or the vertex set of the violating subgraph.
    ``boundary`` lists every size/threshold pair that fell inside the comparison guard.
    """

    status: Literal["critical", "too-big-cograph", "subgraph-violates"]
    witness: Optional[frozenset[int]] = None
    boundary: list[tuple[int, float]] = field(default_factory=list)

    @property
    def is_critical(self) -> bool:
        return self.status == "critical"

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "witness": sorted(self.witness) if self.witness is not None else None,
            "boundary": [list(b) for b in self.boundary],
        }


def _check_limit(what: str, n: int, limit: Optional[int], default: int) -> None:
    cap = default if limit is None else limit
    if n > cap:
        raise SearchLimitError(what, cap, n)


def largest_cograph_mask(g: Graph, mask: int) -> int:
    """Largest cograph inside g[mask]; ties go to the lexicographically smallest set.

    Include-first depth-first search over vertices in increasing order visits equal-size
    sets in lexicographic order, so the first maximum found is the answer. Cographs are
    closed under induced subgraphs, which justifies pruning at the first non-cograph.
    """
    order = list(iter_bits(mask))
    suffix = [0] * (len(order) + 1)
    for i in range(len(order) - 1, -1, -1):
        suffix[i] = suffix[i + 1] | (1 << order[i])
    best = [0, -1]

    def search(i: int, chosen: int, size: int) -> None:
        if size + suffix[i].bit_count() <= best[1]:
            return
        if i == len(order):
            best[0], best[1] = chosen, size
            return
        grown = chosen | (1 << order[i])
        if is_cograph_mask(g, grown):
            search(i + 1, grown, size + 1)
        search(i + 1, chosen, size)

    search(0, 0, 0)
    return best[0]


def largest_cograph(g: Graph, limit: Optional[int] = None) -> frozenset[int]:
    """Maximum-cardinality vertex set inducing a cograph."""
    if g.n == 0:
        raise GraphError("largest_cograph needs at least one vertex")
    _check_limit("largest_cograph", g.n, limit, get_settings().COGRAPH_LIMIT)
    return set_of(largest_cograph_mask(g, g.full_mask))


def is_tau_critical(g: Graph, p: TauParams, limit: Optional[int] = None) -> TauVerdict:
    """Exact tau-criticality test over every proper induced subgraph."""
    if g.n == 0:
        raise GraphError("is_tau_critical needs at least one vertex")
    _check_limit("is_tau_critical", g.n, limit, get_settings().TAU_LIMIT)
    boundary: list[tuple[int, float]] = []

    best = largest_cograph_mask(g, g.full_mask)
    verdict = at_least(best.bit_count(), g.n ** p.tau)
    if verdict.boundary:
        boundary.append((best.bit_count(), verdict.threshold))
    if verdict.holds:
        return TauVerdict("too-big-cograph", set_of(best), boundary)

    # Larger subgraphs first so a vertex-deleted counterexample is reported when one exists
    for size in range(g.n - 1, 0, -1):
        threshold = size ** p.tau
        for members in combinations(range(g.n), size):
            sub = 0
            for v in members:
                sub |= 1 << v
            # Any three vertices induce a cograph, and so does the part of `best` inside sub
            cheap = max(min(size, 3), (best & sub).bit_count())
            shortcut = at_least(cheap, threshold)
            if shortcut.holds and not shortcut.boundary:
                continue
            found = largest_cograph_mask(g, sub).bit_count()
            check = at_least(found, threshold)
            if check.boundary:
                boundary.append((found, threshold))
            if not check.holds:
                logger.debug("Subgraph %s has largest cograph %s < %s", members, found, threshold)
                return TauVerdict("subgraph-violates", frozenset(members), boundary)
    return TauVerdict("critical", None, boundary)
