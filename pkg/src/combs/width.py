"""Exhaustive computation of W_G, the minimal comb-teeth width inside neighbourhood splits."""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Literal, Optional

from config.settings import get_settings
from src.errors import SearchLimitError
from src.graphs import Graph, complement, iter_bits

from .models import Comb

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WGWitness:
    """A comb realising the minimum: apexes in E_a, equicardinal teeth in the rest."""

    side: Literal["graph", "complement"]
    a: int
    s: int
    comb: Comb

    @property
    def width(self) -> int:
        return self.comb.width

    def to_dict(self) -> dict:
        return {"side": self.side, "a": self.a, "s": self.s, "comb": self.comb.to_dict()}


def _private_teeth(h: Graph, apexes: tuple[int, ...], d_mask: int) -> list[int]:
    out = []
    for i, x in enumerate(apexes):
        others = 0
        for j, y in enumerate(apexes):
            if j != i:
                others |= h.rows[y]
        out.append(h.rows[x] & d_mask & ~others)
    return out


def w_g_witness(g: Graph, limit: Optional[int] = None) -> Optional[WGWitness]:
    """Comb of least equicardinal width over every vertex split of g and its complement.

    The non-neighbourhood side excludes ``a`` itself. A comb with teeth at least k wide
    contracts to teeth of exactly k vertices, so for fixed s the minimum width is
    max(1, ceil(n / s^2)) whenever any suitable comb exists.
    """
    cap = get_settings().WG_LIMIT if limit is None else limit
    if g.n > cap:
        raise SearchLimitError("compute_W_G", cap, g.n)
    n = g.n
    best: Optional[WGWitness] = None
    for side, h in (("graph", g), ("complement", complement(g))):
        for a in range(n):
            c_mask = h.rows[a]
            d_mask = h.full_mask & ~c_mask & ~(1 << a)
            apex_pool = list(iter_bits(c_mask))
            for s in range(1, len(apex_pool) + 1):
                k = max(1, -(-n // (s * s)))
                if best is not None and k >= best.width:
                    continue
                if s * k > d_mask.bit_count():
                    continue
                for apexes in combinations(apex_pool, s):
                    teeth = _private_teeth(h, apexes, d_mask)
                    if all(t.bit_count() >= k for t in teeth):
                        pairs = tuple(
                            (x, frozenset(sorted(iter_bits(t))[:k])) for x, t in zip(apexes, teeth)
                        )
                        best = WGWitness(side=side, a=a, s=s, comb=Comb(pairs=pairs, k=k))
                        break
    return best


def compute_W_G(g: Graph, limit: Optional[int] = None) -> int:
    """W_G, or |G| when no comb of the required shape exists."""
    witness = w_g_witness(g, limit)
    value = g.n if witness is None else witness.width
    logger.debug("W_G = %s for graph on %s vertices", value, g.n)
    return value
