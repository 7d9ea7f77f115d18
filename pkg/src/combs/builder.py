"""Greedy layered comb construction and the comb-or-bound dichotomy."""

import logging
from collections.abc import Iterable

from src.errors import GraphError, InvariantError, PreconditionError
from src.graphs import Graph, iter_bits, mask_of, set_of
from src.numeric import at_most, ceil_guarded

from .models import BoundCertificate, Comb, CombLayer, CombLayers, comb_violations

logger = logging.getLogger(__name__)


def fact_constant(d: float) -> float:
    """3^(d+1) / (3/2 - (3/2)^d), finite for 0 < d < 1."""
    return 3 ** (d + 1) / (1.5 - 1.5 ** d)


def fact_bound(d: float, gamma: float, delta: int) -> float:
    if delta == 0:
        return 0.0
    return fact_constant(d) * gamma ** d * delta ** (1 - d)


# ---------------------------------------------------------------------------
# Layers
# ---------------------------------------------------------------------------

def build_layers_mask(g: Graph, c_mask: int, d_mask: int, delta: int) -> CombLayers:
    if c_mask & d_mask:
        raise GraphError("C and D must be disjoint")
    apex_candidates = list(iter_bits(c_mask))
    too_high = [a for a in apex_candidates if (g.rows[a] & d_mask).bit_count() > delta]
    if too_high:
        raise PreconditionError(
            [f"vertex {too_high[0]} has more than delta={delta} neighbours in D"],
            counterexample=too_high[0],
        )
    residual = d_mask
    layers = []
    s = 0
    while any(g.rows[a] & residual for a in apex_candidates):
        s += 1
        num, den = 2 ** s * delta, 3 ** s
        apexes, teeth = [], []
        covered = 0
        # One increasing pass is maximal: fresh neighbourhoods only shrink during a layer
        for a in apex_candidates:
            fresh = g.rows[a] & residual & ~covered
            size = fresh.bit_count()
            if size and size * den >= num:
                apexes.append(a)
                teeth.append(set_of(fresh))
                covered |= fresh
        residual &= ~covered
        layers.append(CombLayer(s=s, apexes=tuple(apexes), teeth=tuple(teeth)))
    logger.debug("Built %s layers over |C|=%s, |D|=%s", len(layers), c_mask.bit_count(),
                 d_mask.bit_count())
    return CombLayers(
        delta=delta,
        c_set=set_of(c_mask),
        d_set=set_of(d_mask),
        layers=tuple(layers),
        residual=set_of(residual),
    )


def build_layers(g: Graph, c: Iterable[int], d_set: Iterable[int], delta: int) -> CombLayers:
    """Layer s picks apexes in c with at least (2/3)^s * delta fresh neighbours in d_set."""
    return build_layers_mask(g, mask_of(c), mask_of(d_set), delta)


# ---------------------------------------------------------------------------
# Comb search
# ---------------------------------------------------------------------------

def _backward_greedy(g: Graph, order: list, k: int) -> list[tuple[int, int]]:
    """Walk apexes from the last one back, keeping those whose tooth survives."""
    admitted: list[tuple[int, int]] = []
    blocked = 0
    for _, _, apex, tooth in reversed(order):
        kept = mask_of(tooth) & ~blocked
        if kept.bit_count() >= k:
            admitted.append((apex, kept))
            blocked |= g.rows[apex]
    return admitted


def _direct_greedy(g: Graph, a_mask: int, b_mask: int, k: int, t: int) -> list[tuple[int, int]]:
    """Add apexes by decreasing degree into B while every tooth keeps k vertices."""
    order = sorted(iter_bits(a_mask), key=lambda a: (-(g.rows[a] & b_mask).bit_count(), a))
    chosen: list[tuple[int, int]] = []
    used = 0
    seen_by_apexes = 0
    for x in order:
        tooth = g.rows[x] & b_mask & ~used & ~seen_by_apexes
        if tooth.bit_count() < k:
            continue
        trimmed = [(a, tooth_a & ~g.rows[x]) for a, tooth_a in chosen]
        if any(tooth_a.bit_count() < k for _, tooth_a in trimmed):
            continue
        chosen = trimmed + [(x, tooth)]
        used = 0
        for _, tooth_a in chosen:
            used |= tooth_a
        seen_by_apexes |= g.rows[x]
        if len(chosen) >= t:
            break
    return chosen


def _trim(pairs: list[tuple[int, int]], t: int, k: int) -> Comb:
    trimmed = []
    for apex, tooth in pairs[:t]:
        members = sorted(iter_bits(tooth))[:k]
        trimmed.append((apex, frozenset(members)))
    return Comb(pairs=tuple(trimmed), k=k)


def required_tooth(gamma: float, d: float, t: int) -> int:
    """ceil(gamma * t^(-1/d)), at least one."""
    return max(1, ceil_guarded(gamma * t ** (-1.0 / d)))


def comb_or_bound(
    g: Graph,
    a_side: Iterable[int],
    b_side: Iterable[int],
    gamma: float,
    d: float,
) -> Comb | BoundCertificate:
    """Either a (t, gamma*t^(-1/d))-comb in (A, B) or a certificate that |B| is small."""
    if not 0 < d < 1:
        raise ValueError(f"d must lie in (0, 1), got {d}")
    a_mask, b_mask = mask_of(a_side), mask_of(b_side)
    if a_mask & b_mask:
        raise GraphError("A and B must be disjoint")
    isolated = [y for y in iter_bits(b_mask) if not g.rows[y] & a_mask]
    if isolated:
        raise PreconditionError(
            [f"vertex {isolated[0]} of B has no neighbour in A"], counterexample=isolated[0]
        )
    delta = max(((g.rows[a] & b_mask).bit_count() for a in iter_bits(a_mask)), default=0)

    if b_mask:
        layers = build_layers_mask(g, a_mask, b_mask, delta)
        orders = [layers.apex_order()]
        orders += [[e for e in orders[0] if e[0] == layer.s] for layer in layers.layers
                   if layer.k_s > 1]
        for t in range(1, a_mask.bit_count() + 1):
            k = required_tooth(gamma, d, t)
            if k > delta:
                continue
            attempts = [_backward_greedy(g, order, k) for order in orders]
            attempts.append(_direct_greedy(g, a_mask, b_mask, k, t))
            for pairs in attempts:
                if len(pairs) >= t:
                    comb = _trim(pairs, t, k)
                    problems = comb_violations(g, comb)
                    if problems:
                        raise InvariantError(f"constructed comb is invalid: {problems}")
                    logger.debug("Comb branch: t=%s, k=%s", t, k)
                    return comb

    b_size = b_mask.bit_count()
    bound = fact_bound(d, gamma, delta)
    check = at_most(b_size, bound)
    if not check.holds:
        raise InvariantError(
            f"no comb found and |B|={b_size} exceeds the bound {bound:.6g} (delta={delta})"
        )
    return BoundCertificate(
        b_size=b_size, delta=delta, gamma=gamma, d=d, bound=bound,
        holds=check.holds, boundary=check.boundary,
    )
