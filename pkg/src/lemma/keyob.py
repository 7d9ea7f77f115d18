"""Reduction from a comb inside a rainbow-free blockade to a smaller rainbow-free minor."""

import logging
from typing import Any, Optional

from src.blockades import Blockade, is_minor_of
from src.combs import Comb, comb_violations
from src.errors import BlockadeError, InvariantError, PreconditionError
from src.freeness import RainbowReading, is_rainbow_k2_free
from src.graphs import Graph

logger = logging.getLogger(__name__)


def find_singleton_comb(g: Graph, b: Blockade, a: int) -> Optional[Comb]:
    """Greedy induced matching from E_a into the non-neighbourhood of a, one tooth per block."""
    home = b.block_of(a)
    members = sorted(b.union)
    apex_pool = [x for x in members if g.has_edge(a, x)]
    tooth_pool = [y for y in members
                  if y != a and not g.has_edge(a, y) and b.block_of(y) != home]
    pairs: list[tuple[int, int]] = []
    used: set[int] = set()
    for x in apex_pool:
        for y in tooth_pool:
            block = b.block_of(y)
            if block in used or not g.has_edge(x, y):
                continue
            if any(g.has_edge(x, y2) or g.has_edge(x2, y) for x2, y2 in pairs):
                continue
            pairs.append((x, y))
            used.add(block)
            break
    if not pairs:
        return None
    pairs.sort(key=lambda pair: b.block_of(pair[1]))
    return Comb(pairs=tuple((x, frozenset([y])) for x, y in pairs), k=1)


def best_singleton_comb(g: Graph, b: Blockade) -> Optional[tuple[int, Comb]]:
    """The base vertex whose singleton comb has the most teeth; ties go to the lowest vertex."""
    best: Optional[tuple[int, Comb]] = None
    for a in sorted(b.union):
        comb = find_singleton_comb(g, b, a)
        if comb is not None and (best is None or comb.t > best[1].t):
            best = (a, comb)
    return best


def keyob_preconditions(
    g: Graph,
    a_blockade: Blockade,
    a: int,
    comb: Comb,
) -> list[str]:
    """Structural preconditions that do not need the exhaustive freeness oracle."""
    reasons = []
    home = a_blockade.block_of(a)
    if home is None:
        return [f"vertex {a} is not in the blockade"]
    union = a_blockade.union
    for apex in comb.apexes:
        if apex not in union or not g.has_edge(a, apex):
            reasons.append(f"apex {apex} is not in E_a restricted to the blockade")
    for j, tooth in enumerate(comb.teeth):
        if not tooth <= union or a in tooth or any(g.has_edge(a, y) for y in tooth):
            reasons.append(f"tooth {j} is not inside the non-neighbourhood of {a}")
        if tooth & a_blockade.blocks[home]:
            reasons.append(f"tooth {j} meets block {home}, which holds {a}")
    problems = comb_violations(g, comb)
    if problems:
        reasons.append(f"comb is invalid: {problems[0]}")
    try:
        teeth = comb.teeth_blockade()
    except BlockadeError as e:
        reasons.append(f"teeth do not form a blockade: {e}")
    else:
        if not is_minor_of(teeth, a_blockade):
            reasons.append("teeth blockade is not a minor of the blockade")
    return reasons


def comb_to_rainbow_minor(
    g: Graph,
    a_blockade: Blockade,
    k: int,
    a: int,
    comb: Comb,
    check_source: bool = True,
    reading: RainbowReading = RainbowReading.DISTINCT_BLOCKS,
) -> Blockade:
    """Teeth blockade of the comb, rainbow (k-1 choose 2)-free when the blockade is (k choose 2)-free."""
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    reasons = keyob_preconditions(g, a_blockade, a, comb)
    counterexample: Optional[Any] = None
    if check_source:
        violation = is_rainbow_k2_free(g, a_blockade, k, reading=reading)
        if violation is not None:
            reasons.append(f"blockade is not rainbow ({k} choose 2)-free")
            counterexample = violation
    if reasons:
        raise PreconditionError(reasons, counterexample)

    result = comb.teeth_blockade()
    # (1 choose 2)-freeness is vacuous
    if k - 1 >= 2:
        violation = is_rainbow_k2_free(g, result, k - 1, reading=reading)
        if violation is not None:
            raise InvariantError(
                f"teeth blockade has a rainbow ({k - 1} choose 2) tuple {list(violation.tuple)}"
            )
    return result
