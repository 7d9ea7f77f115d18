"""Pure blockades with cograph patterns from rainbow (2 choose 2)-free blockades."""

import logging

from src.blockades import (
    Blockade,
    coarsen,
    pattern,
    sub_blockade,
    truncate_equicardinal,
    width,
)
from src.cographs import Cotree, is_cograph
from src.errors import InvariantError, PreconditionError
from src.freeness import is_rainbow_k2_free
from src.graphs import Graph, iter_bits, mask_of, set_of

from .constants import d_s

logger = logging.getLogger(__name__)


def _anticomplete_part(g: Graph, pool: int, other: int) -> int:
    """Members of pool with no neighbour in other."""
    out = 0
    for x in iter_bits(pool):
        if not g.rows[x] & other:
            out |= 1 << x
    return out


def _split_base(g: Graph, b: Blockade) -> Blockade:
    b1, b2, b3, b4 = (mask_of(block) for block in b.blocks[:4])
    x = b1 | b2
    a = _anticomplete_part(g, x, b3)
    a_alt = _anticomplete_part(g, x, b4)
    if a | a_alt != x:
        raise InvariantError("a vertex sees two distinct blocks; input was not rainbow-free")
    if 2 * a.bit_count() >= x.bit_count():
        return Blockade((set_of(a), set_of(b3)))
    return Blockade((set_of(a_alt), set_of(b4)))


def _recurse(g: Graph, b: Blockade, s: int) -> Blockade:
    if s == 1:
        return _split_base(g, b)
    total = d_s(s)
    quarter = total // 4
    w = width(b)
    masks = [mask_of(block) for block in b.blocks[:total]]
    left = masks[:quarter]
    right = masks[quarter:2 * quarter]
    rest = masks[2 * quarter:]
    rest_mask = 0
    for m in rest:
        rest_mask |= m
    left_mask = 0
    for m in left:
        left_mask |= m
    right_mask = 0
    for m in right:
        right_mask |= m

    sees_left_not = _anticomplete_part(g, rest_mask, left_mask)
    sees_right_not = _anticomplete_part(g, rest_mask, right_mask)
    if sees_left_not | sees_right_not != rest_mask:
        raise InvariantError("a vertex sees two distinct blocks; input was not rainbow-free")
    if 2 * sees_left_not.bit_count() >= rest_mask.bit_count():
        side_blocks, partner = left, sees_left_not
    else:
        side_blocks, partner = right, sees_right_not

    count = d_s(s - 1)
    target = 7 * w
    halves = []
    for parts in (side_blocks, [partner & m for m in rest]):
        grouped = coarsen([set_of(p) for p in parts if p], count, target)
        if grouped is None:
            raise InvariantError(f"could not regroup into {count} blocks of {target} vertices")
        halves.append(_recurse(g, truncate_equicardinal(grouped), s - 1))
    logger.debug("Base case level %s: halves of length %s", s, [h.length for h in halves])
    return Blockade(halves[0].blocks + halves[1].blocks)


def pure_blockade_from_rainbow22(g: Graph, b: Blockade, s: int) -> tuple[Blockade, Cotree]:
    """Pure blockade of length 2^s and width >= W/D_s with a cograph pattern."""
    if s < 1:
        raise ValueError(f"s must be at least 1, got {s}")
    needed = d_s(s)
    if b.length < needed:
        raise PreconditionError([f"blockade length {b.length} is below D_{s} = {needed}"])
    violation = is_rainbow_k2_free(g, b, 2)
    if violation is not None:
        raise PreconditionError(
            [f"blockade is not rainbow (2 choose 2)-free: tuple {list(violation.tuple)}"],
            counterexample=violation,
        )
    w = width(b)
    working = truncate_equicardinal(sub_blockade(b, range(needed)))
    result = _recurse(g, working, s)

    if result.length != 2 ** s:
        raise InvariantError(f"result has length {result.length}, expected {2 ** s}")
    if width(result) * needed < w:
        raise InvariantError(f"result width {width(result)} is below {w}/{needed}")
    shape = pattern(g, result)
    if shape is None:
        raise InvariantError("result blockade is not pure")
    tree = is_cograph(shape)
    if tree is None:
        raise InvariantError("result pattern is not a cograph")
    return result, tree
