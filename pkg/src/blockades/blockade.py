"""Blockades and their structural operations."""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Literal, Optional

from src.errors import BlockadeError
from src.graphs import Graph, is_anticomplete, is_complete, mask_of, new_graph

PairKind = Literal["complete", "anticomplete"]


@dataclass(frozen=True)
class Blockade:
    """Ordered sequence of pairwise disjoint nonempty vertex sets."""

    blocks: tuple[frozenset[int], ...]

    def __post_init__(self):
        blocks = tuple(frozenset(b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        seen: set[int] = set()
        for i, block in enumerate(blocks):
            if not block:
                raise BlockadeError(f"block {i} is empty")
            overlap = seen & block
            if overlap:
                raise BlockadeError(f"block {i} overlaps earlier blocks at {sorted(overlap)}")
            seen |= block

    @classmethod
    def of(cls, *blocks: Iterable[int]) -> "Blockade":
        return cls(tuple(frozenset(b) for b in blocks))

    @property
    def length(self) -> int:
        return len(self.blocks)

    @property
    def union(self) -> frozenset[int]:
        return frozenset().union(*self.blocks)

    @property
    def union_mask(self) -> int:
        return mask_of(self.union)

    @property
    def sizes(self) -> list[int]:
        return [len(b) for b in self.blocks]

    def block_of(self, v: int) -> Optional[int]:
        """Position of the block holding v, or None."""
        for i, block in enumerate(self.blocks):
            if v in block:
                return i
        return None

    def __len__(self) -> int:
        return len(self.blocks)


def width(b: Blockade) -> int:
    if b.length == 0:
        raise BlockadeError("width of an empty blockade is undefined")
    return min(b.sizes)


def sub_blockade(b: Blockade, indices: Iterable[int]) -> Blockade:
    """Blocks at the given 0-based positions, kept in original order."""
    chosen = sorted(set(indices))
    if not chosen:
        raise BlockadeError("sub_blockade needs at least one index")
    for i in chosen:
        if not 0 <= i < b.length:
            raise BlockadeError(f"index {i} out of range for length {b.length}")
    return Blockade(tuple(b.blocks[i] for i in chosen))


def contraction(b: Blockade, shrunk: Sequence[Iterable[int]]) -> Blockade:
    """Replace each block by a nonempty subset of itself."""
    if len(shrunk) != b.length:
        raise BlockadeError(f"contraction needs {b.length} blocks, got {len(shrunk)}")
    blocks = []
    for i, (new, old) in enumerate(zip(shrunk, b.blocks)):
        new = frozenset(new)
        if not new:
            raise BlockadeError(f"contracted block {i} is empty")
        if not new <= old:
            raise BlockadeError(f"contracted block {i} is not a subset of the original")
        blocks.append(new)
    return Blockade(tuple(blocks))


def is_minor_of(candidate: Blockade, b: Blockade) -> bool:
    """Whether candidate is a contraction of a sub-blockade of b (order preserved)."""
    position = -1
    for block in candidate.blocks:
        image = b.block_of(next(iter(block)))
        if image is None or image <= position or not block <= b.blocks[image]:
            return False
        position = image
    return True


def is_equicardinal(b: Blockade) -> bool:
    return len(set(b.sizes)) <= 1


def is_pure_pair(g: Graph, a: Iterable[int], b: Iterable[int]) -> Optional[PairKind]:
    a, b = frozenset(a), frozenset(b)
    if not a or not b:
        raise BlockadeError("pure-pair sides must be nonempty")
    if a & b:
        raise BlockadeError(f"pure-pair sides overlap at {sorted(a & b)}")
    a_mask, b_mask = mask_of(a), mask_of(b)
    if is_complete(g, a_mask, b_mask):
        return "complete"
    if is_anticomplete(g, a_mask, b_mask):
        return "anticomplete"
    return None


def pattern(g: Graph, b: Blockade) -> Optional[Graph]:
    """Pattern graph on block positions, or None if some pair of blocks is mixed."""
    edges = []
    for i in range(b.length):
        for j in range(i + 1, b.length):
            kind = is_pure_pair(g, b.blocks[i], b.blocks[j])
            if kind is None:
                return None
            if kind == "complete":
                edges.append((i, j))
    return new_graph(b.length, edges)


# ---------------------------------------------------------------------------
# Reshaping helpers
# ---------------------------------------------------------------------------

def truncate_equicardinal(b: Blockade, size: Optional[int] = None) -> Blockade:
    """Contract every block to its ``size`` lowest vertices (default: the width)."""
    size = width(b) if size is None else size
    if size < 1 or size > width(b):
        raise BlockadeError(f"cannot truncate blocks of width {width(b)} to {size}")
    return Blockade(tuple(frozenset(sorted(block)[:size]) for block in b.blocks))


def coarsen(parts: Sequence[Iterable[int]], count: int, target: int) -> Optional[Blockade]:
    """Greedily merge consecutive parts into ``count`` blocks of at least ``target`` vertices.

    Returns None when the parts run out first. Leftover parts are dropped.
    """
    blocks: list[frozenset[int]] = []
    current: set[int] = set()
    for part in parts:
        if len(blocks) == count:
            break
        current |= set(part)
        if len(current) >= target:
            blocks.append(frozenset(current))
            current = set()
    if len(blocks) < count:
        return None
    return Blockade(tuple(blocks))
