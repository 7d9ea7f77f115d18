"""Blockades, minors, pure pairs and patterns."""

from .blockade import (
    Blockade,
    PairKind,
    coarsen,
    contraction,
    is_equicardinal,
    is_minor_of,
    is_pure_pair,
    pattern,
    sub_blockade,
    truncate_equicardinal,
    width,
)

__all__ = [
    "Blockade",
    "PairKind",
    "coarsen",
    "contraction",
    "is_equicardinal",
    "is_minor_of",
    "is_pure_pair",
    "pattern",
    "sub_blockade",
    "truncate_equicardinal",
    "width",
]
