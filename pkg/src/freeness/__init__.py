"""(k choose 2)-freeness oracles."""

from .k2 import (
    K2Violation,
    RainbowReading,
    StrongVerdict,
    WitnessMap,
    find_k2_witnesses,
    is_k2_free,
    is_rainbow_k2_free,
    is_rainbow_tuple,
    is_strongly_k2_free,
)

__all__ = [
    "K2Violation",
    "RainbowReading",
    "StrongVerdict",
    "WitnessMap",
    "find_k2_witnesses",
    "is_k2_free",
    "is_rainbow_k2_free",
    "is_rainbow_tuple",
    "is_strongly_k2_free",
]
