"""Guarded real-vs-integer comparisons and exact rational helpers."""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from config.settings import get_settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Comparison:
    """Outcome of comparing a measured value against a real threshold."""

    holds: bool
    boundary: bool
    value: float
    threshold: float

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "boundary": self.boundary,
            "value": self.value,
            "threshold": self.threshold,
        }


def _guard(threshold: float) -> float:
    return get_settings().BOUNDARY_GUARD * max(1.0, abs(threshold))


def _compare(value: float, threshold: float) -> tuple[float, float, bool]:
    """Coerce both sides and decide whether they fall inside the guard band.

    Integral pairs are compared exactly and are never boundary cases.
    """
    value = float(value)
    threshold = float(threshold)
    if value.is_integer() and threshold.is_integer():
        return value, threshold, False
    boundary = abs(value - threshold) <= _guard(threshold)
    if boundary:
        logger.debug("Boundary comparison: %s vs threshold %s", value, threshold)
    return value, threshold, boundary


def at_least(value: float, threshold: float) -> Comparison:
    """value >= threshold, flagging values within the guard band as boundary."""
    value, threshold, boundary = _compare(value, threshold)
    return Comparison(holds=value >= threshold or boundary, boundary=boundary,
                      value=value, threshold=threshold)


def at_most(value: float, threshold: float) -> Comparison:
    """value <= threshold, flagging values within the guard band as boundary."""
    value, threshold, boundary = _compare(value, threshold)
    return Comparison(holds=value <= threshold or boundary, boundary=boundary,
                      value=value, threshold=threshold)


def less_than(value: float, threshold: float) -> Comparison:
    """Strict value < threshold; boundary values do not hold."""
    value, threshold, boundary = _compare(value, threshold)
    return Comparison(holds=value < threshold and not boundary, boundary=boundary,
                      value=value, threshold=threshold)


def ceil_guarded(x: float) -> int:
    """Ceiling that does not round 3.0000000001 up to 4."""
    nearest = round(x)
    if abs(x - nearest) <= _guard(x):
        return int(nearest)
    return math.ceil(x)


def two_thirds_power(s: int) -> Fraction:
    """(2/3)^s as an exact rational."""
    return Fraction(2, 3) ** s
