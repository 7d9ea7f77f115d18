"""Trace records produced by the comb-extraction procedure."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional

from src.blockades import Blockade
from src.combs import Comb


class Outcome(str, Enum):
    COMB = "comb"
    CASE_I = "contradiction-case-i"
    CASE_II = "contradiction-case-ii"
    BUDGET_EXHAUSTED = "budget-exhausted"


@dataclass(frozen=True)
class RelaxFactors:
    """Multipliers applied to the case threshold, tooth-width floor and length target."""

    delta: float = 1.0
    width: float = 1.0
    length: float = 1.0

    def __post_init__(self):
        for name, value in self.to_dict().items():
            if not value > 0:
                raise ValueError(f"relax factor {name} must be positive, got {value}")

    def to_dict(self) -> dict:
        return {"delta": self.delta, "width": self.width, "length": self.length}


@dataclass(frozen=True)
class BoundCheck:
    """One inequality of the proof evaluated on an instance.

    ``strict_bound`` uses |G|/t^d; ``relaxed_bound`` uses the run's scale and factors.
    A bound of None means the inequality has no meaning at that scale.
    """

    name: str
    measured: Optional[float]
    strict_bound: Optional[float]
    relaxed_bound: Optional[float]
    strict_holds: Optional[bool]
    relaxed_holds: Optional[bool]
    boundary: bool = False

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "measured": self.measured,
            "strict_bound": self.strict_bound,
            "relaxed_bound": self.relaxed_bound,
            "strict_holds": self.strict_holds,
            "relaxed_holds": self.relaxed_holds,
            "boundary": self.boundary,
        }


@dataclass
class TraceStep:
    u: int
    apex: int
    delta: int
    r_size: int
    case: str
    neighbourhood: frozenset[int]
    removed: frozenset[int]
    next_r_size: int
    layer_count: int = 0
    l: Optional[int] = None
    i_sizes: list[int] = field(default_factory=list)
    s1_count: int = 0
    s2_count: int = 0
    checks: list[BoundCheck] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "u": self.u,
            "apex": self.apex,
            "delta": self.delta,
            "r_size": self.r_size,
            "case": self.case,
            "neighbourhood_size": len(self.neighbourhood),
            "removed_size": len(self.removed),
            "next_r_size": self.next_r_size,
            "layer_count": self.layer_count,
            "l": self.l,
            "i_sizes": self.i_sizes,
            "s1_count": self.s1_count,
            "s2_count": self.s2_count,
            "checks": [c.to_dict() for c in self.checks],
        }


@dataclass(frozen=True)
class CaseICertificate:
    """Anticomplete blocks E(a_u, R_u) and the cograph-size chain built on them."""

    blocks: Blockade
    threshold: float
    cograph_lower_bound: float
    g_tau: float
    contradiction: bool
    witness_cograph: Optional[frozenset[int]] = None

    def to_dict(self) -> dict:
        return {
            "blocks": [sorted(b) for b in self.blocks.blocks],
            "threshold": self.threshold,
            "cograph_lower_bound": self.cograph_lower_bound,
            "g_tau": self.g_tau,
            "contradiction": self.contradiction,
            "witness_cograph": sorted(self.witness_cograph) if self.witness_cograph else None,
        }


@dataclass(frozen=True)
class CaseIICertificate:
    """The four ratio terms over R_U against their bounds."""

    r_u_size: int
    neighbourhood_total: int
    removed_total: int
    apex_total: int
    remainder: frozenset[int]
    terms: list[BoundCheck]
    bound_sum: float
    measured_sum: float
    contradiction: bool
    remainder_edgeless: bool

    def to_dict(self) -> dict:
        return {
            "r_u_size": self.r_u_size,
            "neighbourhood_total": self.neighbourhood_total,
            "removed_total": self.removed_total,
            "apex_total": self.apex_total,
            "remainder_size": len(self.remainder),
            "terms": [t.to_dict() for t in self.terms],
            "bound_sum": self.bound_sum,
            "measured_sum": self.measured_sum,
            "contradiction": self.contradiction,
            "remainder_edgeless": self.remainder_edgeless,
        }


@dataclass
class ConstructionTrace:
    mode: str
    thresholds: dict[str, float]
    preconditions: list[BoundCheck] = field(default_factory=list)
    steps: list[TraceStep] = field(default_factory=list)
    outcome: Optional[Outcome] = None
    comb: Optional[Comb] = None
    comb_base: Optional[int] = None
    minor: Optional[Blockade] = None
    minor_checked: Optional[bool] = None
    case_i: Optional[CaseICertificate] = None
    case_ii: Optional[CaseIICertificate] = None
    work: int = 0

    @property
    def all_checks(self) -> list[BoundCheck]:
        return [c for step in self.steps for c in step.checks]

    def to_dict(self) -> dict[str, Any]:
        return {
            "mode": self.mode,
            "thresholds": self.thresholds,
            "preconditions": [c.to_dict() for c in self.preconditions],
            "steps": [s.to_dict() for s in self.steps],
            "outcome": self.outcome.value if self.outcome else None,
            "comb": self.comb.to_dict() if self.comb else None,
            "comb_base": self.comb_base,
            "minor": [sorted(b) for b in self.minor.blocks] if self.minor else None,
            "minor_checked": self.minor_checked,
            "case_i": self.case_i.to_dict() if self.case_i else None,
            "case_ii": self.case_ii.to_dict() if self.case_ii else None,
            "work": self.work,
        }
