"""Constants of the comb-extraction lemma and the base-case dimensions."""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from src.combs import fact_constant
from src.errors import InvariantError

logger = logging.getLogger(__name__)

# Sum over alpha >= 1 of (2/3)^alpha
K = Fraction(2, 3) / (1 - Fraction(2, 3))

# Fact-bound constant at exponent 1/2: 3^(3/2) / (3/2 - sqrt(3/2)) ~ 18.877
REMOVAL_CONSTANT = fact_constant(0.5)

# Base of the base-case block count D_s = 2^(s-1) * BASE_D^(2s-1)
BASE_D = 4

TAU_TOLERANCE = 1e-12


# ---------------------------------------------------------------------------
# L_0
# ---------------------------------------------------------------------------

def first_inequality(L: int) -> bool:
    """L^(1/4) >= (3 + 9K/2) L^(1/8) + 3 + REMOVAL_CONSTANT."""
    eighth = L ** 0.125
    return eighth * eighth >= (3 + 4.5 * float(K)) * eighth + 3 + REMOVAL_CONSTANT


def second_inequality(L: int, d: float) -> bool:
    """L - 2 L^(1/8) (1 + 2^d + L^(1/4)) >= L^(1/2)."""
    eighth = L ** 0.125
    return L - 2 * eighth * (1 + 2 ** d + eighth * eighth) >= math.sqrt(L)


def _both(L: int, d: float) -> bool:
    return first_inequality(L) and second_inequality(L, d)


@lru_cache
def find_l0(d: float) -> int:
    """Smallest L from which both inequalities hold, by doubling then bisection.

    Both inequalities hold on an upward-closed set of integers, which the bracketing
    check below re-verifies at the answer.
    """
    hi = 1
    while not _both(hi, d):
        hi *= 2
    lo = hi // 2
    # invariant: _both(hi) and (lo == 0 or not _both(lo))
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _both(mid, d):
            hi = mid
        else:
            lo = mid
    if hi > 1 and _both(hi - 1, d):
        raise InvariantError(f"L_0 bracketing failed at {hi}")
    logger.debug("L_0(d=%s) = %s", d, hi)
    return hi


# ---------------------------------------------------------------------------
# tau_0
# ---------------------------------------------------------------------------

def tau_inequalities(tau: float, d: float, l0: int) -> list[bool]:
    """The three conditions tau must satisfy, in order."""
    first = tau - 1 / (2 * d) < -(d + 1) * tau
    second = (
        l0 ** (-d - 0.5 + 2 * d * tau)
        + REMOVAL_CONSTANT * l0 ** (-0.5 + 2 * d * tau)
        + 2 ** -0.5
    ) < 1
    third = l0 ** (0.125 - 2 * d * tau) > 1
    return [first, second, third]


def _second_excess(tau: float, d: float, l0: int) -> float:
    log_l0 = math.log(l0)
    return (
        math.exp((-d - 0.5 + 2 * d * tau) * log_l0)
        + REMOVAL_CONSTANT * math.exp((-0.5 + 2 * d * tau) * log_l0)
        + 2 ** -0.5
        - 1
    )


def find_tau0(d: float, l0: int) -> float:
    """Supremum of tau satisfying all three conditions."""
    sup_first = 1 / (2 * d * (d + 2))
    sup_third = 1 / (16 * d)
    if _second_excess(0.0, d, l0) >= 0:
        return 0.0
    lo, hi = 0.0, 1.0
    while _second_excess(hi, d, l0) < 0:
        hi *= 2
    while hi - lo > TAU_TOLERANCE:
        mid = (lo + hi) / 2
        if _second_excess(mid, d, l0) < 0:
            lo = mid
        else:
            hi = mid
    return min(sup_first, lo, sup_third)


# ---------------------------------------------------------------------------
# Parameters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LemmaParams:
    k: int
    d: float
    l0: int
    tau0: float
    tau: Optional[float] = None
    t: Optional[int] = None
    K: Fraction = K
    removal_constant: float = REMOVAL_CONSTANT
    ds_table: list[int] = field(default_factory=list)

    @property
    def tau_admissible(self) -> bool:
        return self.tau is not None and 0 < self.tau < self.tau0

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "d": self.d,
            "tau": self.tau,
            "t": self.t,
            "K": str(self.K),
            "L0": self.l0,
            "tau0": self.tau0,
            "removal_constant": self.removal_constant,
            "Ds": self.ds_table,
        }


def compute_constants(k: int, d: float, tau: Optional[float] = None,
                      t: Optional[int] = None) -> LemmaParams:
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    if d < 2:
        raise ValueError(f"d must be at least 2, got {d}")
    l0 = find_l0(d)
    return LemmaParams(
        k=k, d=d, l0=l0, tau0=find_tau0(d, l0), tau=tau, t=t,
        ds_table=[d_s(s) for s in range(1, 6)],
    )


# ---------------------------------------------------------------------------
# Base-case dimensions
# ---------------------------------------------------------------------------

def d_s(s: int) -> int:
    """D_s = 2^(s-1) * 4^(2s-1), exact."""
    if s < 1:
        raise ValueError(f"s must be at least 1, got {s}")
    return 2 ** (s - 1) * BASE_D ** (2 * s - 1)


def base_remark_dimensions(t: int) -> tuple[int, int]:
    """(2^s, D_s) for the s with D_s <= t < D_(s+1)."""
    if t < d_s(1):
        raise ValueError(f"t must be at least {d_s(1)}, got {t}")
    s = 1
    while d_s(s + 1) <= t:
        s += 1
    length, divisor = 2 ** s, d_s(s)
    # 2^s >= t^(1/10) is 2^(10s) >= t in integers
    if 2 ** (10 * s) < t or divisor > t:
        raise InvariantError(f"dimension check failed for t={t}, s={s}")
    return length, divisor
