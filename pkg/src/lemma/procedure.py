"""Iterative comb extraction from an equicardinal blockade, with every bound instrumented.

Each step takes the vertex a_u of largest degree inside the live set R_u, tries to grow a
comb out of its neighbourhood (when that degree is large), and otherwise discards a_u, its
neighbourhood and the second neighbourhood before moving on to R_{u+1}.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

from config.settings import get_settings
from src.blockades import Blockade, is_equicardinal, is_minor_of, pattern, width
from src.cographs import TauParams, is_cograph, is_tau_critical, largest_cograph
from src.combs import Comb, build_layers_mask, comb_violations, compute_W_G
from src.errors import InvariantError, PreconditionError, SearchLimitError
from src.freeness import is_rainbow_k2_free, is_strongly_k2_free
from src.graphs import (
    Graph,
    induced,
    is_anticomplete,
    iter_bits,
    mask_of,
    max_degree_in_mask,
    set_of,
)
from src.numeric import at_least, at_most, ceil_guarded, less_than, two_thirds_power

from .constants import K, REMOVAL_CONSTANT, LemmaParams
from .keyob import comb_to_rainbow_minor
from .models import (
    BoundCheck,
    CaseICertificate,
    CaseIICertificate,
    ConstructionTrace,
    Outcome,
    RelaxFactors,
    TraceStep,
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Scales and checks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Scale:
    """Thresholds of the procedure in strict form (|G|/t^d) and relaxed form (block width)."""

    n: int
    t: int
    d: float
    unit_strict: float
    unit_relaxed: float
    factors: RelaxFactors
    relaxed: bool

    @classmethod
    def of(cls, g: Graph, a_blockade: Blockade, d: float,
           factors: Optional[RelaxFactors]) -> "Scale":
        t = a_blockade.length
        return cls(
            n=g.n, t=t, d=d,
            unit_strict=g.n / t ** d,
            unit_relaxed=float(width(a_blockade)),
            factors=factors or RelaxFactors(),
            relaxed=factors is not None,
        )

    @property
    def case_strict(self) -> float:
        return self.unit_strict / self.t ** self.d

    @property
    def case_relaxed(self) -> float:
        return self.unit_relaxed / self.t ** self.d * self.factors.delta

    @property
    def tooth_strict(self) -> float:
        return self.unit_strict / self.t ** (self.d + 2)

    @property
    def tooth_relaxed(self) -> float:
        return self.unit_relaxed / self.t ** (self.d + 2) * self.factors.width

    @property
    def length_strict(self) -> float:
        return self.t ** 0.125

    @property
    def length_relaxed(self) -> float:
        return self.t ** 0.125 * self.factors.length

    def pick(self, strict: float, relaxed: float) -> float:
        return relaxed if self.relaxed else strict

    @property
    def case_threshold(self) -> float:
        return self.pick(self.case_strict, self.case_relaxed)

    @property
    def tooth_threshold(self) -> float:
        return self.pick(self.tooth_strict, self.tooth_relaxed)

    @property
    def length_threshold(self) -> float:
        return self.pick(self.length_strict, self.length_relaxed)

    @property
    def unit(self) -> float:
        return self.pick(self.unit_strict, self.unit_relaxed)

    def step_loss(self, unit: float) -> float:
        """Most vertices one step may remove: unit + 1 + unit * t^(1/4)."""
        return unit + 1 + unit * self.t ** 0.25

    def to_dict(self) -> dict[str, float]:
        return {
            "unit_strict": self.unit_strict,
            "unit_relaxed": self.unit_relaxed,
            "case_strict": self.case_strict,
            "case_relaxed": self.case_relaxed,
            "tooth_strict": self.tooth_strict,
            "tooth_relaxed": self.tooth_relaxed,
            "length_strict": self.length_strict,
            "length_relaxed": self.length_relaxed,
            **{f"factor_{k}": v for k, v in self.factors.to_dict().items()},
        }


_COMPARE = {"le": at_most, "ge": at_least, "lt": less_than}


def _check(name: str, measured: float, strict_bound: Optional[float],
           relaxed_bound: Optional[float], kind: str = "le") -> BoundCheck:
    compare = _COMPARE[kind]
    strict = compare(measured, strict_bound) if strict_bound is not None else None
    relaxed = compare(measured, relaxed_bound) if relaxed_bound is not None else None
    return BoundCheck(
        name=name,
        measured=float(measured),
        strict_bound=strict_bound,
        relaxed_bound=relaxed_bound,
        strict_holds=strict.holds if strict else None,
        relaxed_holds=relaxed.holds if relaxed else None,
        boundary=bool((strict and strict.boundary) or (relaxed and relaxed.boundary)),
    )


def _unevaluated(name: str, reason: str) -> BoundCheck:
    logger.info("Precondition %s not evaluated: %s", name, reason)
    return BoundCheck(name=name, measured=None, strict_bound=None, relaxed_bound=None,
                      strict_holds=None, relaxed_holds=None)


# ---------------------------------------------------------------------------
# Preconditions
# ---------------------------------------------------------------------------

def _preconditions(g: Graph, a_blockade: Blockade, params: LemmaParams, scale: Scale,
                   expensive: bool) -> list[BoundCheck]:
    settings = get_settings()
    n, t, d = g.n, scale.t, params.d
    union = a_blockade.union_mask
    checks = [
        _check("equicardinal", 1.0 if is_equicardinal(a_blockade) else 0.0, 1.0, 1.0, "ge"),
        _check("width-equals-unit", abs(width(a_blockade) - scale.unit_strict),
               settings.BOUNDARY_GUARD * max(1.0, scale.unit_strict), None),
        _check("t-at-least-L0", t, params.l0, None, "ge"),
        _check("t-at-most-2n^(1/d)", t, 2 * n ** (1 / d), None),
        _check("tau-below-tau0", params.tau, params.tau0, None, "lt"),
        _check(
            "degree-in-A-below-unit",
            max(((g.rows[a] & union).bit_count() for a in iter_bits(union)), default=0),
            scale.unit_strict, scale.unit_relaxed, "lt",
        ),
    ]
    if not expensive:
        return checks

    if n <= settings.WG_LIMIT:
        checks.append(_check("case-threshold-below-W_G", scale.case_strict, compute_W_G(g), None))
    else:
        checks.append(_unevaluated("case-threshold-below-W_G", f"n={n} above W_G limit"))
    if n <= settings.TAU_LIMIT:
        verdict = is_tau_critical(g, TauParams(params.tau))
        checks.append(_check("tau-critical", 1.0 if verdict.is_critical else 0.0, 1.0, None, "ge"))
    else:
        checks.append(_unevaluated("tau-critical", f"n={n} above tau-criticality limit"))
    try:
        strong = is_strongly_k2_free(g, params.k)
        checks.append(_check("strongly-k2-free", 1.0 if strong.is_free else 0.0, 1.0, None, "ge"))
    except SearchLimitError as e:
        checks.append(_unevaluated("strongly-k2-free", str(e)))
    return checks


# ---------------------------------------------------------------------------
# Case 1: comb attempt from the layers of one step
# ---------------------------------------------------------------------------

@dataclass
class _Selection:
    selected: list[tuple[int, int, int, int, int]]  # (s, i, apex, block, part mask)
    s1: list[tuple[int, int]]                       # (s, |T|)
    s2: list[tuple[int, int]]
    l: int


def _largest_l(delta: int, threshold: float) -> int:
    """Largest l with (2/3)^(l-1) * delta >= threshold."""
    l = 1
    while two_thirds_power(l) * delta >= threshold:
        l += 1
    return l


def _select(g: Graph, layers, l: int, block_masks: list[int], home: Optional[int],
            tooth_threshold: float) -> _Selection:
    selected, s1, s2 = [], [], []
    blocked = 0
    used: set[int] = set()
    for s, i, apex, tooth in reversed(layers.apex_order(up_to=l)):
        tooth_mask = mask_of(tooth)
        if 2 * (tooth_mask & blocked).bit_count() >= len(tooth):
            s1.append((s, len(tooth)))
            continue
        free = tooth_mask & ~blocked
        choice = None
        for j, block in enumerate(block_masks):
            if j in used or j == home:
                continue
            part = block & free
            if part and at_least(part.bit_count(), tooth_threshold).holds:
                choice = (j, part)
                break
        if choice is None:
            s2.append((s, len(tooth)))
            continue
        selected.append((s, i, apex, choice[0], choice[1]))
        used.add(choice[0])
        blocked |= g.rows[apex]
    return _Selection(selected=selected, s1=s1, s2=s2, l=l)


def _selection_comb(selection: _Selection) -> Comb:
    ordered = sorted(selection.selected, key=lambda e: e[3])
    size = min(part.bit_count() for *_, part in ordered)
    pairs = tuple((apex, frozenset(sorted(iter_bits(part))[:size]))
                  for _, _, apex, _, part in ordered)
    return Comb(pairs=pairs, k=size)


def _failure_checks(sel: _Selection, delta: int, removed: int, beyond_l: int, scale: Scale,
                    s2_slack: int) -> list[BoundCheck]:
    checks = []
    per_layer = {s: 0 for s in range(1, sel.l + 1)}
    for s, *_ in sel.selected:
        per_layer[s] += 1
    s1_by_layer = {s: 0 for s in range(1, sel.l + 1)}
    for s, _ in sel.s1:
        s1_by_layer[s] += 1
    s1_bound = 0.0
    for alpha in range(1, sel.l + 1):
        later = sum(per_layer[s] for s in range(alpha, sel.l + 1))
        checks.append(_check(f"s1-count-layer-{alpha}", s1_by_layer[alpha], 3 * later, 3 * later))
        s1_bound += 3 * float(two_thirds_power(alpha - 1)) * delta * later
    checks.append(_check("s1-teeth", sum(size for _, size in sel.s1), s1_bound, s1_bound))

    chosen = len(sel.selected)
    s2_strict = 2 * (1.5 + chosen + s2_slack) * scale.unit_strict
    s2_relaxed = 2 * (len(sel.s2) * scale.t * scale.tooth_threshold
                      + scale.unit_relaxed * (chosen + s2_slack))
    checks.append(_check("s2-teeth", sum(size for _, size in sel.s2), s2_strict, s2_relaxed))

    rest = REMOVAL_CONSTANT * math.sqrt(scale.n * float(two_thirds_power(sel.l)) * delta)
    checks.append(_check("beyond-l-fact-bound", beyond_l, rest, rest))
    checks.append(_check("beyond-l-unit-bound", beyond_l, REMOVAL_CONSTANT * scale.unit_strict,
                         REMOVAL_CONSTANT * scale.unit_relaxed))

    factor = 3 + 4.5 * float(K)
    checks.append(_check(
        "case1-removed",
        removed,
        scale.unit_strict * (factor * scale.length_strict + 3 + REMOVAL_CONSTANT),
        scale.unit_relaxed * (factor * scale.length_relaxed + 3 + REMOVAL_CONSTANT),
    ))
    checks.append(_check("case1-removed-quarter-power", removed,
                         scale.unit_strict * scale.t ** 0.25,
                         scale.unit_relaxed * scale.t ** 0.25))
    return checks


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------

def _case_i(g: Graph, steps: list[TraceStep], u_cap: int, scale: Scale,
            tau: float) -> CaseICertificate:
    blocks = Blockade(tuple(step.neighbourhood for step in steps[1:u_cap + 1]))
    shape = pattern(g, blocks)
    if shape is None or shape.edge_count:
        raise InvariantError("neighbourhood blocks are not pairwise anticomplete")
    threshold = scale.case_threshold
    lower = threshold ** tau * blocks.length
    g_tau = scale.n ** tau
    witness = None
    if all(len(b) <= get_settings().COGRAPH_LIMIT for b in blocks.blocks):
        witness = frozenset()
        for block in blocks.blocks:
            sub = induced(g, block)
            witness |= {sub.label_of(v) for v in largest_cograph(sub)}
        if is_cograph(induced(g, witness)) is None:
            raise InvariantError("union of per-block cographs is not a cograph")
    return CaseICertificate(
        blocks=blocks, threshold=threshold, cograph_lower_bound=lower, g_tau=g_tau,
        contradiction=less_than(g_tau, lower).holds, witness_cograph=witness,
    )


def _case_ii(g: Graph, steps: list[TraceStep], u_cap: int, r_u: int, scale: Scale,
             tau: float) -> CaseIICertificate:
    counted = [s for s in steps[u_cap:] if s.delta > 0]
    remainder = r_u
    for s in counted:
        remainder &= ~(mask_of(s.neighbourhood) | mask_of(s.removed) | 1 << s.apex)
    r_u_size = r_u.bit_count()
    neigh = sum(len(s.neighbourhood) for s in counted)
    removed = sum(len(s.removed) for s in counted)
    apexes = len(counted)
    rest = remainder.bit_count()
    if neigh + removed + apexes + rest != r_u_size:
        raise InvariantError("R_U is not partitioned by neighbourhoods, removals, apexes and R")
    t, d, n = scale.t, scale.d, scale.n

    def ratio(x: int) -> float:
        return x / r_u_size if r_u_size else 0.0

    tail = n ** (tau - 1) * t ** (d - 0.5)
    bounds = [
        ("neighbourhood-ratio", neigh, t ** (-d - 0.5 + 2 * d * tau)),
        ("removed-ratio", removed, REMOVAL_CONSTANT * t ** (-0.5 + 2 * d * tau)),
        ("apex-ratio", apexes, tail),
        ("remainder-ratio", rest, tail),
    ]
    terms = [_check(name, ratio(x), b, b) for name, x, b in bounds]
    bound_sum = sum(b for *_, b in bounds)
    return CaseIICertificate(
        r_u_size=r_u_size,
        neighbourhood_total=neigh,
        removed_total=removed,
        apex_total=apexes,
        remainder=set_of(remainder),
        terms=terms,
        bound_sum=bound_sum,
        measured_sum=sum(t.measured for t in terms),
        contradiction=bound_sum < 1,
        remainder_edgeless=all(not g.rows[v] & remainder for v in iter_bits(remainder)),
    )


# ---------------------------------------------------------------------------
# Procedure
# ---------------------------------------------------------------------------

def main_lemma_procedure(
    g: Graph,
    a_blockade: Blockade,
    params: LemmaParams,
    relaxed: Optional[RelaxFactors] = None,
    max_steps: Optional[int] = None,
    work_limit: Optional[int] = None,
    avoid_apex_block: bool = True,
    verify_preconditions: bool = False,
) -> ConstructionTrace:
    """Run the extraction; ``relaxed=None`` means strict mode.

    Strict mode refuses unless every precondition is verified to hold. Relaxed mode records
    the cheap preconditions (and the exhaustive ones when ``verify_preconditions``) and
    never refuses.
    """
    if params.tau is None:
        raise ValueError("the procedure needs params.tau")
    if a_blockade.length == 0:
        raise ValueError("the procedure needs a nonempty blockade")
    scale = Scale.of(g, a_blockade, params.d, relaxed)
    settings = get_settings()
    work_limit = settings.WORK_LIMIT if work_limit is None else work_limit

    preconditions = _preconditions(g, a_blockade, params, scale,
                                   expensive=verify_preconditions or not scale.relaxed)
    if not scale.relaxed:
        failing = [c.name for c in preconditions if c.strict_holds is not True]
        if failing:
            raise PreconditionError([f"strict precondition not verified: {name}" for name in failing])

    u_cap = max(1, ceil_guarded(scale.length_threshold))
    max_steps = u_cap + 2 if max_steps is None else max_steps
    trace = ConstructionTrace(
        mode="relaxed" if scale.relaxed else "strict",
        thresholds={**scale.to_dict(), "U": u_cap, "max_steps": max_steps},
        preconditions=preconditions,
    )

    block_masks = [mask_of(b) for b in a_blockade.blocks]
    a_size = a_blockade.union_mask.bit_count()
    r = a_blockade.union_mask
    r_at_cap: Optional[int] = None
    past_neighbourhoods = 0
    loss_strict, loss_relaxed = scale.step_loss(scale.unit_strict), scale.step_loss(scale.unit_relaxed)
    u = 0

    while True:
        if u == u_cap:
            r_at_cap = r
        past_cap = u > u_cap
        if past_cap and (not r or trace.steps[-1].delta == 0):
            break
        if not r:
            # R emptied before the decision point
            r_at_cap = r if r_at_cap is None else r_at_cap
            break
        if u >= max_steps or trace.work > work_limit:
            logger.info("Budget exhausted at step %s (work %s)", u, trace.work)
            trace.outcome = Outcome.BUDGET_EXHAUSTED
            return trace

        apex, delta = max_degree_in_mask(g, r)
        if past_cap and delta == 0:
            break
        c = g.rows[apex] & r
        d_part = r & ~c & ~(1 << apex)
        removed = 0
        for x in iter_bits(c):
            removed |= g.rows[x] & d_part
        next_r = d_part & ~removed
        trace.work += r.bit_count() + c.bit_count()

        if not is_anticomplete(g, c, past_neighbourhoods):
            raise InvariantError(f"E(a_{u}, R_{u}) meets an earlier neighbourhood")
        if not is_anticomplete(g, next_r, c | (1 << apex)) or next_r & ~r:
            raise InvariantError(f"R_{u + 1} is not a subset anticomplete to E(a_{u}) + a_{u}")

        case1 = delta >= 1 and at_least(delta, scale.case_threshold).holds
        step = TraceStep(
            u=u, apex=apex, delta=delta, r_size=r.bit_count(),
            case="case1" if case1 else "case2",
            neighbourhood=set_of(c), removed=set_of(removed), next_r_size=next_r.bit_count(),
        )
        step.checks.append(_check("degree-below-unit", delta, scale.unit_strict,
                                  scale.unit_relaxed, "lt"))

        if case1:
            layers = build_layers_mask(g, c, d_part, delta)
            if layers.covered != set_of(removed):
                raise InvariantError("layers do not cover exactly the second neighbourhood")
            problems = layers.violations(g)
            if problems:
                raise InvariantError(f"layer invariants violated: {problems[0]}")
            l = _largest_l(delta, scale.case_threshold)
            home = a_blockade.block_of(apex) if avoid_apex_block else None
            sel = _select(g, layers, l, block_masks, home, scale.tooth_threshold)
            step.layer_count = len(layers.layers)
            step.l = l
            step.i_sizes = [sum(1 for e in sel.selected if e[0] == s) for s in range(1, l + 1)]
            step.s1_count, step.s2_count = len(sel.s1), len(sel.s2)
            step.checks.append(_check("l-definition", float(two_thirds_power(l)) * delta,
                                      2 / 3 * scale.case_strict, 2 / 3 * scale.case_relaxed, "ge"))
            trace.work += sum(len(layer.apexes) for layer in layers.layers) * len(block_masks)

            if sel.selected and at_least(len(sel.selected), scale.length_threshold).holds:
                trace.steps.append(step)
                return _finish_with_comb(g, a_blockade, params, scale, trace, sel, apex,
                                         avoid_apex_block)

            beyond = sum(len(layer.covered) for layer in layers.layers if layer.s > l)
            step.checks.extend(_failure_checks(sel, delta, removed.bit_count(), beyond, scale,
                                               1 if home is not None else 0))
        else:
            fact = REMOVAL_CONSTANT * math.sqrt(g.n * delta)
            step.checks.append(_check("case2-removed-fact-bound", removed.bit_count(), fact, fact))
            step.checks.append(_check("case2-removed-unit-bound", removed.bit_count(),
                                      REMOVAL_CONSTANT * scale.unit_strict,
                                      REMOVAL_CONSTANT * scale.unit_relaxed))

        next_size = next_r.bit_count()
        step.checks.append(_check("r-step", next_size, r.bit_count() - loss_strict,
                                  r.bit_count() - loss_relaxed, "ge"))
        step.checks.append(_check("r-induction", next_size, a_size - loss_strict * (u + 1),
                                  a_size - loss_relaxed * (u + 1), "ge"))
        logger.debug("Step %s: apex %s, delta %s, |R| %s -> %s", u, apex, delta,
                     r.bit_count(), next_size)
        trace.steps.append(step)
        if u == u_cap and case1:
            # the step at U alone decides Case (i)
            break
        past_neighbourhoods |= c
        r = next_r
        u += 1

    if r_at_cap is None:
        r_at_cap = r
    last_delta = trace.steps[u_cap].delta if len(trace.steps) > u_cap else 0
    if last_delta >= 1 and at_least(last_delta, scale.case_threshold).holds:
        trace.case_i = _case_i(g, trace.steps, u_cap, scale, params.tau)
        trace.outcome = Outcome.CASE_I
    else:
        trace.case_ii = _case_ii(g, trace.steps, u_cap, r_at_cap, scale, params.tau)
        trace.outcome = Outcome.CASE_II
    logger.info("Procedure finished after %s steps: %s", len(trace.steps), trace.outcome.value)
    return trace


def _finish_with_comb(g: Graph, a_blockade: Blockade, params: LemmaParams, scale: Scale,
                      trace: ConstructionTrace, sel: _Selection, apex: int,
                      avoid_apex_block: bool) -> ConstructionTrace:
    comb = _selection_comb(sel)
    problems = comb_violations(g, comb)
    if problems:
        raise InvariantError(f"selected comb is invalid: {problems[0]}")
    indices = [e[3] for e in sel.selected]
    if len(set(indices)) != len(indices):
        raise InvariantError("two selected teeth share a block")
    teeth = comb.teeth_blockade()
    if not is_minor_of(teeth, a_blockade):
        raise InvariantError("teeth blockade is not a minor of the input blockade")
    step = trace.steps[-1]
    step.checks.append(_check("comb-width", comb.k, scale.tooth_strict, scale.tooth_relaxed, "ge"))
    step.checks.append(_check("comb-length", comb.t, scale.length_strict, scale.length_relaxed,
                              "ge"))
    trace.comb = comb
    trace.comb_base = apex
    trace.minor = teeth
    trace.outcome = Outcome.COMB

    if avoid_apex_block:
        try:
            if is_rainbow_k2_free(g, a_blockade, params.k) is None:
                comb_to_rainbow_minor(g, a_blockade, params.k, apex, comb, check_source=False)
                trace.minor_checked = True
        except SearchLimitError as e:
            logger.info("Minor freeness not checked: %s", e)
    logger.info("Comb with %s teeth of width %s found at step %s", comb.t, comb.k, step.u)
    return trace
