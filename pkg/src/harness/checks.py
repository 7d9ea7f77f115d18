"""Named acceptance checks run by the suite harness.

Every check takes the generated instance (None for checks that enumerate their own cases),
its resolved parameters and a private random generator, and returns a ``CheckOutcome``.
"""

import logging
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Callable, Optional

import numpy as np
import sympy

from src.blockades import pattern, width
from src.cographs import clique_and_anticlique, homogeneous_in_cograph, is_cograph, is_homogeneous
from src.combs import (
    Comb,
    build_layers_mask,
    comb_or_bound,
    fact_bound,
    required_tooth,
    validate_comb,
)
from src.errors import ConfigError
from src.freeness import is_rainbow_k2_free, is_strongly_k2_free
from src.graphs import complement, graph_to_dict, max_degree_in_mask, new_graph
from src.lemma import (
    K,
    REMOVAL_CONSTANT,
    Outcome,
    RelaxFactors,
    best_singleton_comb,
    comb_to_rainbow_minor,
    compute_constants,
    d_s,
    find_l0,
    first_inequality,
    main_lemma_procedure,
    pure_blockade_from_rainbow22,
    second_inequality,
    tau_inequalities,
)
from src.numeric import at_most

from .generators import GeneratedInstance

logger = logging.getLogger(__name__)


@dataclass
class CheckOutcome:
    """``passed`` is None when the instance does not apply to the check."""

    passed: Optional[bool]
    cases: int = 1
    details: dict[str, Any] = field(default_factory=dict)
    counterexample: Optional[Any] = None

    @property
    def status(self) -> str:
        if self.passed is None:
            return "skip"
        return "pass" if self.passed else "fail"


def _sample(params: dict[str, Any], rng: np.random.Generator) -> dict[str, Any]:
    """Sample ``[lo, hi]`` ranges in check parameters."""
    out = {}
    for name, value in params.items():
        if isinstance(value, (list, tuple)) and len(value) == 2 and all(
            isinstance(x, (int, float)) for x in value
        ):
            lo, hi = value
            value = int(rng.integers(lo, hi + 1)) if isinstance(lo, int) and isinstance(hi, int) \
                else float(rng.uniform(lo, hi))
        out[name] = value
    return out


def _require(instance: Optional[GeneratedInstance], check: str, blockade: bool = False):
    if instance is None:
        raise ConfigError(f"check {check} needs a generator", "generator")
    if blockade and instance.blockade is None:
        raise ConfigError(f"check {check} needs a generator that produces a blockade", "generator")
    return instance


# ---------------------------------------------------------------------------
# Cographs
# ---------------------------------------------------------------------------

def _pair_index(n: int) -> dict[tuple[int, int], int]:
    return {pair: i for i, pair in enumerate(combinations(range(n), 2))}


def closure_cographs(n: int) -> set[int]:
    """Labelled cographs on n vertices as edge masks over ``combinations(range(n), 2)``.

    Built bottom-up over vertex subsets by closing single vertices under disjoint union and
    complementation, without any recognition step.
    """
    index = _pair_index(n)

    def inside(subset: int) -> int:
        members = [v for v in range(n) if subset >> v & 1]
        mask = 0
        for pair in combinations(members, 2):
            mask |= 1 << index[pair]
        return mask

    family: dict[int, set[int]] = {}
    for subset in sorted(range(1, 1 << n), key=int.bit_count):
        if subset.bit_count() == 1:
            family[subset] = {0}
            continue
        low = subset & -subset
        rest = subset ^ low
        unions: set[int] = set()
        part = (rest - 1) & rest
        while True:
            left = low | part
            right = subset ^ left
            for e1 in family[left]:
                for e2 in family[right]:
                    unions.add(e1 | e2)
            if part == 0:
                break
            part = (part - 1) & rest
        full = inside(subset)
        family[subset] = unions | {full ^ e for e in unions}
    return family[(1 << n) - 1]


def check_cograph_oracle(instance, params, rng) -> CheckOutcome:
    """is_cograph agrees with the closure family on every labelled graph up to n."""
    top = params.get("n", 6)
    cases = 0
    per_size = {}
    for n in range(1, top + 1):
        oracle = closure_cographs(n)
        pairs = list(combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            g = new_graph(n, [pair for i, pair in enumerate(pairs) if mask >> i & 1])
            cases += 1
            if (is_cograph(g) is not None) != (mask in oracle):
                return CheckOutcome(False, cases, counterexample=graph_to_dict(g))
        per_size[n] = {"graphs": 1 << len(pairs), "cographs": len(oracle)}
    return CheckOutcome(True, cases, details={"sizes": per_size})


def check_homogeneous(instance, params, rng) -> CheckOutcome:
    g = _require(instance, "homogeneous-bound").graph
    tree = is_cograph(g)
    if tree is None:
        return CheckOutcome(False, counterexample=graph_to_dict(g))
    h = homogeneous_in_cograph(tree)
    clique, anticlique = clique_and_anticlique(tree)
    m = g.n
    needed = math.isqrt(m - 1) + 1
    passed = is_homogeneous(g, h) and len(h) >= needed and len(clique) * len(anticlique) >= m
    return CheckOutcome(
        passed,
        details={"m": m, "size": len(h), "needed": needed,
                 "clique": len(clique), "anticlique": len(anticlique)},
        counterexample=None if passed else graph_to_dict(g),
    )


# ---------------------------------------------------------------------------
# Combs
# ---------------------------------------------------------------------------

def check_comb_dichotomy(instance, params, rng) -> CheckOutcome:
    inst = _require(instance, "comb-dichotomy")
    p = _sample({"gamma": [1.0, 8.0], "d": 0.5, **params}, rng)
    if "A" not in inst.meta:
        raise ConfigError("comb-dichotomy needs a bipartite-covered generator", "generator.kind")
    a_side, b_side = inst.meta["A"], inst.meta["B"]
    result = comb_or_bound(inst.graph, a_side, b_side, p["gamma"], p["d"])
    if isinstance(result, Comb):
        inside = set(result.apexes) <= set(a_side) and all(
            tooth <= frozenset(b_side) for tooth in result.teeth
        )
        needed = required_tooth(p["gamma"], p["d"], result.t)
        passed = validate_comb(inst.graph, result) and inside and result.k >= needed
        details = {"branch": "comb", "t": result.t, "k": result.k, "needed": needed}
    else:
        bound = fact_bound(p["d"], p["gamma"], result.delta)
        passed = at_most(result.b_size, bound).holds
        details = {"branch": "bound", **result.to_dict()}
    details.update(gamma=p["gamma"], d=p["d"])
    return CheckOutcome(passed, details=details,
                        counterexample=None if passed else graph_to_dict(inst.graph))


def check_layers(instance, params, rng) -> CheckOutcome:
    """Layers around a maximum-degree vertex satisfy every layer observation."""
    g = _require(instance, "layer-invariants").graph
    if g.n == 0:
        return CheckOutcome(None)
    apex, delta = max_degree_in_mask(g, g.full_mask)
    if delta == 0:
        return CheckOutcome(None, details={"reason": "edgeless"})
    c = g.rows[apex]
    d_part = g.full_mask & ~c & ~(1 << apex)
    layers = build_layers_mask(g, c, d_part, delta)
    problems = layers.violations(g)
    expected = frozenset(y for y in range(g.n) if d_part >> y & 1 and g.rows[y] & c)
    if layers.covered != expected:
        problems.append("covered vertices differ from the second neighbourhood")
    return CheckOutcome(
        not problems,
        details={"layers": len(layers.layers), "delta": delta, "problems": problems[:5]},
        counterexample=graph_to_dict(g) if problems else None,
    )


# ---------------------------------------------------------------------------
# Blockade constructions
# ---------------------------------------------------------------------------

def check_basecase(instance, params, rng) -> CheckOutcome:
    inst = _require(instance, "basecase", blockade=True)
    s = params.get("s", 1)
    g, b = inst.graph, inst.blockade
    result, tree = pure_blockade_from_rainbow22(g, b, s)
    shape = pattern(g, result)
    passed = (
        result.length == 2 ** s
        and width(result) * d_s(s) >= width(b)
        and shape is not None
        and is_cograph(shape) is not None
    )
    return CheckOutcome(passed, details={
        "s": s, "length": result.length, "width": width(result), "input_width": width(b),
        "cotree": str(tree),
    })


def check_keyob(instance, params, rng) -> CheckOutcome:
    """The teeth blockade of a comb in a rainbow-free blockade is rainbow-free one level down."""
    inst = _require(instance, "keyob", blockade=True)
    k = params.get("k", 3)
    g, b = inst.graph, inst.blockade
    best = best_singleton_comb(g, b)
    if best is None:
        return CheckOutcome(None, details={"reason": "no comb"})
    a, comb = best
    minor = comb_to_rainbow_minor(g, b, k, a, comb)
    passed = k - 1 < 2 or is_rainbow_k2_free(g, minor, k - 1) is None
    return CheckOutcome(passed, details={"a": a, "t": comb.t, "k": k},
                        counterexample=None if passed else comb.to_dict())


def check_constants(instance, params, rng) -> CheckOutcome:
    d = params.get("d", 2)
    l0 = find_l0(d)
    exact = sympy.N(
        3 ** sympy.Rational(3, 2) / (sympy.Rational(3, 2) - sympy.sqrt(sympy.Rational(3, 2))), 50
    )
    constant_error = abs(float(exact - sympy.Float(REMOVAL_CONSTANT, 50)))
    lemma = compute_constants(3, d)
    below = lemma.tau0 * (1 - 1e-6)
    checks = {
        "K": K == 2,
        "D_1": d_s(1) == 4,
        "L0_holds": first_inequality(l0) and second_inequality(l0, d),
        "L0_minimal": not (first_inequality(l0 - 1) and second_inequality(l0 - 1, d)),
        "removal_constant": constant_error < 1e-9,
        "tau0_positive": lemma.tau0 > 0,
        "tau0_admissible": all(tau_inequalities(below, d, l0)),
    }
    failed = [name for name, ok in checks.items() if not ok]
    return CheckOutcome(
        not failed, cases=len(checks),
        details={"L0": l0, "tau0": lemma.tau0, "removal_error": constant_error, "failed": failed},
    )


def check_lemma_trace(instance, params, rng) -> CheckOutcome:
    """Relaxed run whose per-step size bounds hold; optionally demands a comb."""
    inst = _require(instance, "lemma-trace", blockade=True)
    p = _sample({"k": 3, "d": 2, "tau": 0.01, "require_comb": False, **params}, rng)
    factors = RelaxFactors(**p.get("relax", {}))
    lemma = compute_constants(p["k"], p["d"], tau=p["tau"], t=inst.blockade.length)
    trace = main_lemma_procedure(inst.graph, inst.blockade, lemma, relaxed=factors)
    size_checks = [c for c in trace.all_checks if c.name in ("r-step", "r-induction")]
    broken = [c.name for c in size_checks if c.relaxed_holds is not True]
    comb_ok = trace.outcome != Outcome.COMB or validate_comb(inst.graph, trace.comb)
    comb_required = not p["require_comb"] or trace.outcome == Outcome.COMB
    return CheckOutcome(
        not broken and comb_ok and comb_required,
        cases=len(trace.steps),
        details={
            "outcome": trace.outcome.value,
            "steps": len(trace.steps),
            "comb_t": trace.comb.t if trace.comb else None,
            "comb_k": trace.comb.k if trace.comb else None,
            "broken": broken[:5],
        },
    )


def check_strong_symmetry(instance, params, rng) -> CheckOutcome:
    """Strong freeness of g and of its complement agree."""
    params = _sample(params, rng)
    k = params.get("k", 2)

    def agrees(g) -> bool:
        return is_strongly_k2_free(g, k).is_free == is_strongly_k2_free(complement(g), k).is_free

    if not params.get("exhaustive", False):
        g = _require(instance, "strong-symmetry").graph
        ok = agrees(g)
        return CheckOutcome(ok, counterexample=None if ok else graph_to_dict(g))
    n = params.get("n", 4)
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        g = new_graph(n, [pair for i, pair in enumerate(pairs) if mask >> i & 1])
        if not agrees(g):
            return CheckOutcome(False, mask + 1, counterexample=graph_to_dict(g))
    return CheckOutcome(True, 1 << len(pairs), details={"n": n, "k": k})


CheckFn = Callable[[Optional[GeneratedInstance], dict[str, Any], np.random.Generator], CheckOutcome]

CHECKS: dict[str, dict[str, Any]] = {
    "cograph-oracle": {
        "label": "Recogniser agrees with the union/complement closure",
        "category": "Cographs",
        "fn": check_cograph_oracle,
    },
    "homogeneous-bound": {
        "label": "Homogeneous set of size at least ceil(sqrt(m))",
        "category": "Cographs",
        "fn": check_homogeneous,
    },
    "comb-dichotomy": {
        "label": "Comb or |B| bound, re-validated",
        "category": "Combs",
        "fn": check_comb_dichotomy,
    },
    "layer-invariants": {
        "label": "Layer size and anticompleteness observations",
        "category": "Combs",
        "fn": check_layers,
    },
    "basecase": {
        "label": "Pure blockade with cograph pattern from a rainbow-free blockade",
        "category": "Lemma",
        "fn": check_basecase,
    },
    "keyob": {
        "label": "Teeth blockade stays rainbow-free",
        "category": "Lemma",
        "fn": check_keyob,
    },
    "constants": {
        "label": "K, D_1, L_0 bracketing and the removal constant",
        "category": "Lemma",
        "fn": check_constants,
    },
    "lemma-trace": {
        "label": "Relaxed extraction trace invariants",
        "category": "Lemma",
        "fn": check_lemma_trace,
    },
    "strong-symmetry": {
        "label": "Strong freeness is complement-invariant",
        "category": "Freeness",
        "fn": check_strong_symmetry,
    },
}


def get_check_label(name: str) -> str:
    return CHECKS.get(name, {}).get("label", name)


def run_check(name: str, instance: Optional[GeneratedInstance], params: dict[str, Any],
              rng: np.random.Generator) -> CheckOutcome:
    if name not in CHECKS:
        raise ConfigError(f"unknown check {name!r}", "check")
    fn: CheckFn = CHECKS[name]["fn"]
    return fn(instance, params, rng)
