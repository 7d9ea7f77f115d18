"""Comb-extraction procedure, its constants, the base case and the key reduction."""

from .basecase import pure_blockade_from_rainbow22
from .constants import (
    K,
    REMOVAL_CONSTANT,
    LemmaParams,
    base_remark_dimensions,
    compute_constants,
    d_s,
    find_l0,
    find_tau0,
    first_inequality,
    second_inequality,
    tau_inequalities,
)
from .keyob import (
    best_singleton_comb,
    comb_to_rainbow_minor,
    find_singleton_comb,
    keyob_preconditions,
)
from .models import (
    BoundCheck,
    CaseICertificate,
    CaseIICertificate,
    ConstructionTrace,
    Outcome,
    RelaxFactors,
    TraceStep,
)
from .procedure import Scale, main_lemma_procedure

__all__ = [
    "pure_blockade_from_rainbow22",
    "K",
    "REMOVAL_CONSTANT",
    "LemmaParams",
    "base_remark_dimensions",
    "compute_constants",
    "d_s",
    "find_l0",
    "find_tau0",
    "first_inequality",
    "second_inequality",
    "tau_inequalities",
    "best_singleton_comb",
    "comb_to_rainbow_minor",
    "find_singleton_comb",
    "keyob_preconditions",
    "BoundCheck",
    "CaseICertificate",
    "CaseIICertificate",
    "ConstructionTrace",
    "Outcome",
    "RelaxFactors",
    "TraceStep",
    "Scale",
    "main_lemma_procedure",
]
