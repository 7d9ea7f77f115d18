"""Tests for the extraction procedure — comb outcome, certificates, strict refusal, budgets."""

import pytest

from src.blockades import Blockade, is_minor_of
from src.errors import PreconditionError
from src.graphs import new_graph
from src.lemma import Outcome, RelaxFactors, compute_constants, main_lemma_procedure

PARAMS = compute_constants(3, 2.0, tau=0.01)

# Four blocks of four. Hub 0 sees apexes 1, 2, 3 in its own block; apex i sees the first
# vertex of block i.
BLOCKADE = Blockade.of(range(0, 4), range(4, 8), range(8, 12), range(12, 16))
PLANTED = new_graph(16, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 8), (3, 12)])

# Sixteen blocks, each a triangle: every apex has degree 2 and no second neighbourhood.
TRIANGLE_BLOCKADE = Blockade.of(*(range(3 * i, 3 * i + 3) for i in range(16)))
TRIANGLES = new_graph(48, [e for i in range(16) for e in (
    (3 * i, 3 * i + 1), (3 * i, 3 * i + 2), (3 * i + 1, 3 * i + 2))])


class TestCombOutcome:
    def test_planted_comb_is_found(self):
        trace = main_lemma_procedure(PLANTED, BLOCKADE, PARAMS, relaxed=RelaxFactors())
        assert trace.outcome == Outcome.COMB
        assert trace.mode == "relaxed"
        assert trace.comb_base == 0
        assert trace.comb.apexes == [1, 2, 3]
        assert trace.comb.teeth == [frozenset({4}), frozenset({8}), frozenset({12})]
        assert trace.minor == Blockade.of([4], [8], [12])
        assert is_minor_of(trace.minor, BLOCKADE)
        assert trace.minor_checked is True

    def test_single_case1_step(self):
        trace = main_lemma_procedure(PLANTED, BLOCKADE, PARAMS, relaxed=RelaxFactors())
        assert len(trace.steps) == 1
        step = trace.steps[0]
        assert (step.apex, step.delta, step.case) == (0, 3, "case1")
        assert step.removed == frozenset({4, 8, 12})
        # all three teeth have one vertex and only qualify at layer 3
        assert step.layer_count == 3
        widths = {c.name: c.relaxed_holds for c in step.checks}
        assert widths["comb-width"] and widths["comb-length"]

    def test_to_dict(self):
        trace = main_lemma_procedure(PLANTED, BLOCKADE, PARAMS, relaxed=RelaxFactors())
        data = trace.to_dict()
        assert data["outcome"] == "comb"
        assert data["minor"] == [[4], [8], [12]]
        assert data["thresholds"]["U"] == 2


class TestContradictionOutcome:
    def test_edgeless_blockade_reaches_case_ii(self):
        g = new_graph(16, [])
        trace = main_lemma_procedure(g, BLOCKADE, PARAMS, relaxed=RelaxFactors())
        assert trace.outcome == Outcome.CASE_II
        assert [step.case for step in trace.steps] == ["case2"] * 3
        cert = trace.case_ii
        assert cert.r_u_size == 14
        assert cert.apex_total == 0
        assert len(cert.remainder) == 14
        assert cert.remainder_edgeless
        assert all(c.relaxed_holds for c in trace.all_checks if c.name.startswith("r-"))

    def test_large_degree_at_u_reaches_case_i(self):
        trace = main_lemma_procedure(TRIANGLES, TRIANGLE_BLOCKADE, PARAMS, relaxed=RelaxFactors())
        assert trace.thresholds["U"] == 2
        assert trace.outcome == Outcome.CASE_I
        assert [step.apex for step in trace.steps] == [0, 3, 6]
        cert = trace.case_i
        assert cert.blocks == Blockade.of([4, 5], [7, 8])
        assert cert.witness_cograph == frozenset({4, 5, 7, 8})
        assert cert.cograph_lower_bound > cert.g_tau
        assert cert.contradiction

    def test_case_i_does_not_depend_on_step_budget(self):
        long = main_lemma_procedure(TRIANGLES, TRIANGLE_BLOCKADE, PARAMS, relaxed=RelaxFactors(),
                                    max_steps=100)
        assert long.outcome == Outcome.CASE_I
        assert len(long.steps) == 3


class TestRefusalAndBudget:
    def test_strict_mode_refuses_unverified_preconditions(self):
        with pytest.raises(PreconditionError) as exc:
            main_lemma_procedure(PLANTED, BLOCKADE, PARAMS)
        assert any("t-at-least-L0" in reason for reason in exc.value.reasons)

    def test_step_budget(self):
        trace = main_lemma_procedure(PLANTED, BLOCKADE, PARAMS, relaxed=RelaxFactors(),
                                     max_steps=0)
        assert trace.outcome == Outcome.BUDGET_EXHAUSTED
        assert trace.steps == []

    def test_tau_required(self):
        with pytest.raises(ValueError):
            main_lemma_procedure(PLANTED, BLOCKADE, compute_constants(3, 2.0),
                                 relaxed=RelaxFactors())

    def test_relax_factors_must_be_positive(self):
        with pytest.raises(ValueError):
            RelaxFactors(delta=0)
        with pytest.raises(ValueError):
            RelaxFactors(width=-1.0)
