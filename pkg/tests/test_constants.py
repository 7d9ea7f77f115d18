"""Tests for lemma constants — K, the removal constant, L_0, tau_0 and base-case dimensions."""

from fractions import Fraction

import pytest
import sympy

from src.lemma import (
    K,
    REMOVAL_CONSTANT,
    base_remark_dimensions,
    compute_constants,
    d_s,
    find_l0,
    find_tau0,
    first_inequality,
    second_inequality,
    tau_inequalities,
)


def removal_constant_exact():
    three_halves = sympy.Rational(3, 2)
    expr = 3 ** three_halves / (three_halves - sympy.sqrt(three_halves))
    return sympy.N(expr, 50)


class TestFixedConstants:
    def test_geometric_sum(self):
        assert K == Fraction(2)

    def test_removal_constant_matches_high_precision(self):
        assert REMOVAL_CONSTANT == pytest.approx(float(removal_constant_exact()), rel=1e-12)

    def test_removal_constant_value(self):
        assert 18.87 < REMOVAL_CONSTANT < 18.88


class TestL0:
    @pytest.mark.parametrize("d", [2.0, 3.0])
    def test_minimal_and_bracketed(self, d):
        l0 = find_l0(d)
        assert first_inequality(l0) and second_inequality(l0, d)
        assert not (first_inequality(l0 - 1) and second_inequality(l0 - 1, d))

    def test_holds_above(self):
        l0 = find_l0(2.0)
        for L in (l0 + 1, 2 * l0, 10 * l0):
            assert first_inequality(L) and second_inequality(L, 2.0)

    def test_first_inequality_dominates(self):
        # x^2 >= 12x + 21.88 with x = L^(1/8) needs x above 13
        assert find_l0(2.0) > 13 ** 8


class TestTau0:
    def test_tau0_is_positive_and_admissible(self):
        l0 = find_l0(2.0)
        tau0 = find_tau0(2.0, l0)
        assert 0 < tau0 <= 1 / 32
        assert all(tau_inequalities(tau0 * (1 - 1e-6), 2.0, l0))

    def test_third_inequality_fails_above_bound(self):
        l0 = find_l0(2.0)
        assert not tau_inequalities(1 / 32 + 1e-3, 2.0, l0)[2]


class TestComputeConstants:
    def test_params(self):
        params = compute_constants(3, 2.0, tau=0.01)
        assert params.l0 == find_l0(2.0)
        assert params.tau_admissible
        assert params.ds_table[:2] == [4, 128]
        assert params.to_dict()["K"] == "2"

    def test_tau_not_admissible(self):
        assert not compute_constants(3, 2.0, tau=0.5).tau_admissible
        assert not compute_constants(3, 2.0).tau_admissible

    def test_validation(self):
        with pytest.raises(ValueError):
            compute_constants(1, 2.0)
        with pytest.raises(ValueError):
            compute_constants(3, 1.5)


class TestBaseDimensions:
    def test_d_s_values(self):
        assert [d_s(s) for s in (1, 2, 3)] == [4, 128, 4096]

    def test_d_s_needs_positive_s(self):
        with pytest.raises(ValueError):
            d_s(0)

    @pytest.mark.parametrize("t,expected", [(4, (2, 4)), (127, (2, 4)), (128, (4, 128)),
                                            (5000, (8, 4096))])
    def test_dimensions(self, t, expected):
        assert base_remark_dimensions(t) == expected

    def test_t_too_small(self):
        with pytest.raises(ValueError):
            base_remark_dimensions(3)
