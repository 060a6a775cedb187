from __future__ import annotations

import json

import pytest

from torushom.errors import ZeroDenominator
from torushom.invariants import (
    InvariantReport, TorusLinkSpec, calibrate_homfly, color_prefactor, colored_unknot_column,
    colored_unknot_row, column_invariant, homfly_compare, hrw_ratio_check, invariance_verify,
    is_nonnegative_polynomial, mirror_verify, oracle_in_AQ, reduced_invariant, report, row_invariant,
    specialize_homfly, torus_state, twist_A, uncolored_invariant,
)
from torushom.ratfield import ONE, A, LaurentPoly, Q, RatFunc, T, equal_up_to_monomial, rf_swap_QT
from torushom.recursion import Conventions, MemoTable
from torushom.symmetric import Permutation, Theory


def mono(*e, c=1):
    return LaurentPoly.monomial(e, c)


class TestTorusState:
    @pytest.mark.parametrize("k", [1, 2, 4])
    def test_unknot(self, k):
        s = torus_state(TorusLinkSpec(1, 1, k))
        assert (s.v, s.w, s.sigma) == ("1" * k, "1" * k, Permutation.identity(k))

    def test_trefoil(self):
        s = torus_state(TorusLinkSpec(2, 3, 1))
        assert (s.v, s.w) == ("10", "100")

    def test_link(self):
        s = torus_state(TorusLinkSpec(2, 2, 2))
        assert (s.v, s.w) == ("110", "110")

    def test_knot_formula_agrees(self):
        for m, n, k in [(2, 3, 2), (3, 5, 3), (4, 7, 1)]:
            s = torus_state(TorusLinkSpec(m, n, k))
            assert (s.v, s.w) == ("1" * k + "0" * (k * (m - 1)), "1" * k + "0" * (k * (n - 1)))

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            TorusLinkSpec(0, 1)
        assert TorusLinkSpec(4, 6).components == 2


class TestClosedForms:
    def test_unknot_k1(self):
        expect = RatFunc(ONE + A, [((0, 1, 0), 1), ((0, 0, 1), 1)])
        assert column_invariant(1, 1, 1) == expect
        assert row_invariant(1, 1, 1) == expect

    @pytest.mark.parametrize("k", range(1, 6))
    def test_column_unknot(self, k):
        assert column_invariant(1, 1, k) == colored_unknot_column(k)

    @pytest.mark.parametrize("k", range(1, 6))
    def test_row_unknot_is_mirror_of_column(self, k):
        # the row engine with the mirror-compatible prefactor
        assert row_invariant(1, 1, k) == rf_swap_QT(colored_unknot_column(k))

    def test_row_closed_form_agrees_only_at_k1(self):
        assert row_invariant(1, 1, 1) == colored_unknot_row(1)
        assert row_invariant(1, 1, 2) != colored_unknot_row(2)

    @pytest.mark.parametrize("m,n", [(m, n) for m in range(1, 6) for n in range(1, 6)])
    def test_k1_is_uncolored(self, m, n):
        assert column_invariant(m, n, 1) == uncolored_invariant(m, n)

    def test_prefactor_orientation(self):
        assert color_prefactor(1, Theory.COLUMN) == RatFunc(1)
        assert color_prefactor(2, Theory.ROW) == RatFunc.inverse_binomial((0, 1, -1))
        assert color_prefactor(2, Theory.COLUMN) == RatFunc.inverse_binomial((0, -1, 1))


class TestReduction:
    def test_unknot(self):
        assert reduced_invariant(column_invariant(1, 1, 1), 1) == RatFunc(1)

    def test_colored_unknot_k2(self):
        expect = RatFunc(Q + A, [((0, 1, 0), 1), ((0, -1, 1), 1)])
        assert reduced_invariant(column_invariant(1, 1, 2), 1) == expect

    def test_trefoil(self):
        red = reduced_invariant(column_invariant(2, 3), 1)
        assert red.is_polynomial()
        assert red.num == mono(1, -1, 0) + ONE + mono(0, -1, 1)
        assert is_nonnegative_polynomial(red)

    def test_two_component_unlink_like(self):
        # T(2,2) is the Hopf link: r = 2 still divides exactly
        red = reduced_invariant(column_invariant(2, 2), 2)
        assert not red.is_zero()

    def test_bad_component_count(self):
        with pytest.raises(ValueError):
            reduced_invariant(RatFunc(1), 0)


class TestMirror:
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_unknot_trivial_unit(self, k):
        r = mirror_verify(1, 1, k)
        assert r.passed and r.unit == (1, (0, 0, 0))

    def test_hopf(self):
        # the row side is the exact Q <-> T image, so the unit is trivial here ...
        r = mirror_verify(2, 2, 1)
        assert r.passed and r.unit == (1, (0, 0, 0))
        # ... while the self-symmetry of p_e(10,10) needs the unit Q/T
        p = column_invariant(2, 2, 1)
        assert equal_up_to_monomial(rf_swap_QT(p), p) == (1, (0, 1, -1))

    def test_colored_trefoil(self):
        assert mirror_verify(2, 3, 2).passed


class TestHomfly:
    def test_specialize_examples(self):
        assert specialize_homfly(RatFunc(1)) == RatFunc(1)
        got = specialize_homfly(RatFunc(ONE - T, [((0, 1, 0), 1)]))
        assert got == RatFunc(mono(0, -1, 0, c=-1))
        with pytest.raises(ZeroDenominator):
            specialize_homfly(RatFunc.inverse_binomial((0, 1, 1)))

    def test_calibration_frozen(self):
        cal = calibrate_homfly()
        assert cal.a_sign == -1 and not cal.invert_q
        assert calibrate_homfly() is cal

    def test_twist(self):
        assert twist_A(RatFunc(ONE + A), -1) == RatFunc(ONE - A)
        with pytest.raises(ValueError):
            twist_A(RatFunc.inverse_binomial((1, 0, 0)), -1)

    def test_oracle_rescaling(self):
        # trefoil a^2q^2 + a^2q^-2 - a^4  ->  AQ + AQ^-1 - A^2
        assert oracle_in_AQ(2, 3) == RatFunc(mono(1, 1, 0) + mono(1, -1, 0) - mono(2, 0, 0))

    @pytest.mark.parametrize("m,n", [(2, 3), (3, 4), (2, 5)])
    def test_match(self, m, n):
        assert homfly_compare(m, n).passed


def test_hrw():
    assert hrw_ratio_check(1).unit == (1, (0, 0, 0))
    assert hrw_ratio_check(2).unit == (1, (0, 1, 0))
    assert hrw_ratio_check(4).passed


@pytest.mark.parametrize("conv,pairs", [
    (Conventions(cycle4="up", cycle5="up"), [(4, 5)]),
    (Conventions(embed="last"), [(3, 5)]),
    (Conventions(cycle4="up", cycle5="down"), [(3, 7), (4, 7)]),
])
def test_alternative_conventions_fail(conv, pairs):
    memo = MemoTable(conv)
    for m, n in pairs:
        cmp = homfly_compare(m, n, memo)
        red = reduced_invariant(column_invariant(m, n, 1, memo), 1)
        assert not cmp.passed and not is_nonnegative_polynomial(red)
    if conv.cycle4 == conv.cycle5:
        assert not invariance_verify(3, 5, 2, memo).passed


def test_report_json_schema():
    rep = report(TorusLinkSpec(2, 3, 1), reduced=True, with_mirror=True)
    obj = json.loads(rep.to_json())
    assert set(obj) >= {"m", "n", "k", "theory", "value", "reduced", "unit_vs_mirror"}
    assert obj["unit_vs_mirror"]["sign"] == 1
    assert "T(2,3)" in rep.to_text() and rep.to_latex().endswith("\\]")
    assert isinstance(rep, InvariantReport)
