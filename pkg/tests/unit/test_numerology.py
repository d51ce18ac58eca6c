"""Unit tests for the integer and rational conditions."""

from fractions import Fraction

import pytest
from pydantic import ValidationError

from src.errors import PreconditionError
from src.models.specs import SpecializedSpec, SystemSpec
from src.models.verdicts import AhTag, FcCase, RuleSet, UniquenessTag, WinVerdict
from src.services.numerology import (
    ah_status,
    bridge_k,
    ceil_ratio,
    conum_verdict,
    cover_condition,
    d3_bound,
    delta,
    dimbase_check,
    expected_dim,
    fc_degeneration,
    fc_parameters,
    fr_values,
    frup,
    h_closed_form,
    l_closed_form,
    lh_inequalities,
    lh_params,
    plane_fixed_component,
    plane_nodal_l,
    prime_frup_vanishing,
    quadric_system_dim,
    residual_map_degree,
    secant_codimension,
    th_can_applies,
    th_fc_applies,
    waring_verdict,
    win_check,
)


@pytest.mark.unit
class TestBasics:
    """Test expected dimensions, frup and the interpolation theorem lookup."""

    def test_ceil_ratio(self):
        """35/4 rounds up to 9; 56/4 stays 14."""
        assert ceil_ratio(7, 3, 4) == 9
        assert ceil_ratio(8, 3, 4) == 14

    @pytest.mark.parametrize(
        "d,n,l,expected",
        [(4, 2, 5, -1), (4, 3, 8, 2), (3, 2, 0, 9), (4, 3, 9, -2)],
    )
    def test_expected_dim(self, d, n, l, expected):  # noqa: E741
        assert expected_dim(SystemSpec(d=d, n=n, l=l)) == expected

    @pytest.mark.parametrize(
        "a,b,value",
        [(2, 3, Fraction(2, 3)), (9, 6, Fraction(1, 2)), (8, 6, Fraction(1, 3)), (3, 5, Fraction(0))],
    )
    def test_frup(self, a, b, value):
        """Rounding-up defects of binomial(a+b,a)/(a+1)."""
        assert frup(a, b).value == value

    def test_frup_rejects_zero_arguments(self):
        with pytest.raises(PreconditionError):
            frup(0, 3)

    def test_ah_status_exceptional(self):
        """(4,3,9) is one of the four exceptions."""
        status = ah_status(SystemSpec(d=4, n=3, l=9))
        assert status.tag is AhTag.EXCEPTIONAL
        assert status.dim == 0
        assert status.expected == -2

    def test_ah_status_expected(self):
        status = ah_status(SystemSpec(d=3, n=3, l=4))
        assert status.tag is AhTag.EXPECTED_EFFECTIVE
        assert status.dim == 3

    def test_ah_status_empty(self):
        """Negative expected dimension clamps to -1."""
        status = ah_status(SystemSpec(d=3, n=2, l=5))
        assert status.tag is AhTag.EXPECTED_EMPTY
        assert status.dim == -1

    def test_ah_status_out_of_range(self):
        """Quadrics and binary forms are left to the oracle."""
        assert ah_status(SystemSpec(d=2, n=4, l=4)).tag is AhTag.OUT_OF_THEOREM_RANGE
        assert ah_status(SystemSpec(d=5, n=1, l=2)).tag is AhTag.OUT_OF_THEOREM_RANGE


@pytest.mark.unit
class TestDegenerationConditions:
    """Test dimbase_check and win_check."""

    def test_win_at_lh_parameters(self):
        """(4,3,7,3) passes every d = 4 condition."""
        verdict = win_check(SpecializedSpec.of(4, 3, 7, 3))
        assert verdict.win
        assert verdict.rule_set is RuleSet.D_EQUALS_4
        assert verdict.values["L"] == 9
        assert verdict.values["LH"] == 5
        assert verdict.values["C"] == 1
        assert verdict.conditions["D4"] is True

    def test_d4_failure(self):
        """(4,3,7,4) leaves l - h = 3, not above n."""
        verdict = win_check(SpecializedSpec.of(4, 3, 7, 4))
        assert not verdict.win
        assert verdict.conditions["D4"] is False

    def test_cubic_rule(self):
        """(3,5,7,6): 7 < 56/6 - 7/3 + 1 = 8."""
        verdict = win_check(SpecializedSpec.of(3, 5, 7, 6))
        assert d3_bound(5) == 8
        assert verdict.rule_set is RuleSet.D_EQUALS_3
        assert verdict.win

    def test_win_check_preconditions(self):
        """n >= 3, d >= 3 and l > h are required."""
        with pytest.raises(PreconditionError):
            win_check(SpecializedSpec.of(4, 2, 5, 2))
        with pytest.raises(PreconditionError):
            win_check(SpecializedSpec.of(4, 3, 3, 3))

    def test_dimbase_without_conditions(self):
        """l = h = 0 is always a win for d >= 2."""
        for d in range(2, 7):
            verdict = dimbase_check(SpecializedSpec.of(d, 2, 0, 0))
            assert verdict.win, d
            assert verdict.rule_set is RuleSet.DIMBASE_DIRECT

    def test_dimbase_by_formula(self):
        """(5,3,11,4) satisfies all four hypotheses."""
        verdict = dimbase_check(SpecializedSpec.of(5, 3, 11, 4))
        assert verdict.win
        assert verdict.values["bound"] == 3

    def test_dimbase_binary_trace(self):
        """For n = 2 the trace G_{5,1,1} is a binary system of dimension 3."""
        verdict = dimbase_check(SpecializedSpec.of(5, 2, 2, 1))
        assert not verdict.indeterminate
        assert verdict.conditions["G_trace_expected"] is True
        assert verdict.values["bound"] == 11
        assert verdict.values["dim_G_d_minus_2"] == 6
        assert verdict.win

    def test_dimbase_needs_measured_quadric_dimension(self):
        """(4,4,12,8) depends on dim G_{2,4,4}, outside the theorem."""
        spec = SpecializedSpec.of(4, 4, 12, 8)
        unresolved = dimbase_check(spec)
        assert unresolved.indeterminate
        assert not unresolved.win
        assert unresolved.conditions["bound"] is None
        resolved = dimbase_check(spec, {(2, 4, 4): 0})
        assert resolved.win
        assert resolved.values["bound"] == 7

    def test_win_requires_conditions(self):
        """A recorded win must carry its rule set's conditions."""
        with pytest.raises(ValidationError):
            WinVerdict(spec=SpecializedSpec.of(4, 3, 7, 3), win=True, rule_set=RuleSet.D_EQUALS_4, conditions={"L": True})


@pytest.mark.unit
class TestInductionParameters:
    """Test l_d, h_d, delta and the closed forms."""

    @pytest.mark.parametrize("d,n,expected", [(4, 3, (7, 3)), (4, 6, (24, 15)), (5, 3, (11, 4))])
    def test_lh_params(self, d, n, expected):
        assert lh_params(d, n) == expected

    @pytest.mark.parametrize("d,n,expected", [(4, 3, 1), (4, 6, 6), (6, 3, 5)])
    def test_delta(self, d, n, expected):
        assert delta(d, n) == expected

    def test_lh_params_range(self):
        with pytest.raises(PreconditionError):
            lh_params(3, 3)

    def test_fr_values(self):
        """fr_l(5,9) = 1/2 - 1/3."""
        _, fr_l = fr_values(5, 9)
        assert fr_l == Fraction(1, 6)

    def test_fr_difference_identity(self):
        """fr_l - fr_h = frup(n,d) - frup(n-1,d)."""
        for d in range(4, 9):
            for n in range(3, 9):
                fr_h, fr_l = fr_values(d, n)
                assert fr_l - fr_h == frup(n, d).value - frup(n - 1, d).value

    def test_closed_forms_match(self):
        """The closed forms reproduce lh_params exactly."""
        assert h_closed_form(4, 3) == 3
        assert l_closed_form(4, 3) == 7
        for d in range(4, 12):
            for n in range(3, 10):
                l, h = lh_params(d, n)  # noqa: E741
                assert l_closed_form(d, n) == l
                assert h_closed_form(d, n) == h

    def test_lh_inequalities(self):
        """(4,3) is the one case where the trace inequality for h fails."""
        small = lh_inequalities(4, 3)
        assert small["H"] is False
        assert small["L"] is True
        assert small["C_table"] is True
        assert lh_inequalities(4, 4)["H"] is True
        assert lh_inequalities(5, 4)["D4"] is None

    @pytest.mark.parametrize(
        "d,n,l,expected",
        [(4, 3, 7, True), (3, 5, 7, True), (3, 5, 8, False), (4, 3, 6, False), (4, 2, 5, False)],
    )
    def test_th_can_applies(self, d, n, l, expected):  # noqa: E741
        assert th_can_applies(SystemSpec(d=d, n=n, l=l)) is expected


@pytest.mark.unit
class TestNodalityCases:
    """Test the l0, l1, l2 cases for forms of degree D."""

    def test_high_dimensional_sextic_case(self):
        """(6,9,500): the l0 condition is exactly -1."""
        verdict = th_fc_applies(6, 9, 500)
        assert verdict.case is FcCase.NONE
        assert verdict.parameters.l0 == 500
        assert verdict.parameters.l1 == 499
        assert verdict.parameters.l0_condition == -1
        assert not verdict.parameters.frup_trace_vanishes

    def test_l1_case_with_dimbase_override(self):
        """(4,4,12) is the l1 case, h1 = 8, routed to dimbase_check."""
        verdict = th_fc_applies(4, 4, 12)
        assert verdict.case is FcCase.L1
        assert verdict.parameters.h1 == 8
        assert verdict.parameters.overrides == {"l1": "dimbase"}
        degeneration = fc_degeneration(4, 4, 12, {(2, 4, 4): 0})
        assert degeneration.rule_set is RuleSet.DIMBASE_DIRECT
        assert degeneration.win

    def test_l1_case_with_win_override(self):
        """(4,3,7) uses h1 = 3, which passes (D4)."""
        verdict = th_fc_applies(4, 3, 7)
        assert verdict.case is FcCase.L1
        assert verdict.parameters.h1 == 3
        degeneration = fc_degeneration(4, 3, 7)
        assert degeneration.win
        assert degeneration.rule_set is RuleSet.EXPLICIT_OVERRIDE
        assert degeneration.conditions["D4"] is True

    def test_formula_h_keeps_degree_rule_set(self):
        """(5,3,13) is the l0 case with h0 = 6 from the general formula."""
        verdict = th_fc_applies(5, 3, 13)
        assert verdict.case is FcCase.L0
        assert verdict.parameters.h0 == 6
        assert verdict.parameters.overrides == {}
        assert fc_degeneration(5, 3, 13).rule_set is RuleSet.D_AT_LEAST_5

    def test_no_case(self):
        """(4,3,13) matches neither l0 = 8 nor l1 = 7."""
        verdict = th_fc_applies(4, 3, 13)
        assert verdict.case is FcCase.NONE
        assert (verdict.parameters.l0, verdict.parameters.l1) == (8, 7)
        assert verdict.parameters.l0_condition == 0
        with pytest.raises(PreconditionError):
            fc_degeneration(4, 3, 13)

    def test_fc_parameters_range(self):
        with pytest.raises(PreconditionError):
            fc_parameters(3, 3)


@pytest.mark.unit
class TestNodalityAndSecants:
    """Test conum_verdict, prime vanishing and secant codimensions."""

    def test_prime_degree_is_nodal(self):
        for l in range(1, 12):  # noqa: E741
            assert conum_verdict(SystemSpec(d=5, n=3, l=l)).nodal is True

    def test_listed_exception(self):
        verdict = conum_verdict(SystemSpec(d=4, n=3, l=8))
        assert verdict.nodal is False
        assert verdict.exception == "pencil of quadrics squared"

    def test_indeterminate_degree(self):
        """Degree 6 carries no statement."""
        assert conum_verdict(SystemSpec(d=6, n=9, l=500)).nodal is None

    def test_conum_needs_effective_system(self):
        with pytest.raises(PreconditionError):
            conum_verdict(SystemSpec(d=4, n=3, l=10))
        with pytest.raises(PreconditionError):
            conum_verdict(SystemSpec(d=4, n=2, l=1))

    def test_prime_frup_vanishing(self):
        assert prime_frup_vanishing(5, 3)
        assert prime_frup_vanishing(7, 10)
        with pytest.raises(PreconditionError):
            prime_frup_vanishing(9, 3)

    @pytest.mark.parametrize("d,n,k,expected", [(4, 3, 6, True), (4, 3, 8, False), (5, 4, 20, True)])
    def test_cover_condition(self, d, n, k, expected):
        assert cover_condition(d, n, k) is expected

    def test_secant_codimension(self):
        """codim sec_k = dim G_{d,n,k+1} + 1, with the theorem's dimensions."""
        assert secant_codimension(4, 3, 6) == 7
        assert secant_codimension(5, 4, 20) == 21
        assert secant_codimension(4, 3, 8) == 1


@pytest.mark.unit
class TestUniqueness:
    """Test the uniqueness verdicts."""

    @pytest.mark.parametrize("d,n,expected", [(5, 2, 6), (3, 3, 4), (4, 3, None), (7, 1, 3)])
    def test_bridge_k(self, d, n, expected):
        assert bridge_k(d, n) == expected

    @pytest.mark.parametrize(
        "d,n,tag",
        [
            (5, 2, UniquenessTag.UNIQUE),
            (7, 1, UniquenessTag.UNIQUE),
            (3, 3, UniquenessTag.UNIQUE),
            (1, 4, UniquenessTag.UNIQUE),
            (7, 2, UniquenessTag.NOT_UNIQUE),
            (6, 3, UniquenessTag.NOT_UNIQUE),
            (2, 2, UniquenessTag.NOT_UNIQUE),
            (6, 1, UniquenessTag.NO_CANONICAL_FORM),
            (4, 3, UniquenessTag.NO_CANONICAL_FORM),
            (4, 5, UniquenessTag.OUT_OF_THEOREM_RANGE),
        ],
    )
    def test_waring_verdict(self, d, n, tag):
        assert waring_verdict(d, n).tag is tag

    def test_summand_count(self):
        """Binary septics need four summands, plane quintics seven."""
        assert waring_verdict(7, 1).s == 4
        assert waring_verdict(5, 2).s == 7
        assert waring_verdict(6, 3).s == 21

    def test_verdict_rejects_bad_input(self):
        with pytest.raises(PreconditionError):
            waring_verdict(0, 2)

    def test_residual_map_degree(self):
        """Quartics through four double points give a pencil, quintics through six a birational map."""
        assert residual_map_degree(4, 2) == 0
        assert residual_map_degree(5, 2) == 1
        assert residual_map_degree(4, 3) is None


@pytest.mark.unit
class TestPlaneCurves:
    def test_plane_nodal_l(self):
        assert plane_nodal_l(5) == 6
        assert plane_nodal_l(6) == 9

    def test_fixed_component_only_for_double_cubic(self):
        assert plane_fixed_component(6, 9)
        assert not plane_fixed_component(5, 6)
        assert not plane_fixed_component(7, plane_nodal_l(7))

    @pytest.mark.parametrize("n,l,expected", [(4, 4, 0), (3, 1, 5), (3, 5, -1), (2, 3, -1)])
    def test_quadric_system_dim(self, n, l, expected):  # noqa: E741
        """Quadric cones with vertex spanned by the points."""
        assert quadric_system_dim(n, l) == expected
