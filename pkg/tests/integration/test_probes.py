"""Integration tests for the geometric probes.

Members come from the interpolation oracle, so these tests exercise the
sampling, kernel and probe layers together.
"""

import pytest

from src.algebra.elimination import eliminate
from src.algebra.polynomial import HomogeneousPoly, random_form, random_matrix
from src.algebra.univariate import uni_gcd
from src.errors import PreconditionError
from src.models.reports import MapVerdict, SingularLocus
from src.models.specs import SystemSpec
from src.services.interpolation import kernel_members, random_member, sample_config, system_dim
from src.services.probes import (
    common_zero_over,
    jacobian_rank,
    map_rank_and_degree,
    node_check,
    plane_sing_finite,
    singularity_report,
    space_sing_probe,
    square_detect,
    veronese_secant_dim,
)


def _member(spec: SystemSpec, field, seed: int = 0):
    config = sample_config(spec, field, seed)
    return random_member(spec, config, seed), config


@pytest.mark.integration
class TestNodeCheck:
    """Test ordinary double point detection."""

    def test_node(self, prime_field):
        """x^2 + y^2 at (0:0:1)."""
        form = HomogeneousPoly.from_terms(prime_field, 2, 2, {(2, 0, 0): 1, (0, 2, 0): 1})
        check = node_check(form, (0, 0, 1))
        assert check.is_singular
        assert check.hessian_rank == 2
        assert check.is_node

    def test_cusp(self, prime_field):
        """z y^2 - x^3 at (0:0:1) has a rank-one quadratic part."""
        form = HomogeneousPoly.from_terms(prime_field, 2, 3, {(0, 2, 1): 1, (3, 0, 0): -1})
        check = node_check(form, (0, 0, 1))
        assert check.is_singular
        assert check.hessian_rank == 1
        assert not check.is_node

    def test_point_off_hypersurface(self, prime_field):
        form = HomogeneousPoly.from_terms(prime_field, 2, 2, {(2, 0, 0): 1, (0, 2, 0): 1})
        check = node_check(form, (1, 0, 0))
        assert not check.on_hypersurface
        assert check.hessian_rank is None

    def test_chart_invariance(self, prime_field):
        """Both charts through an imposed point give the same verdict."""
        member, config = _member(SystemSpec(d=4, n=3, l=7), prime_field, 1)
        point = config.points[0]
        first, second = node_check(member, point, chart=0), node_check(member, point, chart=1)
        assert (first.is_singular, first.hessian_rank) == (second.is_singular, second.hessian_rank) == (True, 3)

    def test_coordinate_invariance(self, prime_field, rng):
        """Conjugating by an invertible substitution preserves the verdict."""
        member, config = _member(SystemSpec(d=4, n=3, l=7), prime_field, 2)
        change = random_matrix(prime_field, 4, 4, rng)
        moved = member.substitute(change)
        inverse = change.inverse()
        for point in config.points:
            original = node_check(member, point)
            conjugated = node_check(moved, inverse.apply(point))
            assert (original.is_singular, original.hessian_rank) == (conjugated.is_singular, conjugated.hessian_rank)


@pytest.mark.integration
class TestPlaneCurves:
    """Test the exact gcd probe for plane curves."""

    def test_fermat_quintic_is_smooth(self, prime_field):
        form = HomogeneousPoly.from_terms(prime_field, 2, 5, {(5, 0, 0): 1, (0, 5, 0): 1, (0, 0, 5): 1})
        assert plane_sing_finite(form) == (True, None)

    def test_general_quintic_through_six_double_points(self, prime_field):
        member, config = _member(SystemSpec(d=5, n=2, l=6), prime_field)
        report = singularity_report(member, config.points)
        assert report.locus is SingularLocus.FINITE
        assert report.all_nodes

    def test_double_cubic(self, prime_field):
        """The sextic singular at nine points is a squared cubic."""
        member, _ = _member(SystemSpec(d=6, n=2, l=9), prime_field)
        finite, fixed = plane_sing_finite(member)
        assert not finite
        assert fixed.d == 3
        detected = square_detect(member)
        assert detected is not None
        c, cubic = detected
        assert (cubic * cubic).scale(c) == member

    def test_squares_are_never_finite(self, prime_field, rng):
        for d in (1, 2, 3):
            g = random_form(prime_field, 2, d, rng)
            finite, fixed = plane_sing_finite(g * g)
            assert not finite
            assert fixed.d >= d

    def test_needs_ternary_form(self, prime_field, rng):
        with pytest.raises(PreconditionError):
            plane_sing_finite(random_form(prime_field, 3, 3, rng))


@pytest.mark.integration
class TestSquareDetect:
    """Test perfect-square detection."""

    def test_constructed_square(self, prime_field):
        g = HomogeneousPoly.from_terms(prime_field, 2, 2, {(2, 0, 0): 1, (0, 1, 1): 1})
        c, root = square_detect((g * g).scale(7))
        assert (root * root).scale(c) == (g * g).scale(7)
        assert root.d == 2

    def test_generic_quartic(self, prime_field, rng):
        for _ in range(3):
            assert square_detect(random_form(prime_field, 2, 4, rng)) is None

    def test_odd_degree_rejected(self, prime_field, rng):
        with pytest.raises(PreconditionError):
            square_detect(random_form(prime_field, 2, 3, rng))


@pytest.mark.integration
class TestSpaceProbe:
    """Test the plane-slice probe for surfaces in P^3."""

    def test_pencil_of_squared_quadrics(self, prime_field):
        """Members of G_{4,3,8} are singular along a curve."""
        member, config = _member(SystemSpec(d=4, n=3, l=8), prime_field)
        assert space_sing_probe(member, slices=3, seed=0).verdict is SingularLocus.CURVE
        assert singularity_report(member, config.points).locus is SingularLocus.CURVE

    def test_nodal_quartic(self, prime_field):
        """Members of G_{4,3,7} have seven nodes and nothing else."""
        member, config = _member(SystemSpec(d=4, n=3, l=7), prime_field)
        report = singularity_report(member, config.points, slices=3, seed=0)
        assert report.hessian_ranks == [3] * 7
        assert report.all_nodes
        assert report.locus is SingularLocus.FINITE
        assert "hit" not in report.witness["slices"]

    def test_smooth_quadric(self, prime_field):
        form = HomogeneousPoly.from_terms(
            prime_field, 3, 2, {(2, 0, 0, 0): 1, (0, 2, 0, 0): 1, (0, 0, 2, 0): 1, (0, 0, 0, 2): 1}
        )
        assert space_sing_probe(form, slices=2).verdict is SingularLocus.FINITE

    def test_higher_dimension_not_probed(self, prime_field):
        member, config = _member(SystemSpec(d=3, n=4, l=2), prime_field)
        assert singularity_report(member, config.points).locus is SingularLocus.NOT_PROBED

    @staticmethod
    def _lines(field, *rows):
        return [HomogeneousPoly.from_terms(field, 2, 1, {(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c}) for a, b, c in rows]

    def test_shared_x1_without_common_point(self, prime_field):
        """Every resultant against x0^2 - x2^2 vanishes at x1 = 0, but at x0 = 1 or x0 = -1."""
        conic = HomogeneousPoly.from_terms(prime_field, 2, 2, {(2, 0, 0): 1, (0, 0, 2): -1})
        lines = self._lines(prime_field, (1, 1, -1), (1, 1, 1), (1, 2, -1))
        resultants = [eliminate(conic, line, variable=0, chart=2) for line in lines]
        assert all(prime_field.is_zero(r.evaluate(0)) for r in resultants)
        candidates = uni_gcd(uni_gcd(resultants[0], resultants[1]), resultants[2])
        assert candidates.degree == 1
        assert common_zero_over([conic, *lines], candidates) is False

    def test_common_point_confirmed(self, prime_field):
        """All four forms vanish at (1, 0, 1)."""
        conic = HomogeneousPoly.from_terms(prime_field, 2, 2, {(2, 0, 0): 1, (0, 0, 2): -1})
        lines = self._lines(prime_field, (1, 1, -1), (1, -1, -1), (1, 3, -1))
        first, second = (eliminate(conic, line, variable=0, chart=2) for line in lines[:2])
        candidates = uni_gcd(first, second)
        assert common_zero_over([conic, *lines], candidates) is True

    def test_confirmation_over_rationals(self, rational_field):
        """x0^2 + x1^2 and x0^2 + x2^2 meet only at (+-i, +-1, 1), off the rational points."""
        forms = [
            HomogeneousPoly.from_terms(rational_field, 2, 2, {(2, 0, 0): 1, (0, 2, 0): 1}),
            HomogeneousPoly.from_terms(rational_field, 2, 2, {(2, 0, 0): 1, (0, 0, 2): 1}),
        ]
        candidates = eliminate(forms[0], forms[1], variable=0, chart=2)
        assert candidates.degree == 4
        assert common_zero_over(forms, candidates) is True


@pytest.mark.integration
class TestSecant:
    """Test Terracini secant dimensions."""

    def test_tangent_space(self, prime_field):
        report = veronese_secant_dim(4, 3, 0, prime_field, trials=1)
        assert report.measured_dim == 3
        assert report.defect == 0

    @pytest.mark.parametrize("d,n,k,measured", [(4, 2, 4, 13), (3, 4, 6, 33)])
    def test_defective(self, prime_field, d, n, k, measured):
        report = veronese_secant_dim(d, n, k, prime_field, trials=2)
        assert report.measured_dim == measured
        assert report.defect == 1
        assert report.duality_holds

    def test_duality_with_interpolation(self, prime_field):
        """Secant and interpolation dimensions are two readings of one matrix."""
        for d in range(2, 5):
            for n in range(1, 4):
                for k in range(0, 4):
                    secant = veronese_secant_dim(d, n, k, prime_field, trials=1, seed=k)
                    interpolation = system_dim(SystemSpec(d=d, n=n, l=k + 1), prime_field, trials=1, seed=k)
                    assert secant.measured_dim == secant.N - 1 - interpolation.actual


@pytest.mark.integration
class TestMapDegree:
    """Test the map given by a net of plane curves."""

    def test_quintics_through_six_double_points(self, prime_field):
        spec = SystemSpec(d=5, n=2, l=6)
        config = sample_config(spec, prime_field, 0)
        members = kernel_members(spec, config)
        assert len(members) == 3
        for seed in range(5):
            report = map_rank_and_degree(members, config.points, seed)
            assert report.verdict is MapVerdict.BIRATIONAL
            assert report.fiber_count == 1

    def test_quartics_through_four_double_points(self, prime_field):
        spec = SystemSpec(d=4, n=2, l=4)
        config = sample_config(spec, prime_field, 0)
        report = map_rank_and_degree(kernel_members(spec, config), config.points)
        assert report.verdict is MapVerdict.COMPOSED_WITH_PENCIL
        assert report.generic_jacobian_rank <= 2

    def test_identity(self, prime_field):
        forms = [HomogeneousPoly.variable(prime_field, 2, i) for i in range(3)]
        report = map_rank_and_degree(forms)
        assert report.verdict is MapVerdict.BIRATIONAL
        assert report.fiber_count == 1

    def test_squaring_map_has_four_point_fibers(self, prime_field):
        forms = [HomogeneousPoly.variable(prime_field, 2, i).power(2) for i in range(3)]
        report = map_rank_and_degree(forms)
        assert report.verdict is MapVerdict.FINITE_DEGREE_K
        assert report.fiber_count == 4

    def test_wrong_member_count(self, prime_field):
        with pytest.raises(PreconditionError):
            map_rank_and_degree([HomogeneousPoly.variable(prime_field, 2, 0)])

    def test_jacobian_rank_of_identity(self, prime_field):
        forms = [HomogeneousPoly.variable(prime_field, 2, i) for i in range(3)]
        assert jacobian_rank(forms, (1, 2, 3)) == 3
        repeated = [forms[0], forms[0], forms[1]]
        assert jacobian_rank(repeated, (1, 2, 3)) == 2
