"""Singularity probes: nodes at given points and finiteness of the singular locus."""

import logging
from collections.abc import Sequence

import numpy as np
from sympy import groebner

from src.algebra.elimination import eliminate
from src.algebra.fields import Raw, Scalar, require_characteristic_above
from src.algebra.matrix import ExactMatrix
from src.algebra.polynomial import HomogeneousPoly, random_matrix
from src.algebra.sympy_bridge import generators_for, poly_gcd, squarefree_decomposition, to_sympy
from src.algebra.univariate import UniPoly, uni_gcd
from src.errors import DegenerateEliminationError, PreconditionError
from src.models.reports import (
    NodeCheck,
    SingularityReport,
    SingularLocus,
    SliceOutcome,
    SpaceProbeResult,
)

logger = logging.getLogger(__name__)

MAX_RETRIES = 8


def _normalize(form: HomogeneousPoly, point: Sequence[Raw], chart: int | None) -> tuple[tuple[Raw, ...], int]:
    field = form.field
    values = [field.convert(x) for x in point]
    if chart is None:
        chart = next((i for i, x in enumerate(values) if not field.is_zero(x)), None)
        if chart is None:
            raise PreconditionError("The zero vector is not a projective point", operation="node_check")
    elif field.is_zero(values[chart]):
        raise PreconditionError(f"Coordinate {chart} of the point vanishes", operation="node_check")
    scale = field.inv(values[chart])
    return tuple(field.mul(x, scale) for x in values), chart


def node_check(form: HomogeneousPoly, point: Sequence[Raw], chart: int | None = None) -> NodeCheck:
    """Whether ``form`` has an ordinary double point at ``point``.

    The Hessian is taken in the affine chart x_chart = 1, i.e. the projective
    Hessian with that row and column removed.
    """
    field = form.field
    if form.d < 2:
        raise PreconditionError(f"node_check needs d >= 2, got {form.d}", operation="node_check")
    require_characteristic_above(field, form.d, "node_check")
    normalized, chart = _normalize(form, point, chart)
    if not field.is_zero(form.evaluate(normalized)):
        return NodeCheck(on_hypersurface=False, is_singular=False, n=form.n)
    singular = all(field.is_zero(value) for value in form.gradient_at(normalized))
    hessian = form.hessian_at(normalized)
    affine = [
        [value for j, value in enumerate(row) if j != chart] for i, row in enumerate(hessian) if i != chart
    ]
    rank = ExactMatrix.from_rows(field, affine, form.n).rank() if form.n else 0
    return NodeCheck(on_hypersurface=True, is_singular=singular, hessian_rank=rank, chart=chart, n=form.n)


def plane_sing_finite(form: HomogeneousPoly) -> tuple[bool, HomogeneousPoly | None]:
    """Finiteness of the singular locus of a plane curve and its fixed singular part.

    The locus is finite exactly when the three partials have constant gcd.
    """
    if form.n != 2 or form.is_zero():
        raise PreconditionError("plane_sing_finite needs a nonzero ternary form", operation="plane_sing_finite")
    if form.d < 2:
        return True, None
    fixed = poly_gcd(form.gradient())
    return fixed is None, fixed


def square_detect(form: HomogeneousPoly, seed: int = 0) -> tuple[Scalar, HomogeneousPoly] | None:
    """(c, g) with form = c * g^2, or None when ``form`` is not a square."""
    if form.d % 2:
        raise PreconditionError(f"square_detect needs an even degree, got {form.d}", operation="square_detect")
    if form.is_zero():
        return None
    field = form.field
    factors = squarefree_decomposition(form, np.random.default_rng(seed))
    if any(multiplicity % 2 for _, multiplicity in factors):
        return None
    root: HomogeneousPoly | None = None
    for factor, multiplicity in factors:
        piece = factor.power(multiplicity // 2)
        root = piece if root is None else root * piece
    if root is None:
        return None
    square = root * root
    exponents, value = next(iter(square.terms().items()))
    c = field.div(form.coefficient(exponents).value, value)
    if square.scale(c) != form:
        logger.warning("Square-free factors do not recombine to the input form")
        return None
    return Scalar(field, c), root


def _gcd_all(polys: list[UniPoly]) -> UniPoly:
    result = polys[0]
    for poly in polys[1:]:
        result = uni_gcd(result, poly)
    return result


def common_zero_over(forms: Sequence[HomogeneousPoly], candidates: UniPoly) -> bool:
    """Whether ternary ``forms`` share a zero on x_2 = 1 whose x_1 is a root of ``candidates``.

    Decided by a Groebner basis over the forms' field, so candidate roots in
    an extension of GF(p) are covered.
    """
    if any(form.n != 2 for form in forms):
        raise PreconditionError("common_zero_over expects ternary forms", operation="common_zero_over")
    if candidates.is_zero():
        raise PreconditionError("Candidate polynomial is zero", operation="common_zero_over")
    x0, x1, x2 = generators_for(2)
    equations = [to_sympy(form).eval(x2, 1).as_expr() for form in forms if not form.is_zero()]
    equations.append(candidates.to_sympy(x1).as_expr())
    basis = groebner(equations, x0, x1, domain=candidates.field.sympy_domain)
    return not any(poly.is_ground for poly in basis.polys)


def _slice_hit(restricted: list[HomogeneousPoly], rng: np.random.Generator) -> bool:
    """Whether the restricted partials share a zero on the slice.

    Resultants of random combinations against the first one, eliminating x0,
    give candidate x1 values; every candidate is then checked against all
    four forms.

    Raises:
        DegenerateEliminationError: when this randomization is unusable
    """
    field = restricted[0].field
    nonzero = [form for form in restricted if not form.is_zero()]
    if not nonzero:
        return True
    combos = []
    for _ in range(4):
        combo = HomogeneousPoly.zero(field, 2, restricted[0].d)
        for form in restricted:
            combo = combo + form.scale(field.random_element(rng))
        combos.append(combo)
    resultants = [eliminate(combos[0], other, variable=0, chart=2) for other in combos[1:]]
    if all(r.is_zero() for r in resultants):
        # A common component: the slice meets the singular locus in a curve.
        if poly_gcd(nonzero) is not None:
            return True
        raise DegenerateEliminationError("Random combinations share a component", operation="space_sing_probe")
    candidates = _gcd_all(resultants)
    if candidates.degree <= 0:
        return False
    return common_zero_over(restricted, candidates)


def space_sing_probe(form: HomogeneousPoly, slices: int = 3, seed: int = 0) -> SpaceProbeResult:
    """Probabilistic test for a curve of singular points of a surface in P^3.

    Each slice restricts the four partials to a random plane; a confirmed
    common zero there means the singular locus meets a general plane.
    """
    field = form.field
    if form.n != 3:
        raise PreconditionError("space_sing_probe needs a quaternary form", operation="space_sing_probe")
    if form.d < 2:
        raise PreconditionError("space_sing_probe needs d >= 2", operation="space_sing_probe")
    require_characteristic_above(field, form.d, "space_sing_probe")
    rng = np.random.default_rng(seed)
    partials = form.gradient()
    outcomes: list[SliceOutcome] = []
    retries = 0
    while len([o for o in outcomes if o is not SliceOutcome.DEGENERATE]) < slices:
        if retries > MAX_RETRIES:
            logger.warning(f"space_sing_probe gave up after {retries} degenerate slices")
            return SpaceProbeResult(verdict=SingularLocus.INCONCLUSIVE, slices=outcomes, retries=retries)
        plane = random_matrix(field, 4, 3, rng)
        if plane.rank() < 3:
            outcomes.append(SliceOutcome.DEGENERATE)
            retries += 1
            continue
        restricted = [partial.substitute(plane) for partial in partials]
        try:
            hit = _slice_hit(restricted, rng)
        except DegenerateEliminationError as e:
            logger.debug(f"Degenerate slice: {e}")
            outcomes.append(SliceOutcome.DEGENERATE)
            retries += 1
            continue
        outcomes.append(SliceOutcome.HIT if hit else SliceOutcome.MISS)
        if hit:
            return SpaceProbeResult(verdict=SingularLocus.CURVE, slices=outcomes, retries=retries)
    return SpaceProbeResult(verdict=SingularLocus.FINITE, slices=outcomes, retries=retries)


def singularity_report(
    form: HomogeneousPoly, points: Sequence[Sequence[Raw]], slices: int = 3, seed: int = 0
) -> SingularityReport:
    """Node checks at ``points`` plus the finiteness probe available for this n."""
    checks = [node_check(form, point) for point in points]
    witness: dict[str, object] = {}
    if form.n == 2:
        finite, fixed = plane_sing_finite(form)
        locus = SingularLocus.FINITE if finite else SingularLocus.CURVE
        witness["gcd_degree"] = 0 if fixed is None else fixed.d
    elif form.n == 3:
        probe = space_sing_probe(form, slices, seed)
        locus = probe.verdict
        witness["slices"] = [outcome.value for outcome in probe.slices]
        witness["retries"] = probe.retries
    else:
        locus = SingularLocus.NOT_PROBED
    return SingularityReport(n=form.n, d=form.d, node_checks=checks, locus=locus, witness=witness)


def jacobian_rank(forms: Sequence[HomogeneousPoly], point: Sequence[Raw]) -> int:
    """Rank of the matrix of gradients of ``forms`` at ``point``."""
    if not forms:
        return 0
    field = forms[0].field
    values = [field.convert(x) for x in point]
    rows = [form.gradient_at(values) for form in forms]
    return ExactMatrix.from_rows(field, rows, forms[0].n + 1).rank()
