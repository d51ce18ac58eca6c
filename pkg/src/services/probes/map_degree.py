"""Rank and degree of the rational map P^n --> P^n given by n+1 forms."""

import logging
from collections.abc import Sequence

import numpy as np

from src.algebra.elimination import eliminate
from src.algebra.fields import Raw
from src.algebra.polynomial import HomogeneousPoly, random_matrix
from src.algebra.univariate import UniPoly
from src.errors import DegenerateEliminationError, PreconditionError
from src.models.reports import MapReport, MapVerdict
from src.services.probes.singularity import MAX_RETRIES, jacobian_rank

logger = logging.getLogger(__name__)


def _strip_root(poly: UniPoly, root: Raw) -> UniPoly:
    linear = UniPoly.make(poly.field, [poly.field.neg(root), 1])
    while not poly.is_zero() and poly.degree > 0 and poly.field.is_zero(poly.evaluate(root)):
        poly = poly // linear
    return poly


def _fiber_count(
    forms: Sequence[HomogeneousPoly],
    base_points: Sequence[Sequence[Raw]],
    rng: np.random.Generator,
) -> int:
    """Points of a general fiber outside the base points, via one resultant.

    Raises:
        DegenerateEliminationError: when this randomization is unusable
    """
    field = forms[0].field
    change = random_matrix(field, 3, 3, rng)
    if change.rank() < 3:
        raise DegenerateEliminationError("Singular coordinate change", operation="map_rank_and_degree")
    f0, f1, f2 = (form.substitute(change) for form in forms)
    source = tuple(field.random_element(rng) for _ in range(2)) + (field.one,)
    v0, v1, v2 = (form.evaluate(source) for form in (f0, f1, f2))
    if field.is_zero(v2):
        raise DegenerateEliminationError("Target point at infinity", operation="map_rank_and_degree")
    a = f0.scale(v2) - f2.scale(v0)
    b = f1.scale(v2) - f2.scale(v1)
    eliminant = eliminate(a, b, variable=0, chart=2)
    if eliminant.is_zero():
        raise DegenerateEliminationError("Fiber equations share a component", operation="map_rank_and_degree")
    inverse = change.inverse()
    for point in base_points:
        image = inverse.apply([field.convert(x) for x in point])
        if field.is_zero(image[2]):
            continue
        eliminant = _strip_root(eliminant, field.div(image[1], image[2]))
    return eliminant.distinct_root_count()


def map_rank_and_degree(
    forms: Sequence[HomogeneousPoly],
    base_points: Sequence[Sequence[Raw]] = (),
    seed: int = 0,
) -> MapReport:
    """Generic Jacobian rank and, for plane maps, the size of a general fiber.

    ``base_points`` are the imposed points whose contribution is removed from
    the fiber count.
    """
    if not forms:
        raise PreconditionError("No forms given", operation="map_rank_and_degree")
    n, d = forms[0].n, forms[0].d
    if len(forms) != n + 1 or any(form.n != n or form.d != d for form in forms):
        raise PreconditionError(
            f"Need {n + 1} forms of one degree in {n + 1} variables, got {len(forms)}",
            operation="map_rank_and_degree",
        )
    field = forms[0].field
    rng = np.random.default_rng(seed)
    point = [field.random_element(rng) for _ in range(n + 1)]
    rank = jacobian_rank(forms, point)
    if rank <= n:
        return MapReport(n=n, d=d, generic_jacobian_rank=rank, verdict=MapVerdict.COMPOSED_WITH_PENCIL)
    if n != 2:
        return MapReport(n=n, d=d, generic_jacobian_rank=rank, verdict=MapVerdict.INCONCLUSIVE)
    for attempt in range(1, MAX_RETRIES + 1):
        try:
            count = _fiber_count(forms, base_points, rng)
        except DegenerateEliminationError as e:
            logger.warning(f"map_rank_and_degree attempt {attempt}: {e}")
            continue
        verdict = MapVerdict.BIRATIONAL if count == 1 else MapVerdict.FINITE_DEGREE_K
        logger.info(f"Plane map of degree {d}: {count} points per general fiber")
        return MapReport(
            n=n, d=d, generic_jacobian_rank=rank, fiber_count=count, verdict=verdict, attempts=attempt
        )
    return MapReport(n=n, d=d, generic_jacobian_rank=rank, verdict=MapVerdict.INCONCLUSIVE, attempts=MAX_RETRIES)
