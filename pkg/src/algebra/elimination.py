"""Resultant elimination for pairs of ternary forms."""

import logging

from src.algebra.polynomial import HomogeneousPoly
from src.algebra.sympy_bridge import generators_for, to_sympy
from src.algebra.univariate import UniPoly
from src.errors import DegenerateEliminationError, PreconditionError

logger = logging.getLogger(__name__)


def eliminate(a: HomogeneousPoly, b: HomogeneousPoly, variable: int = 0, chart: int = 2) -> UniPoly:
    """Res_{x_variable}(A, B) on the chart x_chart = 1, as a polynomial in the third variable.

    Both forms are dehomogenized and the bivariate resultant is taken in
    sympy over the form's field.

    Raises:
        DegenerateEliminationError: if x_variable^deg has a zero coefficient in A or B
    """
    if a.n != 2 or b.n != 2:
        raise PreconditionError("Elimination expects ternary forms", operation="eliminate")
    if variable == chart:
        raise PreconditionError("Eliminated variable and chart coincide", operation="eliminate")
    for form, name in ((a, "A"), (b, "B")):
        pure = tuple(form.d if i == variable else 0 for i in range(3))
        if form.coefficient(pure).is_zero():
            raise DegenerateEliminationError(
                f"Leading x{variable} coefficient of {name} vanishes",
                operation="eliminate",
                degree=form.d,
            )
    gens = generators_for(2)
    eliminated, free = gens[variable], gens[3 - variable - chart]
    first, second = (
        to_sympy(form).eval(gens[chart], 1).reorder(eliminated, free) for form in (a, b)
    )
    eliminant = UniPoly.from_sympy(first.resultant(second), a.field)
    logger.debug(f"Eliminated x{variable}: eliminant of degree {eliminant.degree}")
    return eliminant
