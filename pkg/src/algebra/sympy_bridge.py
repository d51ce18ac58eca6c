"""Conversion between HomogeneousPoly and sympy ``Poly`` for gcds and resultants.

Multivariate gcd, exact division and resultants over GF(p) and QQ come from sympy; the
square-free decomposition runs Yun's algorithm along a random derivation
D_v = sum v_i d/dx_i, since sympy has no multivariate square-free
factorization over finite fields.
"""

import logging
from functools import reduce

import numpy as np
import sympy
from sympy import Poly, symbols

from src.algebra.fields import Field
from src.algebra.polynomial import HomogeneousPoly
from src.errors import PreconditionError

logger = logging.getLogger(__name__)


def generators_for(n: int) -> tuple[sympy.Symbol, ...]:
    return tuple(symbols(f"x0:{n + 1}"))


def to_sympy(form: HomogeneousPoly) -> Poly:
    generators = generators_for(form.n)
    data = {exponents: form.field.to_sympy(c) for exponents, c in form.terms().items()}
    if not data:
        return Poly(0, *generators, domain=form.field.sympy_domain)
    return Poly.from_dict(data, *generators, domain=form.field.sympy_domain)


def from_sympy(poly: Poly, field: Field, n: int) -> HomogeneousPoly:
    """Read a homogeneous sympy polynomial back into the dense basis."""
    if poly.is_zero:
        raise PreconditionError("Cannot recover the degree of a zero polynomial", operation="from_sympy")
    if not poly.is_homogeneous:
        raise PreconditionError("Polynomial is not homogeneous", operation="from_sympy")
    terms = {tuple(monomial): field.from_sympy(c) for monomial, c in poly.terms()}
    return HomogeneousPoly.from_terms(field, n, poly.total_degree(), terms)


def poly_gcd(forms: list[HomogeneousPoly]) -> HomogeneousPoly | None:
    """Gcd of several forms; None when the gcd is a constant."""
    if not forms:
        raise PreconditionError("Gcd of an empty family", operation="poly_gcd")
    nonzero = [to_sympy(form) for form in forms if not form.is_zero()]
    if not nonzero:
        raise PreconditionError("Gcd of zero forms is undefined", operation="poly_gcd")
    divisor = reduce(lambda a, b: a.gcd(b), nonzero)
    if divisor.total_degree() <= 0:
        return None
    return from_sympy(divisor, forms[0].field, forms[0].n)


def _derivation(poly: Poly, direction: list[object]) -> Poly:
    pieces = [poly.diff(g).mul_ground(v) for g, v in zip(poly.gens, direction, strict=True)]
    return reduce(lambda a, b: a + b, pieces)


def squarefree_decomposition(
    form: HomogeneousPoly, rng: np.random.Generator
) -> list[tuple[HomogeneousPoly, int]]:
    """Factors a_i with form = c * prod a_i^i, each a_i square-free and coprime.

    Constant factors are omitted. Requires characteristic zero or above the
    degree of ``form``.
    """
    if form.is_zero():
        raise PreconditionError("Zero form has no square-free decomposition", operation="squarefree")
    field = form.field
    if field.characteristic and field.characteristic <= form.d:
        raise PreconditionError(
            f"Characteristic {field.characteristic} must exceed degree {form.d}",
            operation="squarefree",
        )
    direction = [field.to_sympy(field.random_nonzero(rng)) for _ in range(form.n + 1)]
    f = to_sympy(form)
    derivative = _derivation(f, direction)
    b = f.gcd(derivative)
    c = f.exquo(b)
    residue = derivative.exquo(b) - _derivation(c, direction)
    factors: list[tuple[HomogeneousPoly, int]] = []
    multiplicity = 1
    while c.total_degree() > 0:
        a = c.gcd(residue)
        c = c.exquo(a)
        residue = residue.exquo(a) - _derivation(c, direction)
        if a.total_degree() > 0:
            factors.append((from_sympy(a, field, form.n), multiplicity))
        multiplicity += 1
    logger.debug(f"Square-free decomposition multiplicities: {[m for _, m in factors]}")
    return factors
