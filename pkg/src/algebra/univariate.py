"""Dense univariate polynomials over a Field, with gcd, division and resultants from sympy."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import sympy
from sympy import Poly

from src.algebra.fields import Field, Raw, Scalar, require_same_field
from src.errors import PreconditionError

logger = logging.getLogger(__name__)

X = sympy.Symbol("x")


@dataclass(frozen=True, eq=False)
class UniPoly:
    """Coefficients low to high, trailing zeros trimmed."""

    field: Field
    coeffs: tuple[Raw, ...]

    @classmethod
    def make(cls, field: Field, coeffs: Sequence[Raw]) -> "UniPoly":
        values = [field.convert(c) for c in coeffs]
        while values and field.is_zero(values[-1]):
            values.pop()
        return cls(field, tuple(values))

    @classmethod
    def zero(cls, field: Field) -> "UniPoly":
        return cls(field, ())

    @classmethod
    def constant(cls, field: Field, value: Raw) -> "UniPoly":
        return cls.make(field, [value])

    @classmethod
    def x(cls, field: Field) -> "UniPoly":
        return cls.make(field, [0, 1])

    @classmethod
    def from_sympy(cls, poly: Poly, field: Field) -> "UniPoly":
        """Read a univariate sympy polynomial, in any generator, into ``field``."""
        return cls.make(field, [field.from_sympy(c) for c in reversed(poly.all_coeffs())])

    def to_sympy(self, gen: sympy.Symbol = X) -> Poly:
        high_first = [self.field.to_sympy(c) for c in reversed(self.coeffs)] or [0]
        return Poly.from_list(high_first, gen, domain=self.field.sympy_domain)

    @classmethod
    def interpolate(cls, field: Field, xs: Sequence[Raw], ys: Sequence[Raw]) -> "UniPoly":
        """The unique polynomial of degree < len(xs) through the given values.

        Over GF(p) the interpolant is computed over QQ on the residues and
        reduced; its denominators divide the Vandermonde differences, which
        are units mod p once the abscissae are distinct.
        """
        if len(xs) != len(ys):
            raise PreconditionError("Abscissae and values differ in length", operation="interpolate")
        points = [field.convert(x) for x in xs]
        if len(set(points)) != len(points):
            raise PreconditionError("Interpolation abscissae repeat", operation="interpolate")
        if not points:
            return cls.zero(field)
        data = [(sympy.Rational(x), sympy.Rational(field.convert(y))) for x, y in zip(points, ys, strict=True)]
        return cls.from_sympy(Poly(sympy.interpolate(data, X), X, domain=sympy.QQ), field)

    @property
    def degree(self) -> int:
        """Degree, -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return self.degree <= 0

    @property
    def lead(self) -> Raw:
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def __add__(self, other: "UniPoly") -> "UniPoly":
        require_same_field(self.field, other.field, "add")
        size = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [self.field.zero] * (size - len(self.coeffs))
        b = list(other.coeffs) + [self.field.zero] * (size - len(other.coeffs))
        return UniPoly.make(self.field, [self.field.add(x, y) for x, y in zip(a, b, strict=True)])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + other.scale(-1)

    def scale(self, c: Raw) -> "UniPoly":
        factor = self.field.convert(c)
        return UniPoly.make(self.field, [self.field.mul(factor, x) for x in self.coeffs])

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        require_same_field(self.field, other.field, "mul")
        if self.is_zero() or other.is_zero():
            return UniPoly.zero(self.field)
        return UniPoly.from_sympy(self.to_sympy() * other.to_sympy(), self.field)

    def __divmod__(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        require_same_field(self.field, other.field, "divmod")
        if other.is_zero():
            raise ZeroDivisionError("Polynomial division by zero")
        quotient, remainder = self.to_sympy().div(other.to_sympy())
        return UniPoly.from_sympy(quotient, self.field), UniPoly.from_sympy(remainder, self.field)

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[1]

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lead))

    def derivative(self) -> "UniPoly":
        return UniPoly.make(
            self.field,
            [self.field.mul(self.field.convert(i), c) for i, c in enumerate(self.coeffs)][1:],
        )

    def evaluate(self, x: Raw) -> Raw:
        value = self.field.zero
        point = self.field.convert(x)
        for c in reversed(self.coeffs):
            value = self.field.add(self.field.mul(value, point), c)
        return value

    def distinct_root_count(self) -> int:
        """Number of distinct roots over the algebraic closure."""
        if self.is_zero():
            raise PreconditionError("The zero polynomial has infinitely many roots", operation="distinct_root_count")
        return self.degree - uni_gcd(self, self.derivative()).degree

    def is_squarefree(self) -> bool:
        return not self.is_zero() and uni_gcd(self, self.derivative()).is_constant()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __repr__(self) -> str:
        return f"UniPoly({list(self.coeffs)} over {self.field.descriptor})"




def uni_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd; gcd(0, 0) = 0."""
    require_same_field(f.field, g.field, "uni_gcd")
    if f.is_zero() and g.is_zero():
        return f
    return UniPoly.from_sympy(f.to_sympy().gcd(g.to_sympy()), f.field).monic()


def resultant(f: UniPoly, g: UniPoly) -> Scalar:
    """Resultant, equal to the Sylvester determinant with the deg(g) rows of f first.

    Res(0, c) = 1 for a nonzero constant c; Res(0, g) = 0 when deg g >= 1.

    Raises:
        PreconditionError: if both polynomials are zero
    """
    require_same_field(f.field, g.field, "resultant")
    field = f.field
    if f.is_zero() and g.is_zero():
        raise PreconditionError("Resultant of two zero polynomials", operation="resultant")
    if f.is_zero() or g.is_zero():
        other = g if f.is_zero() else f
        return Scalar(field, field.one if other.degree == 0 else field.zero)
    if f.degree == 0 and g.degree == 0:
        return Scalar(field, field.one)
    return Scalar(field, field.from_sympy(f.to_sympy().resultant(g.to_sympy())))
