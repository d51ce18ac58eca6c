"""Dense homogeneous polynomials over an exact field.

Coefficients are indexed by :func:`src.algebra.combinatorics.monomials`, the
graded lexicographic basis shared by every condition matrix in the package.
"""

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass

import numpy as np

from src.algebra.combinatorics import binomial, monomial_index, monomials
from src.algebra.fields import Field, Raw, Scalar, require_same_field
from src.algebra.matrix import ExactMatrix
from src.algebra.univariate import UniPoly
from src.errors import PreconditionError, RankDeficientError

logger = logging.getLogger(__name__)


def _power_table(field: Field, point: Sequence[Raw], degree: int) -> list[list[Raw]]:
    table = []
    for x in point:
        powers = [field.one]
        for _ in range(degree):
            powers.append(field.mul(powers[-1], x))
        table.append(powers)
    return table


def evaluation_row(field: Field, n: int, d: int, point: Sequence[Raw]) -> list[Raw]:
    """Values of every degree-d monomial at ``point``."""
    table = _power_table(field, point, d)
    row = []
    for exponents in monomials(n, d):
        value = field.one
        for i, e in enumerate(exponents):
            if e:
                value = field.mul(value, table[i][e])
        row.append(value)
    return row


def derivative_row(field: Field, n: int, d: int, point: Sequence[Raw], variable: int) -> list[Raw]:
    """Values at ``point`` of the partial derivative along ``variable`` of each monomial."""
    table = _power_table(field, point, d)
    row = []
    for exponents in monomials(n, d):
        k = exponents[variable]
        if k == 0:
            row.append(field.zero)
            continue
        value = field.convert(k)
        for i, e in enumerate(exponents):
            e = e - 1 if i == variable else e
            if e:
                value = field.mul(value, table[i][e])
        row.append(value)
    return row


@dataclass(frozen=True, eq=False)
class HomogeneousPoly:
    """A degree-d form in the variables x_0..x_n."""

    field: Field
    n: int
    d: int
    coeffs: tuple[Raw, ...]

    def __post_init__(self) -> None:
        expected = binomial(self.n + self.d, self.n)
        if len(self.coeffs) != expected:
            raise PreconditionError(
                f"Form of degree {self.d} in {self.n + 1} variables needs {expected} coefficients, got {len(self.coeffs)}",
                operation="homogeneous_poly",
            )
        if self.d == 0 and not all(self.field.is_zero(c) for c in self.coeffs):
            raise PreconditionError(
                "Degree-0 forms are only allowed as the zero form", operation="homogeneous_poly"
            )

    @classmethod
    def zero(cls, field: Field, n: int, d: int) -> "HomogeneousPoly":
        return cls(field, n, d, tuple(field.zero for _ in monomials(n, d)))

    @classmethod
    def from_terms(
        cls, field: Field, n: int, d: int, terms: Mapping[tuple[int, ...], Raw]
    ) -> "HomogeneousPoly":
        """Build a form from ``{exponents: coefficient}``."""
        index = monomial_index(n, d)
        coeffs = [field.zero] * len(index)
        for exponents, value in terms.items():
            if exponents not in index:
                raise PreconditionError(
                    f"Exponent vector {exponents} is not a degree-{d} monomial in {n + 1} variables",
                    operation="from_terms",
                )
            coeffs[index[exponents]] = field.add(coeffs[index[exponents]], field.convert(value))
        return cls(field, n, d, tuple(coeffs))

    @classmethod
    def linear_form(cls, field: Field, coefficients: Sequence[Raw]) -> "HomogeneousPoly":
        n = len(coefficients) - 1
        terms = {tuple(1 if j == i else 0 for j in range(n + 1)): c for i, c in enumerate(coefficients)}
        return cls.from_terms(field, n, 1, terms)

    @classmethod
    def variable(cls, field: Field, n: int, i: int) -> "HomogeneousPoly":
        return cls.linear_form(field, [1 if j == i else 0 for j in range(n + 1)])

    def terms(self) -> dict[tuple[int, ...], Raw]:
        """Nonzero coefficients keyed by exponent vector."""
        return {
            exponents: c
            for exponents, c in zip(monomials(self.n, self.d), self.coeffs, strict=True)
            if not self.field.is_zero(c)
        }

    def is_zero(self) -> bool:
        return all(self.field.is_zero(c) for c in self.coeffs)

    def coefficient(self, exponents: tuple[int, ...]) -> Scalar:
        return Scalar(self.field, self.coeffs[monomial_index(self.n, self.d)[exponents]])

    def _check_compatible(self, other: "HomogeneousPoly", operation: str) -> None:
        require_same_field(self.field, other.field, operation)
        if self.n != other.n:
            raise PreconditionError(
                f"Forms live in {self.n + 1} and {other.n + 1} variables", operation=operation
            )

    def __add__(self, other: "HomogeneousPoly") -> "HomogeneousPoly":
        self._check_compatible(other, "add")
        if self.d != other.d:
            raise PreconditionError(f"Degrees {self.d} and {other.d} differ", operation="add")
        coeffs = tuple(self.field.add(a, b) for a, b in zip(self.coeffs, other.coeffs, strict=True))
        return HomogeneousPoly(self.field, self.n, self.d, coeffs)

    def __sub__(self, other: "HomogeneousPoly") -> "HomogeneousPoly":
        return self + other.scale(-1)

    def scale(self, c: Raw | Scalar) -> "HomogeneousPoly":
        if isinstance(c, Scalar):
            require_same_field(self.field, c.field, "scale")
            factor = c.value
        else:
            factor = self.field.convert(c)
        return HomogeneousPoly(
            self.field, self.n, self.d, tuple(self.field.mul(factor, x) for x in self.coeffs)
        )

    def __mul__(self, other: "HomogeneousPoly") -> "HomogeneousPoly":
        self._check_compatible(other, "mul")
        index = monomial_index(self.n, self.d + other.d)
        coeffs = [self.field.zero] * len(index)
        right = other.terms()
        for left_exponents, a in self.terms().items():
            for right_exponents, b in right.items():
                k = index[tuple(x + y for x, y in zip(left_exponents, right_exponents, strict=True))]
                coeffs[k] = self.field.add(coeffs[k], self.field.mul(a, b))
        return HomogeneousPoly(self.field, self.n, self.d + other.d, tuple(coeffs))

    def power(self, k: int) -> "HomogeneousPoly":
        if k < 1:
            raise PreconditionError(f"Exponent {k} must be positive", operation="power")
        result = self
        for _ in range(k - 1):
            result = result * self
        return result

    def evaluate(self, point: Sequence[Raw]) -> Raw:
        row = evaluation_row(self.field, self.n, self.d, point)
        total = self.field.zero
        for c, m in zip(self.coeffs, row, strict=True):
            if not self.field.is_zero(c):
                total = self.field.add(total, self.field.mul(c, m))
        return total

    def derivative(self, i: int) -> "HomogeneousPoly":
        """Partial derivative along x_i, a form of degree d - 1."""
        if self.d < 1:
            raise PreconditionError("Cannot differentiate a degree-0 form", operation="derivative")
        terms: dict[tuple[int, ...], Raw] = {}
        for exponents, c in self.terms().items():
            if exponents[i]:
                lowered = tuple(e - 1 if j == i else e for j, e in enumerate(exponents))
                terms[lowered] = self.field.mul(c, self.field.convert(exponents[i]))
        if self.d == 1:
            if terms:
                raise PreconditionError(
                    "Derivative of a linear form is a nonzero constant; use gradient_at",
                    operation="derivative",
                )
            return HomogeneousPoly.zero(self.field, self.n, 0)
        return HomogeneousPoly.from_terms(self.field, self.n, self.d - 1, terms)

    def gradient(self) -> list["HomogeneousPoly"]:
        return [self.derivative(i) for i in range(self.n + 1)]

    def gradient_at(self, point: Sequence[Raw]) -> list[Raw]:
        """All first partials evaluated at ``point``."""
        result = []
        for i in range(self.n + 1):
            row = derivative_row(self.field, self.n, self.d, point, i)
            total = self.field.zero
            for c, m in zip(self.coeffs, row, strict=True):
                total = self.field.add(total, self.field.mul(c, m))
            result.append(total)
        return result

    def hessian_at(self, point: Sequence[Raw]) -> list[list[Raw]]:
        """The (n+1)x(n+1) matrix of second partials at ``point``."""
        size = self.n + 1
        table = _power_table(self.field, point, self.d)
        hessian = [[self.field.zero] * size for _ in range(size)]
        for exponents, c in self.terms().items():
            for a in range(size):
                for b in range(a, size):
                    factor = exponents[a] * (exponents[b] - (1 if a == b else 0))
                    if factor == 0:
                        continue
                    value = self.field.mul(c, self.field.convert(factor))
                    for j, e in enumerate(exponents):
                        e -= (1 if j == a else 0) + (1 if j == b else 0)
                        if e:
                            value = self.field.mul(value, table[j][e])
                    hessian[a][b] = self.field.add(hessian[a][b], value)
        for a in range(size):
            for b in range(a):
                hessian[a][b] = hessian[b][a]
        return hessian

    def substitute(self, matrix: ExactMatrix) -> "HomogeneousPoly":
        """Compose with the linear map y -> M y, M of shape (n+1) x (m+1)."""
        require_same_field(self.field, matrix.field, "substitute")
        if matrix.rows != self.n + 1:
            raise PreconditionError(
                f"Substitution matrix has {matrix.rows} rows, expected {self.n + 1}",
                operation="substitute",
            )
        m = matrix.cols - 1
        linear = [HomogeneousPoly.linear_form(self.field, matrix.row(i)) for i in range(self.n + 1)]
        powers: list[list[HomogeneousPoly]] = []
        for form in linear:
            chain = [HomogeneousPoly.from_terms(self.field, m, 0, {})]
            for _ in range(self.d):
                chain.append(chain[-1] * form if chain[-1].d else form)
            powers.append(chain)
        result = HomogeneousPoly.zero(self.field, m, self.d)
        for exponents, c in self.terms().items():
            term: HomogeneousPoly | None = None
            for i, e in enumerate(exponents):
                if e:
                    term = powers[i][e] if term is None else term * powers[i][e]
            if term is None:
                continue
            result = result + term.scale(c)
        return result

    def to_unipoly(self) -> UniPoly:
        """Dehomogenize a binary form at x_1 = 1 as a polynomial in x_0."""
        if self.n != 1:
            raise PreconditionError("Only binary forms dehomogenize to UniPoly", operation="to_unipoly")
        coeffs = [self.field.zero] * (self.d + 1)
        for (a, _), c in zip(monomials(1, self.d), self.coeffs, strict=True):
            coeffs[a] = c
        return UniPoly.make(self.field, coeffs)

    def partial_evaluate(self, variable: int, point: Sequence[Raw]) -> UniPoly:
        """Fix every coordinate except ``variable`` to ``point``; result in x_variable."""
        coeffs = [self.field.zero] * (self.d + 1)
        table = _power_table(self.field, point, self.d)
        for exponents, c in self.terms().items():
            value = c
            for j, e in enumerate(exponents):
                if j != variable and e:
                    value = self.field.mul(value, table[j][e])
            k = exponents[variable]
            coeffs[k] = self.field.add(coeffs[k], value)
        return UniPoly.make(self.field, coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HomogeneousPoly):
            return NotImplemented
        return (
            self.field == other.field
            and self.n == other.n
            and self.d == other.d
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.field, self.n, self.d, self.coeffs))

    def __repr__(self) -> str:
        return f"HomogeneousPoly(n={self.n}, d={self.d}, terms={len(self.terms())}, over {self.field.descriptor})"


def random_form(field: Field, n: int, d: int, rng: np.random.Generator) -> HomogeneousPoly:
    """A form with independent random coefficients."""
    return HomogeneousPoly(field, n, d, tuple(field.random_element(rng) for _ in monomials(n, d)))


def random_matrix(field: Field, rows: int, cols: int, rng: np.random.Generator) -> ExactMatrix:
    return ExactMatrix.from_rows(
        field, [[field.random_element(rng) for _ in range(cols)] for _ in range(rows)], cols
    )


def restrict(form: HomogeneousPoly, parametrization: ExactMatrix) -> UniPoly | HomogeneousPoly:
    """Restrict ``form`` to the linear subspace spanned by the matrix columns.

    A two-column parametrization (s, t) -> s*a + t*b yields a UniPoly in s
    (dehomogenized at t = 1); wider parametrizations yield a form in the
    parameters.

    Raises:
        RankDeficientError: if the columns are linearly dependent
    """
    if parametrization.rank() < parametrization.cols:
        raise RankDeficientError(
            f"Parametrization of rank {parametrization.rank()} for {parametrization.cols} parameters",
            operation="restrict",
        )
    restricted = form.substitute(parametrization)
    if parametrization.cols == 2:
        return restricted.to_unipoly()
    return restricted
