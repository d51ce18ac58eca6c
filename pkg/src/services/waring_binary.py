"""Catalecticant certificates for Waring decompositions of binary forms.

A binary form is stored with binomial normalization,
f = sum_i binomial(d, i) c_i x^(d-i) y^i, so that apolarity is the Hankel
pairing. A kernel vector v of a catalecticant is read as the binary form
g = sum_j v_j X^(a-j) Y^j; as a UniPoly in X at Y = 1 its coefficient of
X^m is v_(a-m).
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from src.algebra.combinatorics import binomial
from src.algebra.fields import Field, Raw, require_characteristic_above
from src.algebra.matrix import ExactMatrix
from src.algebra.polynomial import HomogeneousPoly
from src.algebra.univariate import UniPoly
from src.errors import PreconditionError
from src.models.reports import DecompositionCertificate

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class BinaryForm:
    """f = sum_i binomial(d, i) c_i x^(d-i) y^i."""

    field: Field
    c: tuple[Raw, ...]

    def __post_init__(self) -> None:
        if not self.c:
            raise PreconditionError("A binary form needs at least one coefficient", operation="binary_form")
        require_characteristic_above(self.field, self.d, "binary_form")

    @property
    def d(self) -> int:
        return len(self.c) - 1

    @classmethod
    def make(cls, field: Field, c: Sequence[Raw]) -> "BinaryForm":
        return cls(field, tuple(field.convert(x) for x in c))

    @classmethod
    def from_plain(cls, field: Field, coeffs: Sequence[Raw]) -> "BinaryForm":
        """From plain coefficients a_i of x^(d-i) y^i."""
        d = len(coeffs) - 1
        return cls.make(field, [field.div(field.convert(a), field.convert(binomial(d, i))) for i, a in enumerate(coeffs)])

    @classmethod
    def power_sum(cls, field: Field, d: int, terms: Sequence[tuple[Raw, Raw, Raw]]) -> "BinaryForm":
        """sum of lambda * (a x + b y)^d over ``terms`` = [(lambda, a, b), ...]."""
        c = [field.zero] * (d + 1)
        for weight, a, b in terms:
            weight, a, b = field.convert(weight), field.convert(a), field.convert(b)
            for i in range(d + 1):
                c[i] = field.add(c[i], field.mul(weight, field.mul(field.power(a, d - i), field.power(b, i))))
        return cls(field, tuple(c))

    @classmethod
    def random(cls, field: Field, d: int, rng: np.random.Generator) -> "BinaryForm":
        return cls(field, tuple(field.random_element(rng) for _ in range(d + 1)))

    @classmethod
    def from_homogeneous(cls, form: HomogeneousPoly) -> "BinaryForm":
        if form.n != 1:
            raise PreconditionError("Only binary forms convert", operation="from_homogeneous")
        plain = [form.coefficient((form.d - i, i)).value for i in range(form.d + 1)]
        return cls.from_plain(form.field, plain)

    def to_homogeneous(self) -> HomogeneousPoly:
        field = self.field
        terms = {(self.d - i, i): field.mul(field.convert(binomial(self.d, i)), c) for i, c in enumerate(self.c)}
        return HomogeneousPoly.from_terms(field, 1, self.d, terms)

    def substitute(self, matrix: ExactMatrix) -> "BinaryForm":
        """Linear change of the variables (x, y) by a 2x2 matrix."""
        return BinaryForm.from_homogeneous(self.to_homogeneous().substitute(matrix))

    def is_zero(self) -> bool:
        return all(self.field.is_zero(x) for x in self.c)


@dataclass(frozen=True)
class Catalecticant:
    """The (d-a+1) x (a+1) Hankel matrix with entry (i, j) = c_(i+j)."""

    a: int
    matrix: ExactMatrix

    @property
    def rank(self) -> int:
        return self.matrix.rank()


def catalecticant(form: BinaryForm, a: int) -> Catalecticant:
    if not 0 <= a <= form.d:
        raise PreconditionError(f"Order {a} outside 0..{form.d}", operation="catalecticant")
    rows = [[form.c[i + j] for j in range(a + 1)] for i in range(form.d - a + 1)]
    return Catalecticant(a, ExactMatrix.from_rows(form.field, rows, a + 1))


def generator_polynomial(field: Field, vector: Sequence[Raw]) -> UniPoly:
    """Read a kernel vector as a polynomial in X at Y = 1."""
    return UniPoly.make(field, list(reversed(vector)))


def apolarity_check(form: BinaryForm, g: UniPoly, degree: int | None = None) -> bool:
    """True iff g(d/dx, d/dy) annihilates ``form``.

    ``degree`` is the degree e of g as a binary form; it exceeds the UniPoly
    degree when Y divides g.
    """
    e = g.degree if degree is None else degree
    if e < 0:
        return True
    if e > form.d:
        raise PreconditionError(f"Operator degree {e} exceeds form degree {form.d}", operation="apolarity_check")
    field = form.field
    operator = [g.coeffs[e - j] if e - j < len(g.coeffs) else field.zero for j in range(e + 1)]
    for i in range(form.d - e + 1):
        total = field.zero
        for j, value in enumerate(operator):
            total = field.add(total, field.mul(value, form.c[i + j]))
        if not field.is_zero(total):
            return False
    return True


def _certificate(form: BinaryForm, a: int) -> DecompositionCertificate:
    field = form.field
    _, kernel = catalecticant(form, a).matrix.rank_and_kernel()
    if not kernel:
        raise PreconditionError(f"Catalecticant of order {a} is injective", operation="sylvester_certificate")
    vector = kernel[0]
    generator = generator_polynomial(field, vector)
    # A root at infinity (Y | g) may occur once.
    squarefree = generator.degree >= a - 1 and generator.is_squarefree()
    apolar = apolarity_check(form, generator, a)
    unique = len(kernel) == 1 and squarefree
    logger.debug(f"Certificate of order {a}: kernel {len(kernel)}, squarefree {squarefree}")
    return DecompositionCertificate(
        d=form.d,
        s=a,
        kernel_dim=len(kernel),
        apolar_generator=generator,
        generator=[str(value) for value in vector],
        squarefree=squarefree,
        apolar=apolar,
        unique=unique,
    )


def sylvester_certificate(form: BinaryForm) -> DecompositionCertificate:
    """Uniqueness certificate for a form of odd degree d = 2k - 1 with s = k summands.

    Raises:
        PreconditionError: for even degree or the zero form
    """
    if form.d % 2 == 0:
        raise PreconditionError(f"Sylvester certificate needs odd degree, got {form.d}", operation="sylvester_certificate")
    if form.is_zero():
        raise PreconditionError("The zero form has no decomposition", operation="sylvester_certificate")
    return _certificate(form, (form.d + 1) // 2)


def sylvester_rank_certificate(form: BinaryForm) -> DecompositionCertificate:
    """Certificate at the smallest order whose catalecticant has a kernel."""
    if form.is_zero():
        raise PreconditionError("The zero form has no decomposition", operation="sylvester_rank_certificate")
    for a in range(1, form.d + 1):
        if catalecticant(form, a).rank < a + 1:
            return _certificate(form, a)
    raise PreconditionError("No catalecticant has a kernel", operation="sylvester_rank_certificate")


def rank_lower_bound(form: BinaryForm) -> int:
    """Largest catalecticant rank, a lower bound for the Waring rank."""
    return max(catalecticant(form, a).rank for a in range(form.d + 1))
