"""Exact fields: prime fields of large odd characteristic and the rationals.

Field objects operate on raw values (``int`` residues or ``Fraction``) so that
hot loops avoid wrapper allocation; :class:`Scalar` is the public element type
that carries its field and refuses to mix fields.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Union

import numpy as np
import sympy
from sympy import GF, QQ, isprime, prevprime
from sympy.polys.domains import Domain

from src.errors import FieldMismatchError, PreconditionError

logger = logging.getLogger(__name__)

MIN_PRIME = 2**20

Raw = Union[int, Fraction]


def _default_primes(count: int = 10, below: int = 2**31) -> tuple[int, ...]:
    primes: list[int] = []
    candidate = below
    while len(primes) < count:
        candidate = int(prevprime(candidate))
        primes.append(candidate)
    return tuple(primes)


# Ten largest primes below 2^31, largest first.
DEFAULT_PRIMES: tuple[int, ...] = _default_primes()


@dataclass(frozen=True)
class PrimeField:
    """The field of residues modulo an odd prime p > 2^20."""

    p: int

    def __post_init__(self) -> None:
        if self.p <= MIN_PRIME or self.p % 2 == 0 or not isprime(self.p):
            raise PreconditionError(
                f"Modulus {self.p} is not an odd prime above 2^20",
                operation="prime_field",
                p=self.p,
            )

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def descriptor(self) -> str:
        return str(self.p)

    @property
    def is_prime(self) -> bool:
        return True

    @property
    def dtype(self) -> Any:
        return np.int64

    @property
    def sympy_domain(self) -> Domain:
        return GF(self.p)

    def to_sympy(self, value: int) -> int:
        return int(value)

    def from_sympy(self, value: Any) -> int:
        """Reduce a sympy integer, rational or GF(p) coefficient modulo p."""
        if isinstance(value, sympy.Rational) and not value.is_Integer:
            return self.convert(Fraction(int(value.p), int(value.q)))
        return int(value) % self.p

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def convert(self, value: Raw) -> int:
        """Map an integer or rational into the field."""
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise PreconditionError(
                    f"Denominator of {value} vanishes modulo {self.p}",
                    operation="convert",
                )
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError(f"0 has no inverse modulo {self.p}")
        return pow(a, -1, self.p)

    def div(self, a: int, b: int) -> int:
        return a * self.inv(b) % self.p

    def power(self, a: int, e: int) -> int:
        return pow(a, e, self.p)

    def is_zero(self, a: int) -> bool:
        return a % self.p == 0

    def random_element(self, rng: np.random.Generator) -> int:
        return int(rng.integers(0, self.p))

    def random_nonzero(self, rng: np.random.Generator) -> int:
        return int(rng.integers(1, self.p))


@dataclass(frozen=True)
class RationalField:
    """The field of rationals with exact ``Fraction`` arithmetic.

    Random elements are small integers, ``|x| <= bound``, which keeps
    fraction-free elimination entries short.
    """

    bound: int = 10**4

    @property
    def characteristic(self) -> int:
        return 0

    @property
    def descriptor(self) -> str:
        return "rational"

    @property
    def is_prime(self) -> bool:
        return False

    @property
    def dtype(self) -> Any:
        return object

    @property
    def sympy_domain(self) -> Domain:
        return QQ

    def to_sympy(self, value: Fraction) -> sympy.Rational:
        value = Fraction(value)
        return sympy.Rational(value.numerator, value.denominator)

    def from_sympy(self, value: Any) -> Fraction:
        rational = sympy.Rational(value)
        return Fraction(int(rational.p), int(rational.q))

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def convert(self, value: Raw) -> Fraction:
        return Fraction(value)

    def add(self, a: Fraction, b: Fraction) -> Fraction:
        return a + b

    def sub(self, a: Fraction, b: Fraction) -> Fraction:
        return a - b

    def neg(self, a: Fraction) -> Fraction:
        return -a

    def mul(self, a: Fraction, b: Fraction) -> Fraction:
        return a * b

    def inv(self, a: Fraction) -> Fraction:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return 1 / Fraction(a)

    def div(self, a: Fraction, b: Fraction) -> Fraction:
        return Fraction(a) * self.inv(b)

    def power(self, a: Fraction, e: int) -> Fraction:
        return Fraction(a) ** e

    def is_zero(self, a: Fraction) -> bool:
        return a == 0

    def random_element(self, rng: np.random.Generator) -> Fraction:
        return Fraction(int(rng.integers(-self.bound, self.bound + 1)))

    def random_nonzero(self, rng: np.random.Generator) -> Fraction:
        while True:
            value = self.random_element(rng)
            if value != 0:
                return value


Field = Union[PrimeField, RationalField]


def field_from_descriptor(descriptor: str) -> Field:
    """Rebuild a field from its descriptor ("rational" or a decimal prime)."""
    if descriptor == "rational":
        return RationalField()
    return PrimeField(int(descriptor))


def require_same_field(first: Field, second: Field, operation: str) -> None:
    if first != second:
        raise FieldMismatchError(
            f"Cannot combine values over {first.descriptor} and {second.descriptor}",
            operation=operation,
        )


def require_characteristic_above(field: Field, degree: int, operation: str) -> None:
    """Reject prime fields whose characteristic does not exceed ``degree``."""
    if field.characteristic and field.characteristic <= degree:
        raise PreconditionError(
            f"Characteristic {field.characteristic} must exceed degree {degree}",
            operation=operation,
        )


@dataclass(frozen=True)
class Scalar:
    """An exact field element tagged with its field."""

    field: Field
    value: Raw

    @classmethod
    def of(cls, field: Field, value: Raw) -> "Scalar":
        return cls(field, field.convert(value))

    def _other(self, other: "Scalar | int | Fraction", operation: str) -> Raw:
        if isinstance(other, Scalar):
            require_same_field(self.field, other.field, operation)
            return other.value
        return self.field.convert(other)

    def __add__(self, other: "Scalar | int | Fraction") -> "Scalar":
        return Scalar(self.field, self.field.add(self.value, self._other(other, "add")))

    def __sub__(self, other: "Scalar | int | Fraction") -> "Scalar":
        return Scalar(self.field, self.field.sub(self.value, self._other(other, "sub")))

    def __mul__(self, other: "Scalar | int | Fraction") -> "Scalar":
        return Scalar(self.field, self.field.mul(self.value, self._other(other, "mul")))

    def __truediv__(self, other: "Scalar | int | Fraction") -> "Scalar":
        return Scalar(self.field, self.field.div(self.value, self._other(other, "div")))

    def __neg__(self) -> "Scalar":
        return Scalar(self.field, self.field.neg(self.value))

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == self.field.convert(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __repr__(self) -> str:
        return f"Scalar({self.value} over {self.field.descriptor})"
