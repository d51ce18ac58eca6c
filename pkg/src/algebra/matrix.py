"""Dense exact matrices: rank, kernel, determinant and inverse.

Prime mode stores residues as ``int64`` and eliminates with vectorized row
operations; every product of two residues stays below 2^62. Rational mode
stores Python integers and fractions in object arrays and computes ranks by
fraction-free (Bareiss) elimination.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from src.algebra.fields import Field, Raw, Scalar, require_same_field
from src.errors import PreconditionError

logger = logging.getLogger(__name__)


def _rref_modp(data: np.ndarray, p: int) -> tuple[np.ndarray, list[int], int]:
    """Reduced row echelon form mod p.

    Returns the nonzero rows, pivot columns and the determinant factor
    (product of pivots with swap sign) accumulated along the way.
    """
    a = np.array(data, dtype=np.int64) % p
    m, n = a.shape
    pivots: list[int] = []
    factor = 1
    r = 0
    for c in range(n):
        if r == m:
            break
        nonzero = np.nonzero(a[r:, c])[0]
        if nonzero.size == 0:
            continue
        pivot = r + int(nonzero[0])
        if pivot != r:
            a[[r, pivot]] = a[[pivot, r]]
            factor = -factor
        value = int(a[r, c])
        factor = factor * value % p
        a[r] = a[r] * pow(value, -1, p) % p
        column = a[:, c].copy()
        column[r] = 0
        targets = np.nonzero(column)[0]
        if targets.size:
            a[targets] = (a[targets] - np.outer(column[targets], a[r]) % p) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots, factor % p


def _integer_rows(data: np.ndarray) -> tuple[np.ndarray, Fraction]:
    """Clear denominators row by row; return the integer matrix and the scale."""
    a = np.empty(data.shape, dtype=object)
    scale = Fraction(1)
    for i in range(data.shape[0]):
        row = [Fraction(x) for x in data[i]]
        multiplier = lcm(*(x.denominator for x in row)) if row else 1
        a[i] = [int(x * multiplier) for x in row]
        scale *= multiplier
    return a, scale


def _bareiss(a: np.ndarray) -> tuple[np.ndarray, list[int], int]:
    """Fraction-free row echelon form of an integer object array.

    Zero columns are skipped; every intermediate entry is a minor of the
    input, so the division by the previous pivot is exact.
    """
    a = a.copy()
    m, n = a.shape
    pivots: list[int] = []
    sign = 1
    previous = 1
    r = 0
    for c in range(n):
        if r == m:
            break
        pivot = next((i for i in range(r, m) if a[i, c] != 0), None)
        if pivot is None:
            continue
        if pivot != r:
            a[[r, pivot]] = a[[pivot, r]]
            sign = -sign
        if r + 1 < m:
            lead = a[r, c]
            block = a[r + 1 :, c + 1 :] * lead - a[r + 1 :, c, None] * a[None, r, c + 1 :]
            a[r + 1 :, c + 1 :] = block // previous
            a[r + 1 :, c] = 0
        previous = a[r, c]
        pivots.append(c)
        r += 1
    return a[:r], pivots, sign


def _rref_fraction(data: np.ndarray) -> tuple[np.ndarray, list[int]]:
    a = np.array([[Fraction(x) for x in row] for row in data], dtype=object).reshape(data.shape)
    m, n = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        pivot = next((i for i in range(r, m) if a[i, c] != 0), None)
        if pivot is None:
            continue
        if pivot != r:
            a[[r, pivot]] = a[[pivot, r]]
        a[r] = a[r] / a[r, c]
        for i in range(m):
            if i != r and a[i, c] != 0:
                a[i] = a[i] - a[i, c] * a[r]
        pivots.append(c)
        r += 1
    return a[:r], pivots


@dataclass(frozen=True, eq=False)
class ExactMatrix:
    """A dense matrix over a single exact field."""

    field: Field
    data: np.ndarray

    @classmethod
    def from_rows(
        cls, field: Field, rows: Sequence[Sequence[Raw | Scalar]], cols: int | None = None
    ) -> "ExactMatrix":
        """Build a matrix, converting integers and rationals into ``field``.

        Raises:
            FieldMismatchError: if a Scalar entry belongs to another field
        """
        width = cols if cols is not None else (len(rows[0]) if rows else 0)
        data = np.empty((len(rows), width), dtype=field.dtype)
        for i, row in enumerate(rows):
            if len(row) != width:
                raise PreconditionError(
                    f"Row {i} has {len(row)} entries, expected {width}",
                    operation="from_rows",
                )
            for j, entry in enumerate(row):
                if isinstance(entry, Scalar):
                    require_same_field(field, entry.field, "from_rows")
                    data[i, j] = entry.value
                else:
                    data[i, j] = field.convert(entry)
        return cls(field, data)

    @classmethod
    def identity(cls, field: Field, size: int) -> "ExactMatrix":
        return cls.from_rows(
            field, [[1 if i == j else 0 for j in range(size)] for i in range(size)], size
        )

    @property
    def rows(self) -> int:
        return int(self.data.shape[0])

    @property
    def cols(self) -> int:
        return int(self.data.shape[1])

    def entry(self, i: int, j: int) -> Scalar:
        return Scalar(self.field, self._raw(self.data[i, j]))

    def row(self, i: int) -> tuple[Raw, ...]:
        return tuple(self._raw(x) for x in self.data[i])

    def _raw(self, value: object) -> Raw:
        if self.field.is_prime:
            return int(value)  # type: ignore[call-overload]
        return Fraction(value)  # type: ignore[arg-type]

    def stack(self, other: "ExactMatrix") -> "ExactMatrix":
        require_same_field(self.field, other.field, "stack")
        return ExactMatrix(self.field, np.vstack([self.data, other.data]))

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.field, self.data.T.copy())

    def apply(self, vector: Sequence[Raw]) -> tuple[Raw, ...]:
        """Matrix-vector product."""
        if len(vector) != self.cols:
            raise PreconditionError(
                f"Vector of length {len(vector)} for {self.cols} columns", operation="apply"
            )
        result = []
        for i in range(self.rows):
            total = self.field.zero
            for j in range(self.cols):
                total = self.field.add(total, self.field.mul(self._raw(self.data[i, j]), vector[j]))
            result.append(total)
        return tuple(result)

    def matmul(self, other: "ExactMatrix") -> "ExactMatrix":
        require_same_field(self.field, other.field, "matmul")
        columns = [other.transpose().row(j) for j in range(other.cols)]
        products = [self.apply(column) for column in columns]
        rows = [[products[j][i] for j in range(other.cols)] for i in range(self.rows)]
        return ExactMatrix.from_rows(self.field, rows, other.cols)

    def rank(self) -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        if self.field.is_prime:
            return len(_rref_modp(self.data, self.field.characteristic)[1])
        integer, _ = _integer_rows(self.data)
        return len(_bareiss(integer)[1])

    def rank_and_kernel(self) -> tuple[int, list[tuple[Raw, ...]]]:
        """Exact rank and a basis of the right kernel {v : M v = 0}."""
        n = self.cols
        if self.rows == 0 or n == 0:
            basis = [tuple(self.field.one if i == j else self.field.zero for i in range(n)) for j in range(n)]
            return 0, basis
        if self.field.is_prime:
            return self._kernel_modp()
        return self._kernel_rational()

    def _kernel_modp(self) -> tuple[int, list[tuple[Raw, ...]]]:
        p = self.field.characteristic
        reduced, pivots, _ = _rref_modp(self.data, p)
        pivot_set = set(pivots)
        basis = []
        for free in range(self.cols):
            if free in pivot_set:
                continue
            vector = np.zeros(self.cols, dtype=np.int64)
            vector[free] = 1
            for i, column in enumerate(pivots):
                vector[column] = -int(reduced[i, free]) % p
            basis.append(tuple(int(x) for x in vector))
        return len(pivots), basis

    def _kernel_rational(self) -> tuple[int, list[tuple[Raw, ...]]]:
        integer, _ = _integer_rows(self.data)
        echelon, pivots, _ = _bareiss(integer)
        pivot_set = set(pivots)
        basis = []
        for free in range(self.cols):
            if free in pivot_set:
                continue
            vector = [Fraction(0)] * self.cols
            vector[free] = Fraction(1)
            for i in range(len(pivots) - 1, -1, -1):
                column = pivots[i]
                total = sum(
                    (echelon[i, j] * vector[j] for j in range(column + 1, self.cols) if vector[j]),
                    Fraction(0),
                )
                vector[column] = -total / echelon[i, column]
            basis.append(tuple(vector))
        return len(pivots), basis

    def determinant(self) -> Scalar:
        if self.rows != self.cols:
            raise PreconditionError(
                f"Determinant of a non-square {self.rows}x{self.cols} matrix",
                operation="determinant",
            )
        if self.rows == 0:
            return Scalar(self.field, self.field.one)
        if self.field.is_prime:
            _, pivots, factor = _rref_modp(self.data, self.field.characteristic)
            value = factor if len(pivots) == self.rows else 0
            return Scalar(self.field, value)
        integer, scale = _integer_rows(self.data)
        echelon, pivots, sign = _bareiss(integer)
        if len(pivots) < self.rows:
            return Scalar(self.field, Fraction(0))
        return Scalar(self.field, Fraction(sign * echelon[-1, -1]) / scale)

    def inverse(self) -> "ExactMatrix":
        """Inverse by Gauss-Jordan on the augmented matrix [M | I]."""
        size = self.rows
        if size != self.cols:
            raise PreconditionError("Inverse of a non-square matrix", operation="inverse")
        augmented = np.hstack([self.data, ExactMatrix.identity(self.field, size).data])
        if self.field.is_prime:
            reduced, pivots, _ = _rref_modp(augmented, self.field.characteristic)
        else:
            reduced, pivots = _rref_fraction(augmented)
        if pivots[:size] != list(range(size)) or len(pivots) < size:
            raise PreconditionError("Matrix is singular", operation="inverse")
        return ExactMatrix(self.field, np.array(reduced[:size, size:], dtype=self.field.dtype))


def rank_and_kernel(matrix: ExactMatrix) -> tuple[int, list[tuple[Raw, ...]]]:
    """Exact rank and kernel basis of ``matrix``."""
    return matrix.rank_and_kernel()
