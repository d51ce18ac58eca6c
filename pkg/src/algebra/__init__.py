"""Exact arithmetic substrate: fields, matrices, dense forms, resultants."""

from src.algebra.combinatorics import binomial, monomial_index, monomials
from src.algebra.elimination import eliminate
from src.algebra.fields import (
    DEFAULT_PRIMES,
    Field,
    PrimeField,
    RationalField,
    Scalar,
    field_from_descriptor,
)
from src.algebra.matrix import ExactMatrix, rank_and_kernel
from src.algebra.polynomial import HomogeneousPoly, random_form, random_matrix, restrict
from src.algebra.univariate import UniPoly, resultant, uni_gcd

__all__ = [
    "DEFAULT_PRIMES",
    "ExactMatrix",
    "Field",
    "HomogeneousPoly",
    "PrimeField",
    "RationalField",
    "Scalar",
    "UniPoly",
    "binomial",
    "eliminate",
    "field_from_descriptor",
    "monomial_index",
    "monomials",
    "random_form",
    "random_matrix",
    "rank_and_kernel",
    "restrict",
    "resultant",
    "uni_gcd",
]
