"""Binomial coefficients and the canonical monomial basis."""

from functools import lru_cache
from math import comb


def binomial(a: int, b: int) -> int:
    """Return C(a, b), zero when b < 0 or b > a."""
    if a < 0:
        raise ValueError(f"binomial requires a >= 0, got {a}")
    if b < 0 or b > a:
        return 0
    return comb(a, b)


def _compositions(total: int, parts: int) -> list[tuple[int, ...]]:
    if parts == 1:
        return [(total,)]
    result = []
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            result.append((first,) + rest)
    return result


@lru_cache(maxsize=None)
def monomials(n: int, d: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of degree-d monomials in x_0..x_n.

    Graded lexicographic order: within the single degree d this is
    lexicographic with x_0 largest, so x_0^d comes first and x_n^d last.
    """
    if n < 0 or d < 0:
        raise ValueError(f"monomials requires n, d >= 0, got n={n}, d={d}")
    basis = tuple(_compositions(d, n + 1))
    assert len(basis) == binomial(n + d, n)
    return basis


@lru_cache(maxsize=None)
def monomial_index(n: int, d: int) -> dict[tuple[int, ...], int]:
    """Position of each exponent vector in :func:`monomials`."""
    return {exponents: i for i, exponents in enumerate(monomials(n, d))}
