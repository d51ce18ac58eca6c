"""Integration tests for binary Waring certificates."""

import numpy as np
import pytest

from src.algebra.polynomial import random_matrix
from src.algebra.univariate import UniPoly
from src.errors import PreconditionError
from src.services.waring_binary import (
    BinaryForm,
    apolarity_check,
    catalecticant,
    rank_lower_bound,
    sylvester_certificate,
    sylvester_rank_certificate,
)


@pytest.mark.integration
class TestCatalecticant:
    """Test Hankel matrices of binary forms."""

    def test_sum_of_two_fifth_powers(self, prime_field):
        form = BinaryForm.make(prime_field, [1, 0, 0, 0, 0, 1])
        assert catalecticant(form, 2).rank == 2
        assert catalecticant(form, 2).matrix.rows == 4

    def test_pure_power(self, prime_field):
        form = BinaryForm.make(prime_field, [1] * 7)
        assert all(catalecticant(form, a).rank == 1 for a in range(7))

    def test_order_out_of_range(self, prime_field):
        with pytest.raises(PreconditionError):
            catalecticant(BinaryForm.make(prime_field, [1, 2, 3]), 3)

    def test_rank_invariant_under_substitution(self, prime_field, rng):
        form = BinaryForm.random(prime_field, 7, rng)
        moved = form.substitute(random_matrix(prime_field, 2, 2, rng))
        for a in range(8):
            assert catalecticant(form, a).rank == catalecticant(moved, a).rank

    def test_plain_coefficients(self, rational_field):
        """x^2 + 2xy + y^2 has binomial coefficients (1, 1, 1)."""
        form = BinaryForm.from_plain(rational_field, [1, 2, 1])
        assert form.c == (1, 1, 1)
        assert BinaryForm.from_homogeneous(form.to_homogeneous()).c == form.c


@pytest.mark.integration
class TestSylvesterCertificate:
    """Test uniqueness certificates for odd degree."""

    def test_general_quintic_is_unique(self, rational_field, rng):
        form = BinaryForm.random(rational_field, 5, rng)
        certificate = sylvester_certificate(form)
        assert certificate.s == 3
        assert certificate.kernel_dim == 1
        assert certificate.apolar
        assert certificate.unique
        assert len(certificate.generator) == 4

    def test_general_forms_over_prime_field(self, prime_field):
        """Odd degree 2k - 1 with k summands: one generator, k distinct roots."""
        for seed, d in enumerate((3, 5, 7, 9)):
            certificate = sylvester_certificate(BinaryForm.random(prime_field, d, np.random.default_rng(seed)))
            assert certificate.unique
            assert certificate.apolar_generator.distinct_root_count() == (d + 1) // 2

    def test_low_rank_form_is_not_unique(self, prime_field):
        certificate = sylvester_certificate(BinaryForm.make(prime_field, [1, 0, 0, 0, 0, 1]))
        assert certificate.kernel_dim == 2
        assert not certificate.unique

    def test_even_degree_rejected(self, prime_field, rng):
        with pytest.raises(PreconditionError):
            sylvester_certificate(BinaryForm.random(prime_field, 4, rng))

    def test_zero_form_rejected(self, prime_field):
        with pytest.raises(PreconditionError):
            sylvester_certificate(BinaryForm.make(prime_field, [0] * 6))

    def test_serialized_generator(self, rational_field, rng):
        dumped = sylvester_certificate(BinaryForm.random(rational_field, 3, rng)).model_dump(mode="json")
        assert "apolar_generator" not in dumped
        assert dumped["s"] == 2


@pytest.mark.integration
class TestPowerSums:
    """Test recovery of short decompositions."""

    def test_two_seventh_powers(self, prime_field):
        """(x + y)^7 + 2 (3x + y)^7 is recovered from its catalecticants."""
        form = BinaryForm.power_sum(prime_field, 7, [(1, 1, 1), (2, 3, 1)])
        certificate = sylvester_rank_certificate(form)
        assert certificate.s == 2
        assert certificate.unique
        for root in (1, 3):
            assert prime_field.is_zero(certificate.apolar_generator.evaluate(root))
        assert rank_lower_bound(form) == 2

    def test_three_ninth_powers(self, rational_field):
        form = BinaryForm.power_sum(rational_field, 9, [(1, 1, 2), (1, 2, 1), (5, -1, 3)])
        certificate = sylvester_rank_certificate(form)
        assert certificate.s == 3
        for a, b in ((1, 2), (2, 1), (-1, 3)):
            value = rational_field.div(rational_field.convert(a), rational_field.convert(b))
            assert rational_field.is_zero(certificate.apolar_generator.evaluate(value))
        assert rank_lower_bound(form) == 3

    def test_zero_form_has_no_rank_certificate(self, prime_field):
        with pytest.raises(PreconditionError):
            sylvester_rank_certificate(BinaryForm.make(prime_field, [0] * 4))


@pytest.mark.integration
class TestApolarity:
    """Test the apolarity pairing."""

    def test_y_annihilates_pure_x_power(self, prime_field):
        form = BinaryForm.make(prime_field, [1, 0, 0, 0, 0])
        assert apolarity_check(form, UniPoly.constant(prime_field, 1), degree=1)

    def test_x_does_not(self, prime_field):
        form = BinaryForm.make(prime_field, [1, 0, 0, 0, 0])
        assert not apolarity_check(form, UniPoly.x(prime_field))

    def test_operator_degree_bounded(self, prime_field):
        form = BinaryForm.make(prime_field, [1, 0, 0])
        with pytest.raises(PreconditionError):
            apolarity_check(form, UniPoly.make(prime_field, [1, 0, 0, 1]))
