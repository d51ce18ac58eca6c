"""Performance tests: large grids of identities and randomized property checks.

Each test carries a wall-clock budget; the grids are large enough that a
regression to naive arithmetic shows up as a timeout here first.
"""

import time

import numpy as np
import pytest

from src.algebra.fields import DEFAULT_PRIMES, PrimeField
from src.algebra.univariate import UniPoly, resultant, uni_gcd
from src.models.specs import SpecializedSpec, SystemSpec
from src.services import numerology
from src.services.interpolation import build_conditions, castelnuovo_check, sample_config, system_dim
from src.services.probes.secant import veronese_secant_dim
from src.services.waring_binary import BinaryForm, rank_lower_bound, sylvester_certificate, sylvester_rank_certificate


@pytest.mark.performance
class TestIdentityScans:
    """Pure-integer statements on grids far beyond the oracle's reach."""

    def test_identity_chain(self):
        """l_d - h_d = l_(d-1) and delta > 0 for 4 <= d, n <= 30."""
        start = time.time()
        for d in range(4, 31):
            for n in range(3, 31):
                l, h = numerology.lh_params(d, n)  # noqa: E741
                assert l - h == numerology.l_value(d - 1, n)
                assert numerology.delta(d, n) > 0, f"({d},{n})"
        assert time.time() - start < 10

    def test_frup_range(self):
        start = time.time()
        for a in range(1, 201):
            for b in range(1, 201):
                value = numerology.frup(a, b).value
                assert 0 <= value < 1
        assert time.time() - start < 10

    @pytest.mark.parametrize("d", [5, 7, 11, 13])
    def test_prime_degree_vanishing(self, d):
        start = time.time()
        assert all(numerology.prime_frup_vanishing(d, n) for n in range(1, 10_001))
        assert time.time() - start < 30


@pytest.mark.performance
class TestRandomizedProperties:
    """Randomized checks of the exact layers."""

    def test_rank_semicontinuity(self, rational_field):
        """Reducing an integer configuration mod p never raises the rank."""
        fields = [PrimeField(p) for p in DEFAULT_PRIMES[:3]]
        for seed, (d, n, l) in enumerate([(3, 2, 3), (4, 2, 5), (3, 3, 4), (4, 3, 7)]):  # noqa: E741
            config = sample_config(SystemSpec(d=d, n=n, l=l), rational_field, seed)
            rational_rank = build_conditions(rational_field, n, d, config.points).rank
            for field in fields:
                assert build_conditions(field, n, d, config.points).rank <= rational_rank

    def test_castelnuovo_on_random_specs(self, prime_field, rng):
        start = time.time()
        for seed in range(100):
            d = int(rng.integers(3, 6))
            n = int(rng.integers(2, 4))
            l = int(rng.integers(1, 9))  # noqa: E741
            h = int(rng.integers(1, l + 1))
            report = castelnuovo_check(SpecializedSpec.of(d, n, l, h), prime_field, seed)
            assert report.total <= report.h_d_minus_1 + report.h_n_minus_1
        assert time.time() - start < 180

    def test_resultant_detects_common_factors(self, prime_field, rng):
        def random_poly(degree: int) -> UniPoly:
            coeffs = [prime_field.random_element(rng) for _ in range(degree)] + [1]
            return UniPoly.make(prime_field, coeffs)

        for trial in range(200):
            f, g = random_poly(int(rng.integers(1, 6))), random_poly(int(rng.integers(1, 6)))
            if trial % 2:
                common = random_poly(int(rng.integers(1, 3)))
                f, g = f * common, g * common
            shares_factor = uni_gcd(f, g).degree > 0
            assert resultant(f, g).is_zero() == shares_factor
            assert shares_factor == bool(trial % 2)


@pytest.mark.performance
class TestSylvesterScale:
    """Certificates on many random binary forms."""

    @pytest.mark.parametrize("d", [3, 5, 7, 9, 11, 13, 15])
    def test_random_rational_forms_are_unique(self, rational_field, d):
        start = time.time()
        rng = np.random.default_rng(d)
        for _ in range(50):
            certificate = sylvester_certificate(BinaryForm.random(rational_field, d, rng))
            assert certificate.unique
            assert certificate.s == (d + 1) // 2
        assert time.time() - start < 120

    @pytest.mark.parametrize("d", [7, 9, 11, 13])
    def test_short_power_sums_recovered(self, prime_field, d):
        """Sums of s < (d+1)/2 powers of distinct linear forms."""
        rng = np.random.default_rng(d)
        for s in range(1, (d + 1) // 2):
            roots = rng.choice(np.arange(1, 1000), size=s, replace=False)
            terms = [(int(rng.integers(1, 100)), int(root), 1) for root in roots]
            form = BinaryForm.power_sum(prime_field, d, terms)
            certificate = sylvester_rank_certificate(form)
            assert certificate.s == s
            assert certificate.unique
            assert all(prime_field.is_zero(certificate.apolar_generator.evaluate(int(root))) for root in roots)
            assert rank_lower_bound(form) == s


@pytest.mark.performance
class TestSecantDuality:
    """Secant dimensions against the interpolation oracle on a full grid."""

    def test_grid(self, prime_field):
        start = time.time()
        for d in range(2, 6):
            for n in range(1, 4):
                for k in range(0, 6):
                    secant = veronese_secant_dim(d, n, k, prime_field, trials=1, seed=k)
                    interpolation = system_dim(SystemSpec(d=d, n=n, l=k + 1), prime_field, trials=1, seed=k)
                    assert secant.measured_dim == secant.N - 1 - interpolation.actual, f"({d},{n},{k})"
        assert time.time() - start < 120
