"""Terracini measurement of secant varieties of Veronese embeddings."""

import logging
from collections.abc import Sequence

from src.algebra.combinatorics import binomial
from src.algebra.fields import Field, require_characteristic_above
from src.errors import PreconditionError
from src.models.reports import SecantReport
from src.models.specs import SystemSpec
from src.services.interpolation import build_conditions, sample_config, trial_fields

logger = logging.getLogger(__name__)


def veronese_secant_dim(
    d: int,
    n: int,
    k: int,
    fields: Field | Sequence[Field],
    trials: int = 3,
    seed: int = 0,
) -> SecantReport:
    """dim sec_k of the degree-d Veronese of P^n as the span of k+1 tangent spaces.

    The tangent rows at k+1 points are the double-point condition rows, so
    the same rank also gives dim G_{d,n,k+1}.
    """
    if k < 0 or trials < 1:
        raise PreconditionError(f"Need k >= 0 and trials >= 1, got k={k}, trials={trials}", operation="veronese_secant_dim")
    pool = trial_fields(fields)
    for field in pool:
        require_characteristic_above(field, d, "veronese_secant_dim")
    columns = binomial(n + d, n)
    N = columns - 1
    spec = SystemSpec(d=d, n=n, l=k + 1)
    best_rank, best_field = -1, pool[0]
    for trial in range(trials):
        field = pool[trial % len(pool)]
        config = sample_config(spec, field, seed + trial)
        rank = build_conditions(field, n, d, config.points).rank
        logger.debug(f"secant ({d},{n},{k}) trial {trial} over {field.descriptor}: rank {rank}")
        if rank > best_rank:
            best_rank, best_field = rank, field
    report = SecantReport(
        d=d,
        n=n,
        k=k,
        N=N,
        measured_dim=best_rank - 1,
        expected_dim=min(N, (k + 1) * (n + 1) - 1),
        interpolation_dim=columns - 1 - best_rank,
        field=best_field.descriptor,
        trials=trials,
        seed=seed,
    )
    logger.info(f"secant ({d},{n},{k}): measured {report.measured_dim}, expected {report.expected_dim}")
    return report
