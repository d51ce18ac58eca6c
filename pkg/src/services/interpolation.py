"""Exact interpolation oracle for forms with assigned double points.

Every measured dimension is projective: -1 means the system is empty. The
hyperplane used for specialization is fixed to H = {x_n = 0}; genericity is
carried by the sampled points.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from src.algebra.combinatorics import binomial
from src.algebra.fields import (
    Field,
    PrimeField,
    RationalField,
    Raw,
    require_characteristic_above,
)
from src.algebra.matrix import ExactMatrix
from src.algebra.polynomial import HomogeneousPoly, derivative_row, evaluation_row
from src.errors import EmptySystemError, PreconditionError, SamplingError
from src.models.reports import DimReport, ResidualReport
from src.models.specs import SpecializedSpec, SystemSpec, as_specialized
from src.services.numerology import ah_status, expected_dim, quadric_system_dim

logger = logging.getLogger(__name__)

Point = tuple[Raw, ...]

MAX_RESAMPLES = 64

# Row provenance marker for an evaluation (simple point) row.
EVALUATION = -1


@dataclass(frozen=True)
class PointConfig:
    """General points plus points on H = {x_n = 0}, all in the chart x_0 = 1."""

    field: Field
    n: int
    general_points: tuple[Point, ...]
    hyperplane_points: tuple[Point, ...] = ()
    seed: int = 0

    @property
    def points(self) -> tuple[Point, ...]:
        return self.general_points + self.hyperplane_points

    def matches(self, spec: SpecializedSpec) -> bool:
        return (
            self.n == spec.n
            and len(self.general_points) == spec.general_count
            and len(self.hyperplane_points) == spec.h
        )


@dataclass(frozen=True)
class ConditionsMatrix:
    """Condition rows with their provenance (point index, variable or EVALUATION)."""

    matrix: ExactMatrix
    provenance: tuple[tuple[int, int], ...]

    @property
    def rank(self) -> int:
        return self.matrix.rank()

    @property
    def kernel_dim(self) -> int:
        """Vector-space dimension of the solution space."""
        return self.matrix.cols - self.matrix.rank()


def _sample_point(field: Field, n: int, rng: np.random.Generator, on_hyperplane: bool) -> Point:
    coordinates = [field.one] + [field.random_element(rng) for _ in range(n)]
    if on_hyperplane:
        coordinates[n] = field.zero
    return tuple(coordinates)


def sample_config(spec: SystemSpec | SpecializedSpec, field: Field, seed: int = 0) -> PointConfig:
    """Sample l - h general points and h points on H, reproducibly from ``seed``.

    Raises:
        SamplingError: if distinct points cannot be found
    """
    spec = as_specialized(spec)
    require_characteristic_above(field, spec.d, "sample_config")
    n = spec.n
    if n == 1 and spec.h > 1:
        raise SamplingError(f"P^0 holds a single point, cannot place h={spec.h}", operation="sample_config")
    rng = np.random.default_rng(seed)
    seen: set[Point] = set()
    groups: list[list[Point]] = [[], []]
    for group, count, on_hyperplane in ((0, spec.general_count, False), (1, spec.h, True)):
        for _ in range(count):
            for _ in range(MAX_RESAMPLES):
                point = _sample_point(field, n, rng, on_hyperplane)
                if point not in seen:
                    break
                logger.debug(f"Resampling colliding point {point}")
            else:
                raise SamplingError(
                    f"Could not sample {spec.l} distinct points over {field.descriptor}",
                    operation="sample_config",
                    spec=str(spec),
                )
            seen.add(point)
            groups[group].append(point)
    return PointConfig(field, n, tuple(groups[0]), tuple(groups[1]), seed)


def build_conditions(
    field: Field,
    n: int,
    d: int,
    double_points: Sequence[Point],
    simple_points: Sequence[Point] = (),
) -> ConditionsMatrix:
    """Derivative rows at each double point and evaluation rows at each simple point.

    In degree 0 a double point only asks the constant to vanish.
    """
    rows: list[list[Raw]] = []
    provenance: list[tuple[int, int]] = []
    for index, point in enumerate(double_points):
        if d == 0:
            rows.append(evaluation_row(field, n, d, point))
            provenance.append((index, EVALUATION))
            continue
        for variable in range(n + 1):
            rows.append(derivative_row(field, n, d, point, variable))
            provenance.append((index, variable))
    offset = len(double_points)
    for index, point in enumerate(simple_points):
        rows.append(evaluation_row(field, n, d, point))
        provenance.append((offset + index, EVALUATION))
    matrix = ExactMatrix.from_rows(field, rows, binomial(n + d, n))
    return ConditionsMatrix(matrix, tuple(provenance))


def conditions_matrix(
    spec: SystemSpec | SpecializedSpec,
    config: PointConfig,
    simple_points: Sequence[Point] = (),
) -> ConditionsMatrix:
    """Double-point condition matrix of ``spec`` at the points of ``config``."""
    spec = as_specialized(spec)
    if not config.matches(spec):
        raise PreconditionError(
            f"Config with {len(config.general_points)}+{len(config.hyperplane_points)} points does not match {spec}",
            operation="conditions_matrix",
        )
    return build_conditions(config.field, spec.n, spec.d, config.points, simple_points)


def predicted_dim(spec: SystemSpec) -> tuple[int, str]:
    """Dimension the closed-form statements predict, with the statement's tag."""
    d, n, l = spec.d, spec.n, spec.l  # noqa: E741
    if l == 0:
        return binomial(n + d, n) - 1, "no_conditions"
    if d == 1:
        return -1, "linear"
    if n == 1:
        # Double points on the line impose independent conditions.
        return max(d - 2 * l, -1), "binary"
    if d == 2:
        return quadric_system_dim(n, l), "quadric_cone"
    status = ah_status(spec)
    return status.dim, status.tag.value


def trial_fields(fields: Field | Sequence[Field]) -> list[Field]:
    """Normalize a single field or a rotation of fields into a list."""
    if isinstance(fields, (PrimeField, RationalField)):
        return [fields]
    if not fields:
        raise PreconditionError("At least one field is required", operation="system_dim")
    return list(fields)


def _measure(
    spec: SpecializedSpec,
    fields: Field | Sequence[Field],
    trials: int,
    seed: int,
    operation: str,
) -> DimReport:
    if trials < 1:
        raise PreconditionError(f"trials must be positive, got {trials}", operation=operation)
    pool = trial_fields(fields)
    for field in pool:
        require_characteristic_above(field, spec.d, operation)
    columns = binomial(spec.n + spec.d, spec.n)
    ranks: list[int] = []
    used: list[str] = []
    for trial in range(trials):
        field = pool[trial % len(pool)]
        config = sample_config(spec, field, seed + trial)
        rank = conditions_matrix(spec, config).rank
        logger.debug(f"{operation} {spec} trial {trial} over {field.descriptor}: rank {rank}")
        ranks.append(rank)
        used.append(field.descriptor)
    arbiter_used = False
    if len(set(ranks)) > 1:
        logger.warning(f"{operation} {spec}: ranks {ranks} disagree, recomputing over the rationals")
        config = sample_config(spec, RationalField(), seed + trials)
        ranks.append(conditions_matrix(spec, config).rank)
        used.append("rational")
        arbiter_used = True
    best = max(range(len(ranks)), key=lambda i: ranks[i])
    actual = columns - 1 - ranks[best]
    if spec.h == 0:
        predicted, tag = predicted_dim(spec.base)
    else:
        predicted, tag = max(expected_dim(spec.base), -1), "expected"
    report = DimReport(
        spec=spec,
        expected=expected_dim(spec.base),
        actual=actual,
        field=used[best],
        fields=used,
        ranks=ranks,
        trials=trials,
        seed=seed,
        predicted=predicted,
        prediction_tag=tag,
        agreement=actual == predicted,
        arbiter_used=arbiter_used,
    )
    logger.info(f"{operation} {spec}: actual {actual}, expected {report.expected}, agreement {report.agreement}")
    return report


def system_dim(
    spec: SystemSpec,
    fields: Field | Sequence[Field],
    trials: int = 3,
    seed: int = 0,
) -> DimReport:
    """Measured dim G_{d,n,l}: the maximal rank over ``trials`` configurations.

    Trials cycle through ``fields``; if their ranks disagree an extra
    rational trial arbitrates and ``arbiter_used`` is set.
    """
    return _measure(as_specialized(spec), fields, trials, seed, "system_dim")


def specialized_dim(
    spec: SpecializedSpec,
    fields: Field | Sequence[Field],
    trials: int = 3,
    seed: int = 0,
) -> DimReport:
    """Measured dim H_{H,d,n,l,h} with h points on H = {x_n = 0}."""
    return _measure(spec, fields, trials, seed, "specialized_dim")


def castelnuovo_check(spec: SpecializedSpec, field: Field, seed: int = 0) -> ResidualReport:
    """Residual, trace and total counts of the restriction sequence to H.

    The residual system has degree d - 1, double points at the general
    points and simple points at the points of H. The trace system lives on
    H = P^{n-1} with the last coordinate dropped.
    """
    if spec.h < 1:
        raise PreconditionError("castelnuovo_check needs h >= 1", operation="castelnuovo_check")
    config = sample_config(spec, field, seed)
    d, n = spec.d, spec.n
    total = conditions_matrix(spec, config).kernel_dim
    residual = build_conditions(field, n, d - 1, config.general_points, config.hyperplane_points).kernel_dim
    trace_points = [point[:-1] for point in config.hyperplane_points]
    trace = build_conditions(field, n - 1, d, trace_points).kernel_dim
    report = ResidualReport(
        spec=spec,
        h_d_minus_1=residual,
        h_n_minus_1=trace,
        total=total,
        field=field.descriptor,
        seed=seed,
    )
    logger.info(f"castelnuovo_check {spec}: {residual} + {trace} vs total {total}")
    return report


def kernel_members(spec: SystemSpec | SpecializedSpec, config: PointConfig) -> list[HomogeneousPoly]:
    """A basis of the linear system as forms."""
    spec = as_specialized(spec)
    if spec.d < 1:
        raise PreconditionError("kernel_members needs d >= 1", operation="kernel_members")
    _, basis = conditions_matrix(spec, config).matrix.rank_and_kernel()
    return [HomogeneousPoly(config.field, spec.n, spec.d, vector) for vector in basis]


def random_member(
    spec: SystemSpec | SpecializedSpec, config: PointConfig, seed: int = 0
) -> HomogeneousPoly:
    """A random linear combination of a kernel basis.

    Raises:
        EmptySystemError: if no nonzero form satisfies the conditions
    """
    members = kernel_members(spec, config)
    if not members:
        raise EmptySystemError(f"The system {as_specialized(spec)} is empty", operation="random_member")
    field = config.field
    rng = np.random.default_rng(seed)
    while True:
        result = HomogeneousPoly.zero(field, members[0].n, members[0].d)
        for member in members:
            result = result + member.scale(field.random_element(rng))
        if not result.is_zero():
            return result


def verify_member(form: HomogeneousPoly, config: PointConfig) -> bool:
    """Recheck that every partial of ``form`` vanishes at every imposed point."""
    field = form.field
    return all(
        all(field.is_zero(value) for value in form.gradient_at(point)) for point in config.points
    )


def base_probe(spec: SystemSpec | SpecializedSpec, config: PointConfig, extra_point: Sequence[Raw]) -> bool:
    """True iff every member of the system vanishes at ``extra_point``.

    Raises:
        EmptySystemError: if the system is empty
    """
    members = kernel_members(spec, config)
    if not members:
        raise EmptySystemError(f"The system {as_specialized(spec)} is empty", operation="base_probe")
    field = config.field
    point = tuple(field.convert(x) for x in extra_point)
    return all(field.is_zero(member.evaluate(point)) for member in members)
