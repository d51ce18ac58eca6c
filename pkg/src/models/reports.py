"""Oracle and probe reports."""

from enum import Enum
from typing import Any

from pydantic import Field, model_validator

from src.algebra.univariate import UniPoly
from src.models.base import WaringBaseModel
from src.models.specs import SpecializedSpec


class DimReport(WaringBaseModel):
    """Expected versus measured dimension of a (possibly specialized) system."""

    spec: SpecializedSpec
    expected: int = Field(..., description="binomial(n+d,n) - (n+1)l - 1")
    actual: int = Field(..., ge=-1, description="Measured projective dimension")
    field: str = Field(..., description="Descriptor of the field achieving the maximal rank")
    fields: list[str] = Field(default_factory=list, description="Field descriptor per trial")
    ranks: list[int] = Field(default_factory=list, description="Condition-matrix rank per trial")
    trials: int = Field(..., ge=1)
    seed: int
    predicted: int = Field(..., ge=-1, description="Dimension predicted by the interpolation theorem")
    prediction_tag: str = Field(..., description="Tag of the prediction used for agreement")
    agreement: bool
    arbiter_used: bool = Field(False, description="Rational recomputation after a rank disagreement")

    @model_validator(mode="after")
    def _check_bounds(self) -> "DimReport":
        if self.actual < max(self.expected, -1):
            raise ValueError(f"actual {self.actual} below expected {self.expected}")
        return self


class ResidualReport(WaringBaseModel):
    """The three vector-space counts of the hyperplane restriction sequence."""

    spec: SpecializedSpec
    h_d_minus_1: int = Field(..., ge=0, description="Residual degree-(d-1) system")
    h_n_minus_1: int = Field(..., ge=0, description="Trace system on the hyperplane")
    total: int = Field(..., ge=0, description="Vector-space dimension of the specialized system")
    field: str
    seed: int

    @model_validator(mode="after")
    def _check_left_exact(self) -> "ResidualReport":
        if self.total > self.h_d_minus_1 + self.h_n_minus_1:
            raise ValueError("total exceeds residual plus trace")
        return self

    @property
    def exact(self) -> bool:
        return self.total == self.h_d_minus_1 + self.h_n_minus_1


class NodeCheck(WaringBaseModel):
    on_hypersurface: bool
    is_singular: bool
    hessian_rank: int | None = Field(None, description="Affine Hessian rank; None off the hypersurface")
    chart: int | None = Field(None, description="Coordinate set to 1 for the affine chart")
    n: int

    @property
    def is_node(self) -> bool:
        return self.is_singular and self.hessian_rank == self.n


class SingularLocus(str, Enum):
    FINITE = "finite"
    CURVE = "curve"
    NOT_PROBED = "not_probed"
    INCONCLUSIVE = "inconclusive"


class SliceOutcome(str, Enum):
    MISS = "miss"
    HIT = "hit"
    DEGENERATE = "degenerate"


class SpaceProbeResult(WaringBaseModel):
    verdict: SingularLocus
    slices: list[SliceOutcome] = Field(default_factory=list)
    retries: int = 0


class SingularityReport(WaringBaseModel):
    """Node checks at the imposed points plus the singular-locus finiteness probe."""

    n: int
    d: int
    node_checks: list[NodeCheck] = Field(default_factory=list)
    locus: SingularLocus
    witness: dict[str, Any] = Field(default_factory=dict)

    @property
    def hessian_ranks(self) -> list[int | None]:
        return [check.hessian_rank for check in self.node_checks]

    @property
    def all_nodes(self) -> bool:
        return all(check.is_node for check in self.node_checks)


class SecantReport(WaringBaseModel):
    d: int
    n: int
    k: int
    N: int = Field(..., description="binomial(n+d,n) - 1")
    measured_dim: int
    expected_dim: int = Field(..., description="min(N, (k+1)(n+1) - 1)")
    interpolation_dim: int = Field(..., ge=-1, description="dim of degree-d forms singular at the same k+1 points")
    field: str
    trials: int
    seed: int

    @model_validator(mode="after")
    def _check_bounds(self) -> "SecantReport":
        if not 0 <= self.measured_dim <= self.expected_dim <= self.N:
            raise ValueError(
                f"secant dimensions out of order: {self.measured_dim}, {self.expected_dim}, {self.N}"
            )
        return self

    @property
    def defect(self) -> int:
        return self.expected_dim - self.measured_dim

    @property
    def duality_holds(self) -> bool:
        return self.measured_dim == self.N - 1 - self.interpolation_dim


class MapVerdict(str, Enum):
    BIRATIONAL = "birational"
    COMPOSED_WITH_PENCIL = "composed_with_pencil"
    FINITE_DEGREE_K = "finite_degree_k"
    INCONCLUSIVE = "inconclusive"


class MapReport(WaringBaseModel):
    n: int
    d: int
    generic_jacobian_rank: int
    fiber_count: int | None = None
    verdict: MapVerdict
    attempts: int = 0

    @model_validator(mode="after")
    def _check_verdict(self) -> "MapReport":
        if (self.verdict is MapVerdict.COMPOSED_WITH_PENCIL) != (self.generic_jacobian_rank <= self.n):
            raise ValueError("pencil verdict must match a deficient Jacobian")
        if self.verdict is MapVerdict.BIRATIONAL and self.fiber_count != 1:
            raise ValueError("birational maps have a single point per general fiber")
        return self


class DecompositionCertificate(WaringBaseModel):
    """Catalecticant certificate for a binary form of odd degree."""

    d: int
    s: int = Field(..., description="Claimed Waring rank")
    kernel_dim: int = Field(..., ge=0)
    apolar_generator: UniPoly = Field(..., exclude=True, description="Degree-s generator as a polynomial in x at y = 1")
    generator: list[str] = Field(..., description="Generator coefficients, x^s first")
    squarefree: bool
    apolar: bool = Field(..., description="Generator annihilates the form")
    unique: bool

    @model_validator(mode="after")
    def _check_unique(self) -> "DecompositionCertificate":
        if self.unique and not (self.kernel_dim == 1 and self.squarefree):
            raise ValueError("uniqueness needs a one-dimensional kernel and a squarefree generator")
        return self
