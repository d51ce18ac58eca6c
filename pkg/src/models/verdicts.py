"""Verdict models pairing numerical conditions with their outcome."""

from enum import Enum

from pydantic import Field, model_validator

from src.models.base import ExactRational, WaringBaseModel
from src.models.specs import SpecializedSpec, SystemSpec


class AhTag(str, Enum):
    """Outcome of the double-point interpolation theorem for one triple."""

    EXPECTED_EFFECTIVE = "expected_effective"
    EXPECTED_EMPTY = "expected_empty"
    EXCEPTIONAL = "exceptional"
    OUT_OF_THEOREM_RANGE = "out_of_theorem_range"


class AhStatus(WaringBaseModel):
    spec: SystemSpec
    tag: AhTag
    dim: int = Field(..., ge=-1, description="Projective dimension, -1 means empty")
    expected: int = Field(..., description="Expected dimension, possibly below -1")

    @property
    def is_expected(self) -> bool:
        return self.tag in (AhTag.EXPECTED_EFFECTIVE, AhTag.EXPECTED_EMPTY)


class RuleSet(str, Enum):
    D_AT_LEAST_5 = "d>=5"
    D_EQUALS_4 = "d=4"
    D_EQUALS_3 = "d=3"
    DIMBASE_DIRECT = "dimbase_direct"
    EXPLICIT_OVERRIDE = "explicit_override"


REQUIRED_CONDITIONS: dict[RuleSet, tuple[str, ...]] = {
    RuleSet.D_AT_LEAST_5: ("L", "H", "LH", "C"),
    RuleSet.D_EQUALS_4: ("L", "H", "LH", "C", "D4"),
    RuleSet.D_EQUALS_3: ("D3",),
    RuleSet.DIMBASE_DIRECT: ("G_ee", "G_residual_ee", "G_trace_expected", "bound"),
    RuleSet.EXPLICIT_OVERRIDE: ("L", "H", "LH", "C"),
}


class WinVerdict(WaringBaseModel):
    """Whether a hyperplane-specialized system satisfies the degeneration package.

    ``conditions`` maps condition names to their truth value; ``None`` marks a
    condition that could not be evaluated without an oracle measurement.
    """

    spec: SpecializedSpec
    win: bool
    rule_set: RuleSet
    conditions: dict[str, bool | None] = Field(default_factory=dict)
    values: dict[str, ExactRational] = Field(default_factory=dict, description="Numbers behind each condition")
    indeterminate: bool = Field(False, description="Needs an oracle-measured dimension")

    @model_validator(mode="after")
    def _check_rules(self) -> "WinVerdict":
        if self.win and not all(self.conditions.get(name) is True for name in REQUIRED_CONDITIONS[self.rule_set]):
            raise ValueError(f"win recorded without all {self.rule_set.value} conditions")
        if self.win and self.indeterminate:
            raise ValueError("an indeterminate verdict cannot be a win")
        return self


class UniquenessTag(str, Enum):
    UNIQUE = "unique"
    NOT_UNIQUE = "not_unique"
    NO_CANONICAL_FORM = "no_canonical_form"
    OUT_OF_THEOREM_RANGE = "out_of_theorem_range"


class UniquenessVerdict(WaringBaseModel):
    """Whether a general form of degree d in n+1 variables has a unique minimal decomposition."""

    d: int = Field(..., ge=1)
    n: int = Field(..., ge=1)
    tag: UniquenessTag
    k: int | None = Field(None, description="binomial(d+n,n)/(n+1) - 1 when integral")
    citation: str = Field(..., description="Statement the verdict rests on")

    @property
    def s(self) -> int | None:
        """Number of summands, k + 1."""
        return None if self.k is None else self.k + 1


class FrupValue(WaringBaseModel):
    """Rounding-up defect of binomial(a+b,a)/(a+1)."""

    a: int = Field(..., ge=0)
    b: int = Field(..., ge=0)
    value: ExactRational

    @model_validator(mode="after")
    def _check_range(self) -> "FrupValue":
        if not 0 <= self.value < 1:
            raise ValueError(f"frup value {self.value} outside [0, 1)")
        return self

    @property
    def vanishes(self) -> bool:
        return self.value == 0


class FcCase(str, Enum):
    L0 = "l0"
    L1 = "l1"
    L2 = "l2"
    NONE = "none"


class FcParameters(WaringBaseModel):
    """Point counts and side conditions for forms of degree D = d + 1."""

    D: int
    n: int
    l0: int
    l1: int
    l2: int
    h0: int
    h1: int
    h2: int | None = Field(None, description="Only defined when binomial(n+d,n-1)/n is integral")
    l0_condition: ExactRational = Field(..., description="n*frup(n-1,d+1) - (n+1)*frup(n,d+1) + 1")
    l12_condition: ExactRational = Field(..., description="The i = 1, 2 value, l0_condition + n + 1")
    frup_trace_vanishes: bool = Field(..., description="frup(n-1,d+1) = 0")
    overrides: dict[str, str] = Field(default_factory=dict, description="Applied override per case")


class FcVerdict(WaringBaseModel):
    D: int
    n: int
    l: int  # noqa: E741
    case: FcCase
    parameters: FcParameters

    @property
    def applies(self) -> bool:
        return self.case is not FcCase.NONE


class ConumVerdict(WaringBaseModel):
    """Three-valued nodality verdict; ``nodal`` is None when indeterminate."""

    spec: SystemSpec
    nodal: bool | None
    exception: str | None = None
    reason: str
