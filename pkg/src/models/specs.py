"""Index types for linear systems of forms with assigned double points."""

from pydantic import Field, model_validator

from src.models.base import WaringBaseModel


class SystemSpec(WaringBaseModel):
    """The triple (d, n, l) of degree-d forms on P^n singular at l general points."""

    d: int = Field(..., ge=1, description="Degree of the forms")
    n: int = Field(..., ge=1, description="Dimension of the projective space")
    l: int = Field(0, ge=0, description="Number of imposed double points")  # noqa: E741

    def __str__(self) -> str:
        return f"({self.d},{self.n},{self.l})"


class SpecializedSpec(WaringBaseModel):
    """A SystemSpec with h of its points specialized onto the hyperplane x_n = 0."""

    base: SystemSpec
    h: int = Field(0, ge=0, description="Number of points specialized to the hyperplane")

    @model_validator(mode="after")
    def _check_h(self) -> "SpecializedSpec":
        if self.h > self.base.l:
            raise ValueError(f"h={self.h} exceeds l={self.base.l}")
        return self

    @classmethod
    def of(cls, d: int, n: int, l: int, h: int = 0) -> "SpecializedSpec":  # noqa: E741
        return cls(base=SystemSpec(d=d, n=n, l=l), h=h)

    @property
    def d(self) -> int:
        return self.base.d

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def l(self) -> int:  # noqa: E743
        return self.base.l

    @property
    def general_count(self) -> int:
        """Points left general, l - h."""
        return self.base.l - self.h

    def __str__(self) -> str:
        return f"({self.d},{self.n},{self.l},{self.h})"


def as_specialized(spec: SystemSpec | SpecializedSpec) -> SpecializedSpec:
    if isinstance(spec, SpecializedSpec):
        return spec
    return SpecializedSpec(base=spec, h=0)
