"""Sweep configuration and persisted JSON-lines records."""

from datetime import datetime
from enum import Enum
from pathlib import Path
from typing import Any

from pydantic import Field, field_validator, model_validator

from src.models.base import WaringBaseModel

ARTIFACT_VERSION = "0.1.0"

OutcomeValue = str | int | bool | None


class Mode(str, Enum):
    PRIME = "prime"
    RATIONAL = "rational"
    BOTH = "both"


class SweepRecord(WaringBaseModel):
    """One persisted row; fields serialize in declaration order."""

    command: str
    d: int
    n: int
    l: int | None = None  # noqa: E741
    h: int | None = None
    k: int | None = None
    field: str = Field(..., description="Prime modulus or 'rational'")
    seed: int
    outcome: dict[str, OutcomeValue] = Field(default_factory=dict)
    wall_ms: float = Field(..., ge=0)
    version: str = ARTIFACT_VERSION
    timestamp: datetime = Field(default_factory=datetime.now)

    @property
    def key(self) -> tuple[Any, ...]:
        return (self.command, self.d, self.n, self.l, self.h, self.k, self.field, self.seed)


class IntRange(WaringBaseModel):
    """Inclusive integer range written ``lo..hi``."""

    lo: int
    hi: int

    @model_validator(mode="after")
    def _check_order(self) -> "IntRange":
        if self.lo > self.hi:
            raise ValueError(f"empty range {self.lo}..{self.hi}")
        return self

    @classmethod
    def parse(cls, text: str) -> "IntRange":
        if ".." in text:
            lo, hi = text.split("..", 1)
            return cls(lo=int(lo), hi=int(hi))
        value = int(text)
        return cls(lo=value, hi=value)

    def values(self) -> range:
        return range(self.lo, self.hi + 1)

    def __str__(self) -> str:
        return f"{self.lo}..{self.hi}"


class RunConfig(WaringBaseModel):
    """A parameter grid for the sweep runner.

    ``l`` defaults to every l with expected dimension >= -(n+1), ``h`` to 0
    and ``k`` (secant sweeps) to every k with (k+1)(n+1) <= binomial(n+d,n).
    """

    command: str = Field("dims", description="dims, secant or sing-probe")
    d: IntRange
    n: IntRange
    l: IntRange | None = None  # noqa: E741
    h: IntRange | None = None
    k: IntRange | None = None
    trials: int = Field(3, ge=1)
    primes: tuple[int, ...]
    seed: int = 0
    output: Path
    mode: Mode = Mode.PRIME
    workers: int = Field(1, ge=1)

    @field_validator("command")
    @classmethod
    def _check_command(cls, value: str) -> str:
        if value not in ("dims", "secant", "sing-probe"):
            raise ValueError(f"unknown sweep command {value!r}")
        return value

    @model_validator(mode="after")
    def _check_primes(self) -> "RunConfig":
        if self.d.lo < 1 or self.n.lo < 1:
            raise ValueError("degrees and dimensions start at 1")
        if self.mode is not Mode.RATIONAL and not self.primes:
            raise ValueError("prime mode needs at least one prime")
        if any(p <= self.d.hi for p in self.primes):
            raise ValueError(f"every prime must exceed the maximal degree {self.d.hi}")
        return self


class SweepCell(WaringBaseModel):
    """One unit of sweep work; its key matches the record it produces."""

    command: str
    d: int
    n: int
    l: int | None = None  # noqa: E741
    h: int | None = None
    k: int | None = None
    field: str
    seed: int
    trials: int = 3

    @property
    def key(self) -> tuple[Any, ...]:
        return (self.command, self.d, self.n, self.l, self.h, self.k, self.field, self.seed)
