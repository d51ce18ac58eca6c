"""Base model definitions for WaringLab reports, verdicts and records."""

from fractions import Fraction
from typing import Annotated, Any

from pydantic import BaseModel, ConfigDict, PlainSerializer, PlainValidator


def _parse_fraction(value: Any) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise ValueError(f"Cannot read {value!r} as an exact rational")


def _format_fraction(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


# Exact rational carried as Fraction, serialized as "p/q".
ExactRational = Annotated[
    Fraction,
    PlainValidator(_parse_fraction),
    PlainSerializer(_format_fraction, return_type=str),
]


class WaringBaseModel(BaseModel):
    """Base model for all WaringLab value objects; immutable once built."""

    model_config = ConfigDict(from_attributes=True, arbitrary_types_allowed=True, frozen=True)
