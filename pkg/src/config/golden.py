"""Golden tables shipped as YAML data and validated on load."""

import logging
from functools import lru_cache
from pathlib import Path
from typing import Literal

import yaml
from pydantic import Field, ValidationError

from src.errors import ConfigError
from src.models.base import WaringBaseModel

logger = logging.getLogger(__name__)

GOLDEN_PATH = Path(__file__).resolve().parents[2] / "config" / "golden_tables.yaml"


class DeltaRow(WaringBaseModel):
    d: int
    n: int
    l_minus_h: int
    h: int
    delta: int


class Triple(WaringBaseModel):
    d: int
    n: int
    l: int  # noqa: E741


class SporadicForm(WaringBaseModel):
    d: int
    n: int
    citation: str


class CanonicalForms(WaringBaseModel):
    max_n: int
    odd_binary: bool
    sporadic: list[SporadicForm]


class FcOverride(WaringBaseModel):
    d: int
    n: int
    case: Literal["l0", "l1", "l2"]
    h: int
    route: Literal["win_check", "dimbase"]


class StatedDimension(WaringBaseModel):
    d: int
    n: int
    l: int  # noqa: E741
    dim: int
    context: str


class NodalException(WaringBaseModel):
    d: int
    n: int
    l: int  # noqa: E741
    tag: str


class GoldenTables(WaringBaseModel):
    delta_table: list[DeltaRow]
    ah_exceptions: list[Triple]
    canonical_forms_low_dimension: CanonicalForms
    fc_h_overrides: list[FcOverride] = Field(default_factory=list)
    stated_dimensions: list[StatedDimension] = Field(default_factory=list)
    nodal_exceptions: list[NodalException] = Field(default_factory=list)

    def ah_exception_set(self) -> frozenset[tuple[int, int, int]]:
        return frozenset((t.d, t.n, t.l) for t in self.ah_exceptions)

    def fc_override(self, d: int, n: int, case: str) -> FcOverride | None:
        for override in self.fc_h_overrides:
            if (override.d, override.n, override.case) == (d, n, case):
                return override
        return None

    def nodal_exception(self, d: int, n: int, l: int) -> str | None:  # noqa: E741
        for exception in self.nodal_exceptions:
            if (exception.d, exception.n, exception.l) == (d, n, l):
                return exception.tag
        return None


@lru_cache(maxsize=4)
def load_golden_tables(path: Path = GOLDEN_PATH) -> GoldenTables:
    """Read and validate the golden tables.

    Raises:
        ConfigError: if the file is missing or malformed
    """
    try:
        with open(path, encoding="utf-8") as handle:
            data = yaml.safe_load(handle)
        tables = GoldenTables.model_validate(data)
    except (OSError, yaml.YAMLError, ValidationError) as e:
        raise ConfigError(f"Cannot load golden tables from {path}: {e}", operation="load_golden_tables") from e
    logger.debug(f"Loaded {len(tables.delta_table)} delta-table columns from {path}")
    return tables
