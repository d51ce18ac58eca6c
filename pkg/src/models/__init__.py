"""Pydantic models for WaringLab specs, verdicts, reports and sweep records."""

from src.models.base import ExactRational, WaringBaseModel
from src.models.reports import (
    DecompositionCertificate,
    DimReport,
    MapReport,
    MapVerdict,
    NodeCheck,
    ResidualReport,
    SecantReport,
    SingularityReport,
    SingularLocus,
    SliceOutcome,
    SpaceProbeResult,
)
from src.models.specs import SpecializedSpec, SystemSpec, as_specialized
from src.models.sweep import ARTIFACT_VERSION, IntRange, Mode, RunConfig, SweepCell, SweepRecord
from src.models.verdicts import (
    AhStatus,
    AhTag,
    ConumVerdict,
    FcCase,
    FcParameters,
    FcVerdict,
    FrupValue,
    RuleSet,
    UniquenessTag,
    UniquenessVerdict,
    WinVerdict,
)
