"""Pydantic models."""

from .ensemble import (
    EnsembleFamily,
    EnsembleSpec,
    SectionSample,
    default_truncation,
)
from .geometry import Containment, Domain, GeometryKind, GeometryModel, ShapeKind
from .prediction import (
    DecayScan,
    NormalityConditions,
    Prediction,
    ScalingResidual,
    ScalingScan,
    Theorem,
)
from .quadrature import (
    BoundaryQuadrature,
    DiagonalMode,
    QuadratureResult,
    RefinementRow,
    SmoothQuadrature,
)
from .requests import (
    BipotentialValues,
    ExpectedCountRequest,
    KernelRequest,
    KernelValues,
    NumberVarianceRequest,
    SmoothVarianceRequest,
    UniversalConstants,
    VolumeVarianceRequest,
)
from .run import Command, RunConfig
from .stats import (
    MomentSummary,
    NormalityReport,
    PairLogMoment,
    Standardization,
    StandardizationSource,
    SweepRow,
)
from .validation import OracleCheck, SelfTestResult
from .zeros import CountResult, RootMethod, TestFunction, ZeroSet

__all__ = [
    "EnsembleFamily",
    "EnsembleSpec",
    "SectionSample",
    "default_truncation",
    "Containment",
    "Domain",
    "GeometryKind",
    "GeometryModel",
    "ShapeKind",
    "DecayScan",
    "NormalityConditions",
    "Prediction",
    "ScalingResidual",
    "ScalingScan",
    "Theorem",
    "BoundaryQuadrature",
    "DiagonalMode",
    "QuadratureResult",
    "RefinementRow",
    "SmoothQuadrature",
    "BipotentialValues",
    "ExpectedCountRequest",
    "KernelRequest",
    "KernelValues",
    "NumberVarianceRequest",
    "SmoothVarianceRequest",
    "UniversalConstants",
    "VolumeVarianceRequest",
    "Command",
    "RunConfig",
    "MomentSummary",
    "NormalityReport",
    "PairLogMoment",
    "Standardization",
    "StandardizationSource",
    "SweepRow",
    "OracleCheck",
    "SelfTestResult",
    "CountResult",
    "RootMethod",
    "TestFunction",
    "ZeroSet",
]
