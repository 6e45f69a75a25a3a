"""Run configuration model."""

from enum import Enum
from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .ensemble import EnsembleFamily, EnsembleSpec
from .geometry import Domain
from .literals import parse_domain, parse_ensemble, parse_test_function
from .prediction import Theorem
from .quadrature import BoundaryQuadrature, SmoothQuadrature
from .stats import StandardizationSource
from .zeros import TestFunction

THEOREM_ALIASES = {
    "number": Theorem.NUMBER_VARIANCE.value,
    "volume": Theorem.VOLUME_VARIANCE.value,
    "smooth": Theorem.SMOOTH_VARIANCE.value,
    "expected": Theorem.EXPECTED_COUNT.value,
    "expected-count": Theorem.EXPECTED_COUNT.value,
}


class Command(str, Enum):
    """CLI subcommands."""

    SIMULATE = "simulate"
    PREDICT = "predict"
    BIPOTENTIAL = "bipotential"
    KERNEL_CHECK = "kernel-check"
    NORMALITY = "normality"
    SWEEP = "sweep"
    SELFTEST = "selftest"


class RunConfig(BaseModel):
    """Resolved configuration of one run; unknown keys are rejected."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    command: Command = Field(..., description="What to run")
    ensemble: Optional[EnsembleSpec] = Field(None, description="Ensemble literal")
    family: Optional[EnsembleFamily] = Field(None, description="Family for sweeps")
    domain: Optional[Domain] = Field(None, description="Domain literal")
    test_function: Optional[TestFunction] = Field(None, description="Test function literal")

    n_trials: int = Field(default=10_000, ge=100, description="Monte Carlo trials")
    seed: int = Field(default=0, ge=0, description="Base seed")
    workers: int = Field(default=1, ge=1, description="Worker processes")
    boundary_tolerance: Optional[float] = Field(
        None, gt=0, description="Boundary band relative to the domain radius"
    )

    theorem: Optional[Theorem] = Field(None, description="Prediction to evaluate")
    N: Optional[int] = Field(None, ge=1, description="Degree for predictions")
    m: int = Field(default=1, ge=1, description="Complex dimension for predictions")
    boundary_volume: Optional[float] = Field(None, ge=0, description="Vol(∂U) for m ≥ 2")
    N_list: list[int] = Field(default_factory=list, description="Degrees for sweeps")
    dilate: bool = Field(default=False, description="Sweep BF{1} over √N-dilated domains")
    standardization: StandardizationSource = Field(
        default=StandardizationSource.EMPIRICAL, description="Normality standardization"
    )
    n_draws: int = Field(default=200_000, ge=1000, description="Draws for pair-log checks")

    quadrature: BoundaryQuadrature = Field(
        default_factory=BoundaryQuadrature, description="Boundary quadrature overrides"
    )
    smooth_quadrature: SmoothQuadrature = Field(
        default_factory=SmoothQuadrature, description="Smooth quadrature overrides"
    )

    output: Optional[Path] = Field(None, description="CSV artifact path")
    json_output: Optional[Path] = Field(None, description="JSON artifact path")
    zeros_dump: Optional[Path] = Field(None, description="Per-trial zero dump CSV")
    coefficients_dump: Optional[Path] = Field(None, description="Per-trial coefficient dump CSV")

    @field_validator("ensemble", mode="before")
    @classmethod
    def _ensemble_literal(cls, value: Any) -> Any:
        return parse_ensemble(value) if isinstance(value, str) else value

    @field_validator("domain", mode="before")
    @classmethod
    def _domain_literal(cls, value: Any) -> Any:
        return parse_domain(value) if isinstance(value, str) else value

    @field_validator("test_function", mode="before")
    @classmethod
    def _test_function_literal(cls, value: Any) -> Any:
        return parse_test_function(value) if isinstance(value, str) else value

    @field_validator("theorem", mode="before")
    @classmethod
    def _theorem_alias(cls, value: Any) -> Any:
        if isinstance(value, str):
            return THEOREM_ALIASES.get(value.strip().lower(), value)
        return value

    @field_validator("N_list", mode="before")
    @classmethod
    def _n_list_literal(cls, value: Any) -> Any:
        if isinstance(value, str):
            return [int(part) for part in value.split(",") if part.strip()]
        return value

    @model_validator(mode="after")
    def _check_command(self) -> "RunConfig":
        needs_ensemble = {Command.SIMULATE, Command.BIPOTENTIAL, Command.NORMALITY}
        if self.command in needs_ensemble and self.ensemble is None:
            raise ValueError(f"'{self.command.value}' requires an ensemble")
        if self.command == Command.KERNEL_CHECK and self.ensemble is None and self.family is None:
            raise ValueError("'kernel-check' requires an ensemble or a family")
        if self.command in (Command.SIMULATE, Command.BIPOTENTIAL, Command.SWEEP):
            if (self.domain is None) == (self.test_function is None):
                raise ValueError(
                    f"'{self.command.value}' requires exactly one of domain or test_function"
                )
        if self.command == Command.NORMALITY and self.test_function is None:
            raise ValueError("'normality' requires a test_function")
        if self.command == Command.PREDICT and (self.theorem is None or self.N is None):
            raise ValueError("'predict' requires theorem and N")
        if self.command == Command.SWEEP:
            if self.family is None:
                raise ValueError("'sweep' requires a family")
            if not self.N_list or self.N_list != sorted(set(self.N_list)):
                raise ValueError("'N_list' must be a non-empty increasing list")
        return self
