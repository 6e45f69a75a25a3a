"""Self-test result models."""

from typing import Optional

from pydantic import BaseModel, Field


class OracleCheck(BaseModel):
    """Outcome of one oracle comparison."""

    name: str = Field(..., description="Check identifier")
    passed: bool = Field(..., description="Whether the comparison held")
    observed: float = Field(..., description="Computed value")
    expected: float = Field(..., description="Oracle value")
    tolerance: float = Field(..., description="Allowed deviation")
    message: Optional[str] = Field(None, description="Extra detail")


class SelfTestResult(BaseModel):
    """Self-test outcome."""

    valid: bool = Field(..., description="Whether every check passed")
    checks: list[OracleCheck] = Field(default_factory=list, description="Individual checks")
    warnings: list[str] = Field(default_factory=list, description="Warnings")
    checks_performed: list[str] = Field(default_factory=list, description="Checks performed")
