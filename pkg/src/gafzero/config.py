"""Configuration management."""

from pathlib import Path
from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Global application settings."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="GAFZERO_",
        case_sensitive=False,
    )

    # Experiment defaults
    workers: Optional[int] = Field(
        default=None, ge=1, description="Worker count; overrides every run config when set"
    )
    seed: int = Field(default=0, ge=0, description="Default base seed")
    n_trials: int = Field(default=10_000, ge=100, description="Default Monte Carlo trials")
    shard_size: int = Field(default=256, ge=1, description="Trials per deterministic shard")
    output_dir: Path = Field(default=Path("."), description="Directory for relative artifacts")

    # Numerics
    boundary_tolerance: float = Field(
        default=1e-9, gt=0, description="Boundary band, relative to the domain radius"
    )
    aberth_max_iterations: int = Field(default=200, ge=1, description="Aberth iteration cap")
    aberth_tolerance: float = Field(default=1e-10, gt=0, description="Root residual tolerance")
    degenerate_fraction: float = Field(
        default=0.01, ge=0, le=1, description="Largest tolerated degenerate-trial fraction"
    )
    dump_trials: int = Field(
        default=1000, ge=1, description="Trials written to zero and coefficient dumps"
    )

    # API settings
    api_host: str = Field(default="127.0.0.1", description="API host")
    api_port: int = Field(default=8000, description="API port")
    api_reload: bool = Field(default=False, description="Enable auto-reload")
    cors_origins: list[str] = Field(default=["*"], description="CORS allowed origins")

    # Logging
    log_level: str = Field(default="WARNING", description="Logging level")


def get_settings() -> Settings:
    """Read settings afresh from the environment."""
    return Settings()


# Global settings instance
settings = Settings()
