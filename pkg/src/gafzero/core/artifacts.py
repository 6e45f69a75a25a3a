"""CSV and JSON artifacts with provenance headers."""

import csv
import json
import logging
from collections.abc import Iterable, Sequence
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

import numpy as np

from .. import __version__
from ..config import get_settings
from ..ensembles import sample
from ..models import EnsembleSpec, RunConfig
from .zeros import find_zeros

UTC = timezone.utc

logger = logging.getLogger(__name__)

RESULT_COLUMNS = [
    "N",
    "n_trials",
    "mean",
    "var",
    "stderr_mean",
    "stderr_var",
    "prediction",
    "ratio",
]
REFINEMENT_COLUMNS = ["n", "value", "delta"]


def resolve_path(path: Path) -> Path:
    """Relative artifact paths land under ``settings.output_dir``."""
    if path.is_absolute():
        return path
    return get_settings().output_dir / path


def config_json(config: RunConfig) -> str:
    """Resolved config as compact JSON with sorted keys."""
    return json.dumps(config.model_dump(mode="json"), sort_keys=True, separators=(",", ":"))


def provenance_header(config: RunConfig) -> list[str]:
    """Comment lines opening every CSV; only the first varies between identical runs."""
    return [
        f"# generated {datetime.now(UTC).isoformat(timespec='seconds')}",
        f"# config: {config_json(config)}",
        f"# version: {__version__}",
    ]


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(
    path: Path,
    columns: Sequence[str],
    rows: Iterable[dict[str, Any]],
    config: RunConfig,
) -> Path:
    """Write rows under a provenance header.

    Floats are written with ``repr`` so values round-trip exactly.

    Returns:
        The resolved path written.
    """
    target = resolve_path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with target.open("w", encoding="utf-8", newline="") as handle:
        for line in provenance_header(config):
            handle.write(line + "\n")
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row.get(column)) for column in columns])
    logger.info("wrote %s", target)
    return target


def write_json(path: Path, result: Any, config: RunConfig) -> Path:
    """Write ``{"version", "generated", "config", "result"}`` as UTF-8 JSON."""
    target = resolve_path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    payload = {
        "version": __version__,
        "generated": datetime.now(UTC).isoformat(timespec="seconds"),
        "config": config.model_dump(mode="json"),
        "result": result,
    }
    target.write_text(json.dumps(payload, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    logger.info("wrote %s", target)
    return target


def _dump_trials(n_trials: int) -> int:
    return min(n_trials, get_settings().dump_trials)


def write_zero_dump(
    path: Path, ensemble: EnsembleSpec, seed: int, n_trials: int, config: RunConfig
) -> Path:
    """Chart zeros of the first trials, one row per zero (trial, re, im, log residual).

    Samples are regenerated from (seed, trial index), so the dump matches the
    trials behind the moment summary.
    """
    rows = []
    for trial_index in range(_dump_trials(n_trials)):
        zeros = find_zeros(sample(ensemble, seed, trial_index))
        for point, residual in zip(zeros.points, zeros.residual_log_moduli, strict=True):
            rows.append(
                {
                    "trial": trial_index,
                    "re": float(point.real),
                    "im": float(point.imag),
                    "log_residual": float(residual),
                }
            )
    return write_csv(path, ["trial", "re", "im", "log_residual"], rows, config)


def write_coefficient_dump(
    path: Path, ensemble: EnsembleSpec, seed: int, n_trials: int, config: RunConfig
) -> Path:
    """Raw Gaussian coefficients of the first trials (trial, k, re, im)."""
    rows = []
    for trial_index in range(_dump_trials(n_trials)):
        coefficients = sample(ensemble, seed, trial_index).coefficients
        for k, c in enumerate(np.asarray(coefficients)):
            rows.append({"trial": trial_index, "k": k, "re": float(c.real), "im": float(c.imag)})
    return write_csv(path, ["trial", "k", "re", "im"], rows, config)
