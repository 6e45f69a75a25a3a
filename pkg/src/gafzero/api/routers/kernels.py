"""Kernel evaluation endpoints."""

from typing import Optional

import numpy as np
from fastapi import APIRouter

from ...core.bipotential import q_dzbar_dwbar, q_n
from ...ensembles import EnsembleRegistry
from ...errors import GafZeroError
from ...models import BipotentialValues, KernelRequest, KernelValues
from ..deps import http_error

router = APIRouter()


def _floats(values: np.ndarray) -> list[Optional[float]]:
    return [float(v) if np.isfinite(v) else None for v in np.asarray(values, dtype=float)]


def _complexes(values: np.ndarray) -> list[Optional[complex]]:
    return [complex(v) if np.isfinite(v) else None for v in np.asarray(values, dtype=complex)]


@router.post("/normalized", response_model=KernelValues)
async def normalized(request: KernelRequest) -> KernelValues:
    """P_N(z, w) = e^{−Λ_N} and the derivatives of Λ_N at each pair.

    **Example:**
    ```
    POST /kernels/normalized
    {"ensemble": "su2:16", "z": ["0.1+0.2j"], "w": ["0.3-0.1j"]}
    ```
    """
    z = np.asarray(request.z, dtype=complex)
    w = np.asarray(request.w, dtype=complex)
    try:
        evaluator = EnsembleRegistry.get(request.ensemble)
        evaluator.check_chart(z, w)
        kernel = evaluator.normalized_kernel(z, w)
        d = evaluator.lambda_and_derivatives(z, w)
    except GafZeroError as e:
        raise http_error(e) from e
    return KernelValues(
        ensemble=request.ensemble.label(),
        kernel=[float(v) for v in np.asarray(kernel, dtype=float)],
        lam=_floats(d.value),
        dzbar=_complexes(d.dzbar),
        dwbar=_complexes(d.dwbar),
        dzbar_dwbar=_complexes(d.dzbar_dwbar),
        dzbar_dw=_complexes(d.dzbar_dw),
    )


@router.post("/bipotential", response_model=BipotentialValues)
async def bipotential(request: KernelRequest) -> BipotentialValues:
    """Q_N(z, w) and ∂²Q_N/∂z̄∂w̄ at each pair.

    **Example:**
    ```
    POST /kernels/bipotential
    {"ensemble": "bf:16", "z": [0.0], "w": [0.5]}
    ```
    """
    z = np.asarray(request.z, dtype=complex)
    w = np.asarray(request.w, dtype=complex)
    try:
        q = q_n(request.ensemble, z, w)
        mixed = q_dzbar_dwbar(request.ensemble, z, w)
    except GafZeroError as e:
        raise http_error(e) from e
    return BipotentialValues(
        ensemble=request.ensemble.label(),
        q=[float(v) for v in np.asarray(q, dtype=float)],
        q_dzbar_dwbar=_complexes(mixed),
    )
