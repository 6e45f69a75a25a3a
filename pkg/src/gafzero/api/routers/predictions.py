"""Leading-order prediction endpoints."""

from fastapi import APIRouter

from ...core.predictions import (
    expected_count_prediction,
    predicted_number_variance,
    predicted_smooth_variance,
    predicted_volume_variance,
)
from ...errors import GafZeroError
from ...models import (
    ExpectedCountRequest,
    GeometryModel,
    NumberVarianceRequest,
    Prediction,
    SmoothVarianceRequest,
    VolumeVarianceRequest,
)
from ..deps import http_error

router = APIRouter()


@router.post("/number", response_model=Prediction)
async def number_variance(request: NumberVarianceRequest) -> Prediction:
    """√N · ν₁ · Length(∂U).

    **Example:**
    ```
    POST /predictions/number
    {"N": 256, "domain": "disk:fs:1.0"}
    ```
    """
    try:
        return predicted_number_variance(request.N, request.domain)
    except GafZeroError as e:
        raise http_error(e) from e


@router.post("/volume", response_model=Prediction)
async def volume_variance(request: VolumeVarianceRequest) -> Prediction:
    """N^{3/2−m} · ν_m · Vol(∂U).

    **Example:**
    ```
    POST /predictions/volume
    {"N": 64, "m": 2, "boundary_volume": 3.5}
    ```
    """
    try:
        return predicted_volume_variance(request.N, request.m, request.boundary_volume)
    except GafZeroError as e:
        raise http_error(e) from e


@router.post("/smooth", response_model=Prediction)
async def smooth_variance(request: SmoothVarianceRequest) -> Prediction:
    """N^{−m} · κ_m · ‖∂∂̄φ‖², with the Laplacian form as ``alternate_value`` for m = 1.

    **Example:**
    ```
    POST /predictions/smooth
    {"N": 256, "test_function": "bump:0.5"}
    ```
    """
    geometry = GeometryModel(kind=request.geometry) if request.geometry is not None else None
    try:
        return predicted_smooth_variance(request.N, request.m, request.test_function, geometry)
    except GafZeroError as e:
        raise http_error(e) from e


@router.post("/expected-count", response_model=Prediction)
async def expected_count(request: ExpectedCountRequest) -> Prediction:
    """N · Area(U) / π, exact at finite N.

    **Example:**
    ```
    POST /predictions/expected-count
    {"ensemble": "su2:20", "domain": "disk:fs:1.0"}
    ```
    """
    try:
        return expected_count_prediction(request.ensemble, request.domain)
    except GafZeroError as e:
        raise http_error(e) from e
