"""Universal constants endpoint."""

from fastapi import APIRouter, Depends

from ...core.predictions import kappa_constant, nu_constant
from ...models import UniversalConstants
from ..deps import get_m_max

router = APIRouter()


@router.get("", response_model=list[UniversalConstants])
async def list_constants(m_max: int = Depends(get_m_max)) -> list[UniversalConstants]:
    """ν_m and κ_m for m = 1..m_max.

    **Example:**
    ```
    GET /constants?m_max=3
    ```
    """
    return [
        UniversalConstants(m=m, nu=nu_constant(m), kappa=kappa_constant(m))
        for m in range(1, m_max + 1)
    ]
