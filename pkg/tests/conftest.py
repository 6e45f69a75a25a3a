"""Shared fixtures."""

import pytest

from gafzero.models import Domain

from .helpers import make_domain


@pytest.fixture
def fs_unit_disk() -> Domain:
    """Fubini–Study disk |z| < 1, the upper hemisphere."""
    return make_domain("disk:fs:1.0")


@pytest.fixture(autouse=True)
def _no_worker_override(monkeypatch: pytest.MonkeyPatch) -> None:
    """Keep GAFZERO_WORKERS from leaking into tests."""
    monkeypatch.delenv("GAFZERO_WORKERS", raising=False)
