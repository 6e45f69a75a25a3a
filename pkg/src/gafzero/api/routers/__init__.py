"""API routers."""

from . import constants, kernels, predictions

__all__ = ["constants", "kernels", "predictions"]
