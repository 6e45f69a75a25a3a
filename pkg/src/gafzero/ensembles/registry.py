"""Kernel evaluator registry and factory."""

from typing import Any

from ..models import EnsembleFamily, EnsembleSpec
from .bargmann_fock import BargmannFockKernel
from .base import KernelEvaluator, LambdaDerivatives
from .su2 import SU2Kernel
from .su11 import SU11Kernel


class EnsembleRegistry:
    """Registry of kernel evaluators by ensemble family."""

    _evaluators: dict[EnsembleFamily, type[KernelEvaluator]] = {
        EnsembleFamily.SU2: SU2Kernel,
        EnsembleFamily.BARGMANN_FOCK: BargmannFockKernel,
        EnsembleFamily.SU11: SU11Kernel,
    }

    @classmethod
    def get(cls, ensemble: EnsembleSpec) -> KernelEvaluator:
        """Get the kernel evaluator for an ensemble."""
        evaluator_class = cls._evaluators.get(ensemble.family)
        if not evaluator_class:
            raise ValueError(f"Unknown ensemble family: {ensemble.family}")
        return evaluator_class(ensemble)

    @classmethod
    def register(cls, family: EnsembleFamily, evaluator_class: type[KernelEvaluator]) -> None:
        """Register a custom kernel evaluator."""
        cls._evaluators[family] = evaluator_class


def normalized_kernel(ensemble: EnsembleSpec, z: Any, w: Any) -> Any:
    """P_N(z, w) for the ensemble.

    Raises:
        ChartDomainError: SU(1,1) point outside the unit disk.
    """
    return EnsembleRegistry.get(ensemble).normalized_kernel(z, w)


def lambda_and_derivatives(ensemble: EnsembleSpec, z: Any, w: Any) -> LambdaDerivatives:
    """Λ_N with ∂/∂z̄, ∂/∂w̄, ∂²/∂z̄∂w̄ and the mixed ∂²/∂z̄∂w."""
    return EnsembleRegistry.get(ensemble).lambda_and_derivatives(z, w)
