"""Model ensembles: kernels, sampling and evaluation."""

from .bargmann_fock import BargmannFockKernel
from .base import KernelEvaluator, LambdaDerivatives
from .registry import EnsembleRegistry, lambda_and_derivatives, normalized_kernel
from .sampling import draw_coefficients, evaluate, log_coefficients, sample, trial_generator
from .su2 import SU2Kernel
from .su11 import SU11Kernel

__all__ = [
    "BargmannFockKernel",
    "KernelEvaluator",
    "LambdaDerivatives",
    "EnsembleRegistry",
    "lambda_and_derivatives",
    "normalized_kernel",
    "draw_coefficients",
    "evaluate",
    "log_coefficients",
    "sample",
    "trial_generator",
    "SU2Kernel",
    "SU11Kernel",
]
