"""Literal-to-model helpers shared by the tests."""

from gafzero.models import Domain, EnsembleSpec, TestFunction
from gafzero.models.literals import parse_domain, parse_ensemble, parse_test_function


def make_domain(text: str) -> Domain:
    """Domain from a CLI literal."""
    return Domain.model_validate(parse_domain(text))


def make_ensemble(text: str) -> EnsembleSpec:
    """Ensemble from a CLI literal."""
    return EnsembleSpec.model_validate(parse_ensemble(text))


def make_bump(text: str) -> TestFunction:
    """Test function from a CLI literal."""
    return TestFunction.model_validate(parse_test_function(text))
