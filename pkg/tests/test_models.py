"""Pydantic model and literal tests."""

import math

import pytest
from pydantic import ValidationError

from gafzero.errors import ConfigError
from gafzero.models import (
    Command,
    DiagonalMode,
    EnsembleFamily,
    GeometryKind,
    KernelRequest,
    RunConfig,
    ShapeKind,
    Theorem,
)
from gafzero.models.literals import parse_domain, parse_ensemble, parse_test_function

from .helpers import make_bump, make_domain, make_ensemble


def test_family_and_geometry_enums():
    """Literal values of the enums."""
    assert EnsembleFamily.SU2 == "su2"
    assert GeometryKind.FUBINI_STUDY == "fs"
    assert ShapeKind.ANNULUS == "annulus"


def test_ensemble_literals():
    """``su2:N`` and ``bf:N:K`` forms."""
    su2 = make_ensemble("su2:128")
    assert su2.family == EnsembleFamily.SU2
    assert su2.degree == 128
    assert su2.label() == "su2:128"
    bf = make_ensemble("bf:16:80")
    assert bf.truncation_degree == 80
    assert bf.label() == "bf:16:80"
    assert make_ensemble('{"family": "su11", "N": 8}').geometry.kind == GeometryKind.HYPERBOLIC


@pytest.mark.parametrize("literal", ["su3:4", "su2", "bf:x", "su2:4:5:6"])
def test_malformed_ensemble_literal(literal):
    """Unrecognized ensembles raise ConfigError."""
    with pytest.raises(ConfigError):
        parse_ensemble(literal)


def test_domain_literals():
    """Disk, annulus, polygon, sphere and complement forms."""
    disk = make_domain("disk:fs:0.5@1,2")
    assert disk.radius == 0.5
    assert disk.center == (1.0, 2.0)
    annulus = make_domain("annulus:flat:0.5:1.5")
    assert (annulus.r_in, annulus.r_out) == (0.5, 1.5)
    polygon = make_domain("polygon:hyperbolic:0,0;0.5,0;0,0.5")
    assert polygon.vertices == [(0.0, 0.0), (0.5, 0.0), (0.0, 0.5)]
    sphere = make_domain("sphere")
    assert sphere.is_full_sphere
    assert math.isinf(sphere.radius)
    outside = make_domain("!disk:fs:1.0")
    assert outside.complement and not outside.is_full_sphere
    assert make_domain("!sphere").complement


@pytest.mark.parametrize(
    "literal", ["disk:fs", "disk:fs:a", "polygon:flat:0,0;1", "disk:fs:1@2", '{"shape": '],
)
def test_malformed_domain_literal(literal):
    """Unrecognized domains raise ConfigError."""
    with pytest.raises(ConfigError):
        parse_domain(literal)


def test_domain_field_checks():
    """Shape constraints are enforced by the model."""
    with pytest.raises(ValidationError, match="r_in < r_out"):
        make_domain("annulus:flat:2.0:1.0")
    with pytest.raises(ValidationError, match="Fubini"):
        make_domain("!disk:flat:1.0")
    with pytest.raises(ValidationError, match="3 vertices"):
        make_domain('{"shape": "polygon", "geometry": "flat", "vertices": [[0, 0], [1, 0]]}')


def test_test_function_literal():
    """``bump:σ@x,y*A``."""
    bump = make_bump("bump:0.5@0.1,-0.2*3")
    assert bump.sigma == 0.5
    assert bump.center_z == complex(0.1, -0.2)
    assert bump.amplitude == 3.0
    assert bump.support_radius == pytest.approx(3.0)
    with pytest.raises(ConfigError):
        parse_test_function("gauss:0.5")


def test_test_function_norms():
    """Closed-form integral and Laplacian norm of a Euclidean bump."""
    bump = make_bump("bump:0.5*2")
    assert bump.integral() == pytest.approx(math.pi * 2 * 0.25)
    assert bump.laplacian_norm_sq() == pytest.approx(4 * math.pi * 4 / 0.25)
    assert bump.dbar_norm_sq() == pytest.approx(0.25 * bump.laplacian_norm_sq())


def test_run_config_from_literals():
    """Strings are parsed into models and aliases resolved."""
    config = RunConfig.model_validate(
        {
            "command": "predict",
            "theorem": "number",
            "N": 64,
            "domain": "disk:fs:1.0",
            "quadrature": {"mode": "refine"},
        }
    )
    assert config.command == Command.PREDICT
    assert config.theorem == Theorem.NUMBER_VARIANCE
    assert config.domain.radius == 1.0
    assert config.quadrature.mode == DiagonalMode.LOCAL_REFINEMENT


def test_run_config_n_list_string():
    """``64,128,256`` becomes a list of degrees."""
    config = RunConfig.model_validate(
        {"command": "sweep", "family": "su2", "N_list": "64,128,256", "domain": "disk:fs:1.0"}
    )
    assert config.N_list == [64, 128, 256]


@pytest.mark.parametrize(
    "data,match",
    [
        ({"command": "simulate", "domain": "disk:fs:1.0"}, "requires an ensemble"),
        ({"command": "simulate", "ensemble": "su2:8"}, "exactly one"),
        ({"command": "predict", "theorem": "number"}, "theorem and N"),
        ({"command": "sweep", "family": "su2", "N_list": [4, 2], "domain": "sphere"}, "increas"),
        ({"command": "normality", "ensemble": "su2:8"}, "test_function"),
        ({"command": "kernel-check"}, "ensemble or a family"),
        ({"command": "selftest", "bogus": 1}, "Extra inputs"),
        ({"command": "selftest", "n_trials": 10}, "greater than or equal"),
        ({"command": "simulate", "ensemble": "su2:8", "domain": "disk:fs"}, "malformed"),
    ],
)
def test_run_config_rejects(data, match):
    """Inconsistent or unknown settings fail validation."""
    with pytest.raises(ValidationError, match=match):
        RunConfig.model_validate(data)


def test_kernel_request_lengths():
    """z and w must pair up."""
    request = KernelRequest.model_validate({"ensemble": "su2:4", "z": ["0.1+0.2j"], "w": [0.5]})
    assert request.z == [complex(0.1, 0.2)]
    with pytest.raises(ValidationError, match="same length"):
        KernelRequest.model_validate({"ensemble": "su2:4", "z": [0, 1], "w": [0]})
