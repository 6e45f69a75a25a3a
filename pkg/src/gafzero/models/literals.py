"""Compact string literals for ensembles, domains and test functions."""

import json
import math
from typing import Any

from ..errors import ConfigError


def _floats(text: str, what: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",")]
    except ValueError as e:
        raise ConfigError(f"malformed {what}: {text!r}") from e


def _split_at(body: str) -> tuple[str, tuple[float, float]]:
    if "@" not in body:
        return body, (0.0, 0.0)
    body, _, point = body.partition("@")
    xy = _floats(point, "center")
    if len(xy) != 2:
        raise ConfigError(f"center needs two coordinates: {point!r}")
    return body, (xy[0], xy[1])


def _maybe_json(text: str) -> dict[str, Any] | None:
    stripped = text.strip()
    if not stripped.startswith("{"):
        return None
    try:
        data = json.loads(stripped)
    except json.JSONDecodeError as e:
        raise ConfigError(f"malformed JSON literal: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError("JSON literal must be an object")
    return data


def parse_ensemble(text: str) -> dict[str, Any]:
    """Parse ``su2:128``, ``bf:64[:K]`` or ``su11:32[:K]`` (or a JSON object).

    Raises:
        ConfigError: Unrecognized literal.
    """
    data = _maybe_json(text)
    if data is not None:
        return data
    parts = text.strip().lower().split(":")
    if len(parts) not in (2, 3) or parts[0] not in ("su2", "bf", "su11"):
        raise ConfigError(f"malformed ensemble literal: {text!r}")
    try:
        result: dict[str, Any] = {"family": parts[0], "N": int(parts[1])}
        if len(parts) == 3:
            result["truncation_degree"] = int(parts[2])
    except ValueError as e:
        raise ConfigError(f"malformed ensemble literal: {text!r}") from e
    return result


def parse_domain(text: str) -> dict[str, Any]:
    """Parse a domain literal.

    Forms: ``sphere``, ``disk:fs:1.0[@x,y]``, ``annulus:flat:0.5:1.0[@x,y]``,
    ``polygon:hyperbolic:x0,y0;x1,y1;x2,y2``, or a JSON object. A leading ``!``
    takes the complement.

    Raises:
        ConfigError: Unrecognized literal.
    """
    data = _maybe_json(text)
    if data is not None:
        return data
    literal = text.strip().lower()
    complement = literal.startswith("!")
    literal = literal.lstrip("!")
    if literal == "sphere":
        return {"shape": "disk", "geometry": "fs", "radius": math.inf, "complement": complement}
    parts = literal.split(":")
    if len(parts) < 3:
        raise ConfigError(f"malformed domain literal: {text!r}")
    shape, geometry = parts[0], parts[1]
    result: dict[str, Any] = {"shape": shape, "geometry": geometry, "complement": complement}
    if shape == "disk" and len(parts) == 3:
        radius, center = _split_at(parts[2])
        result.update(radius=_floats(radius, "radius")[0], center=center)
    elif shape == "annulus" and len(parts) == 4:
        r_out, center = _split_at(parts[3])
        result.update(
            r_in=_floats(parts[2], "radius")[0], r_out=_floats(r_out, "radius")[0], center=center
        )
    elif shape == "polygon" and len(parts) == 3:
        vertices = []
        for chunk in parts[2].split(";"):
            xy = _floats(chunk, "vertex")
            if len(xy) != 2:
                raise ConfigError(f"vertex needs two coordinates: {chunk!r}")
            vertices.append((xy[0], xy[1]))
        result["vertices"] = vertices
    else:
        raise ConfigError(f"malformed domain literal: {text!r}")
    return result


def parse_test_function(text: str) -> dict[str, Any]:
    """Parse ``bump:σ[@x,y][*A]`` (or a JSON object).

    Raises:
        ConfigError: Unrecognized literal.
    """
    data = _maybe_json(text)
    if data is not None:
        return data
    literal = text.strip().lower()
    if not literal.startswith("bump:"):
        raise ConfigError(f"malformed test function literal: {text!r}")
    body = literal[len("bump:") :]
    amplitude = 1.0
    if "*" in body:
        body, _, amp = body.partition("*")
        amplitude = _floats(amp, "amplitude")[0]
    sigma, center = _split_at(body)
    return {"sigma": _floats(sigma, "sigma")[0], "center": center, "amplitude": amplitude}
