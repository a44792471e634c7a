"""Effective second-gradient elasticity of dilute two-phase composites."""

from __future__ import annotations

import json
import os
from typing import Any, NamedTuple

from ._core import (
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    DimensionError,
    DomainError,
    Error,
    GeometryError,
    NotPositiveDefiniteError,
    SchemaError,
    SymmetryError,
    __version__,
    ball_rho2,
    isotropic_a,
    lame_positive_definite,
    mindlin_eshel,
)
from ._core import run as _run

__all__ = [
    "DEFAULT_SAMPLES",
    "DEFAULT_SEED",
    "DimensionError",
    "DomainError",
    "Error",
    "GeometryError",
    "NotPositiveDefiniteError",
    "Result",
    "SchemaError",
    "SymmetryError",
    "__version__",
    "ball_rho2",
    "check_pd",
    "geometry",
    "homogenize",
    "isotropic_a",
    "lame_positive_definite",
    "mindlin_eshel",
    "verify_energy",
]


class Result(NamedTuple):
    report: dict[str, Any]
    exit_code: int


def _text(document: dict | str | os.PathLike) -> str:
    if isinstance(document, dict):
        return json.dumps(document)
    if isinstance(document, os.PathLike) or (isinstance(document, str) and not document.lstrip().startswith("{")):
        with open(document, encoding="utf-8") as fh:
            return fh.read()
    return document


def _command(name: str, document, **overrides) -> Result:
    text, code = _run(name, _text(document), **overrides)
    return Result(json.loads(text), code)


def homogenize(problem, *, samples=None, seed=None, tol=None) -> Result:
    """Effective nonlocal tensor with its energy certificate."""
    return _command("homogenize", problem, samples=samples, seed=seed, tol=tol)


def verify_energy(problem, *, samples=None, seed=None, tol=None, fsweep=False) -> Result:
    """Energy mismatch over seeded admissible boundary data."""
    return _command("verify-energy", problem, samples=samples, seed=seed, tol=tol, fsweep=fsweep)


def geometry(shapes, *, tol=None, fsweep=False) -> Result:
    """Geometric preconditions of an RVE and inclusion."""
    return _command("geometry", shapes, tol=tol, fsweep=fsweep)


def check_pd(tensor, *, tol=None) -> Result:
    """Positive-definiteness verdict of a stiffness or nonlocal tensor."""
    return _command("check-pd", tensor, tol=tol)
