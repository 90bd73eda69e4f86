"""Point samplers over model domains."""
from __future__ import annotations

import itertools
import logging

import numpy as np
from scipy.stats import qmc

from twopoint._typing import FloatArray
from twopoint.errors import ConfigError
from twopoint.models.descriptor import ModelDescriptor

__all__ = ("sample_points", "unit_grid", "halton", "HALTON_SEED")

log = logging.getLogger(__name__)

HALTON_SEED = 0


def unit_grid(dim: int, k: int) -> FloatArray:
    """Cell centers of a k^dim grid on the unit cube."""
    axis = (np.arange(k) + 0.5) / k
    return np.array(list(itertools.product(axis, repeat=dim)))


def halton(dim: int, k: int, seed: int = HALTON_SEED) -> FloatArray:
    """Scrambled Halton points on the unit cube, reproducible for a fixed seed."""
    return qmc.Halton(d=dim, scramble=True, seed=seed).random(k)


def _count(text: str, spec: str) -> int:
    try:
        k = int(text)
    except ValueError:
        raise ConfigError(f"Invalid point count in {spec!r}", "points", spec) from None
    if k < 1:
        raise ConfigError(f"Point count must be positive in {spec!r}", "points", spec)
    return k


def _seed(text: str, spec: str) -> int:
    if not text:
        return HALTON_SEED
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f"Invalid seed in {spec!r}", "points", spec) from None


def _explicit(spec: str, dim: int) -> list[FloatArray]:
    try:
        if ";" in spec:
            rows = [[float(c) for c in part.split(",")] for part in spec.split(";") if part.strip()]
        elif dim == 1:
            rows = [[float(c)] for c in spec.split(",")]
        else:
            rows = [[float(c) for c in spec.split(",")]]
    except ValueError:
        raise ConfigError(f"Invalid point list {spec!r}", "points", spec) from None
    for row in rows:
        if len(row) != dim:
            raise ConfigError(f"Point {row} has {len(row)} coordinates, model dimension is {dim}", "points", spec)
    return [np.array(row) for row in rows]


def sample_points(spec: str, model: ModelDescriptor) -> list[FloatArray]:
    """
    Resolve a point spec against a model.

    Forms: ``origin``, ``base``, ``grid:K``, ``halton:K[:seed]``, ``a,b;c,d`` or,
    in one dimension, ``a,b,c``.

    Raises:
        ConfigError: malformed spec.
    """
    spec = spec.strip()
    if not spec:
        raise ConfigError("Empty point spec", "points", spec)
    head, _, rest = spec.partition(":")
    dom = model.domain
    if head == "origin":
        return [np.zeros(model.dim)]
    if head == "base":
        return [model.base_point.copy()]
    if head == "grid":
        unit = unit_grid(model.dim, _count(rest, spec))
    elif head == "halton":
        count, _, seed = rest.partition(":")
        unit = halton(model.dim, _count(count, spec), _seed(seed, spec))
    else:
        return _explicit(spec, model.dim)
    points = [dom.from_unit(u) for u in unit]
    log.debug("Sampled %d points from %s with %r", len(points), dom.description, spec)
    return points
