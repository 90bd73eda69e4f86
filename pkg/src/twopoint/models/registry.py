"""Model lookup by name."""
from __future__ import annotations

from typing import Callable, Final

from twopoint.errors import ConfigError, ModelError, UnsupportedError
from twopoint.geometry.fields import MetricField, SkewnessField
from twopoint.models.cantoni import cantoni_overlap
from twopoint.models.descriptor import ModelDescriptor
from twopoint.models.kl import kl_bernoulli, kl_bernoulli_logit, kl_categorical
from twopoint.models.quadratic import parse_quadratic
from twopoint.models.synthetic import skewed_categorical

__all__ = ("MODEL_FACTORIES", "model", "available_models", "reference_fields")


def _int_arg(fn: Callable[[int], ModelDescriptor]) -> Callable[[str], ModelDescriptor]:
    def build(arg: str) -> ModelDescriptor:
        try:
            value = int(arg)
        except ValueError:
            raise ModelError(f"Expected an integer model argument, got {arg!r}") from None
        return fn(value)

    return build


def _no_arg(fn: Callable[[], ModelDescriptor]) -> Callable[[str], ModelDescriptor]:
    def build(arg: str) -> ModelDescriptor:
        if arg:
            raise ModelError(f"Model takes no argument, got {arg!r}")
        return fn()

    return build


MODEL_FACTORIES: Final[dict[str, Callable[[str], ModelDescriptor]]] = {
    "quadratic": parse_quadratic,
    "kl-bernoulli": _no_arg(kl_bernoulli),
    "kl-bernoulli-logit": _no_arg(kl_bernoulli_logit),
    "kl-categorical": _int_arg(kl_categorical),
    "cantoni": _int_arg(cantoni_overlap),
    "skewed-categorical": _int_arg(skewed_categorical),
}
"""Mapping of (model family): (factory taking the text after the first colon)."""

DEFAULT_ARGS: Final[dict[str, str]] = {
    "quadratic": "identity",
    "kl-categorical": "3",
    "cantoni": "2",
    "skewed-categorical": "3",
}


def available_models() -> list[str]:
    return sorted(MODEL_FACTORIES)


def model(name: str) -> ModelDescriptor:
    """
    Resolve ``family[:argument]`` to a model.

    Raises:
        ConfigError: unknown family.
        ModelError: invalid argument for a known family.
    """
    family, _, arg = name.partition(":")
    try:
        factory = MODEL_FACTORIES[family]
    except KeyError:
        raise ConfigError(
            f"Unknown model {name!r}; available: {', '.join(available_models())}", "model", name
        ) from None
    return factory(arg or DEFAULT_ARGS.get(family, ""))


def reference_fields(m: ModelDescriptor) -> tuple[MetricField, SkewnessField]:
    """
    Raises:
        UnsupportedError: the model declares no closed-form fields.
    """
    if m.metric is None or m.skewness is None:
        raise UnsupportedError(f"Model {m.name!r} has no reference fields")
    return m.metric, m.skewness
