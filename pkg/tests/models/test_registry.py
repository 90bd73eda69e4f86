import numpy as np
import pytest

from twopoint.errors import ConfigError, ModelError, UnsupportedError
from twopoint.models import MODEL_FACTORIES, available_models, model, reference_fields


def test_available() -> None:
    assert available_models() == sorted(MODEL_FACTORIES)
    assert "kl-bernoulli" in available_models()


@pytest.mark.parametrize(
    ["name", "resolved", "dim"],
    [
        ("quadratic", "quadratic:identity", 2),
        ("quadratic:diag:1,2,3", "quadratic:diag:1,2,3", 3),
        ("kl-bernoulli", "kl-bernoulli", 1),
        ("kl-bernoulli-logit", "kl-bernoulli-logit", 1),
        ("kl-categorical", "kl-categorical:3", 2),
        ("kl-categorical:5", "kl-categorical:5", 4),
        ("cantoni", "cantoni:2", 4),
        ("cantoni:3", "cantoni:3", 6),
        ("skewed-categorical:4", "skewed-categorical:4", 3),
    ],
)
def test_model(name, resolved, dim) -> None:
    m = model(name)
    assert m.name == resolved
    assert m.dim == dim
    assert m.domain.contains(m.base_point)


def test_unknown_family() -> None:
    with pytest.raises(ConfigError) as exc:
        model("gaussian")
    assert exc.value.key == "model"
    assert "kl-bernoulli" in str(exc.value)


@pytest.mark.parametrize("name", ["kl-categorical:three", "kl-bernoulli:2", "cantoni:1", "kl-categorical:1"])
def test_bad_argument(name) -> None:
    with pytest.raises(ModelError):
        model(name)


def test_reference_fields() -> None:
    g, t = reference_fields(model("kl-categorical:3"))
    assert g.dense([0.2, 0.3]).shape == (2, 2)
    assert t.dense([0.2, 0.3]).shape == (2, 2, 2)


def test_descriptor_reference() -> None:
    m = model("kl-bernoulli")
    assert m.reference("metric", [0.5])[0, 0] == pytest.approx(4.0)
    with pytest.raises(UnsupportedError):
        m.reference("displayed_metric", [0.5])


def test_field_only_model_has_no_potential() -> None:
    m = model("skewed-categorical:3")
    assert m.potential is None
    assert m.has_references
    with pytest.raises(UnsupportedError):
        m.require_potential()


@pytest.mark.parametrize("name", ["kl-bernoulli", "kl-categorical:4", "cantoni:2", "quadratic:random:3"])
def test_sampling_box_inside_domain(name) -> None:
    m = model(name)
    rng = np.random.default_rng(7)
    for u in rng.random((20, m.dim)):
        assert m.domain.contains(m.domain.from_unit(u))
