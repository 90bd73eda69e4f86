from twopoint.models.cantoni import cantoni_overlap, displayed_metric, pullback_metric
from twopoint.models.descriptor import Domain, ModelDescriptor
from twopoint.models.kl import kl_bernoulli, kl_bernoulli_logit, kl_categorical
from twopoint.models.quadratic import parse_quadratic, quadratic_model
from twopoint.models.registry import MODEL_FACTORIES, available_models, model, reference_fields
from twopoint.models.synthetic import skewed_categorical

__all__ = (
    "Domain",
    "MODEL_FACTORIES",
    "ModelDescriptor",
    "available_models",
    "cantoni_overlap",
    "displayed_metric",
    "kl_bernoulli",
    "kl_bernoulli_logit",
    "kl_categorical",
    "model",
    "parse_quadratic",
    "pullback_metric",
    "quadratic_model",
    "reference_fields",
    "skewed_categorical",
)
