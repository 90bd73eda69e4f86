import numpy as np
import pytest

from tests import dedent_text
from twopoint.analysis import ExtractionReport, extract
from twopoint.analysis._display import Formatter, indent
from twopoint.diff import DiffConfig
from twopoint.models import quadratic_model
from twopoint.tensors import SymTensor


@pytest.fixture()
def report() -> ExtractionReport:
    return ExtractionReport(
        point=np.zeros(1),
        metric=SymTensor.identity(1),
        skewness=SymTensor.zeros(1, 3),
        q1=SymTensor.zeros(1, 4),
        q2=SymTensor.zeros(1, 4),
        gradient_residual=0.0,
        sign_residuals={"metric": 0.0, "skewness": 0.0},
        config=DiffConfig(method="taylor-jet"),
        label="quadratic:1",
        info_values={"skewness_asymmetry": 0.0},
    )


def test_info(report) -> None:
    assert report.info() == dedent_text(
        """
        quadratic:1 (at [0]):
           metric: rank 2 [00=1]
           metric_eigenvalue_range: [1, 1]
           skewness: rank 3 [000=0]
           q1: rank 4 [0000=0]
           q2: rank 4 [0000=0]
           q1_scaled: 0
           q2_scaled: 0
           gradient_residual: 0
           sign_residuals: {metric: 0, skewness: 0}
           info: {skewness_asymmetry: 0}
           method: 'taylor-jet'
        """
    )


def test_info_with_references(report) -> None:
    text = report.with_references(metric=1.5e-13).info()
    assert "   references: {metric: 1.5e-13}" in text.splitlines()


def test_info_extracted() -> None:
    text = extract(quadratic_model(np.eye(1)).potential, [0.0]).info()
    lines = text.splitlines()
    assert lines[0] == "quadratic:1 (at [0]):"
    assert lines[1] == "   metric: rank 2 [00=1]"
    assert lines[-1] == "   method: 'taylor-jet'"


def test_format_tensor_truncates() -> None:
    fmt = Formatter(arr_max=2)
    assert fmt.format_tensor(SymTensor.identity(3)) == "rank 2 [00=1, 01=0, ... (+4)]"
    assert Formatter(arr_max=None).format_tensor(SymTensor.identity(2)) == "rank 2 [00=1, 01=0, 11=1]"


def test_format_precision() -> None:
    assert Formatter(precision=3).format_value(np.pi) == "3.14"
    assert Formatter().format_value({"a": 0.5}) == "{a: 0.5}"


def test_indent() -> None:
    assert indent("a") == "   a"
    assert indent("a\nb") == "   a\n   b"
