import numpy as np
import pytest

from tests import max_diff
from twopoint.errors import DimensionError, SingularityError, SymmetryError
from twopoint.tensors import SymTensor, condition_number, invert_matrix, raise_first_index


@pytest.mark.parametrize(
    ["m", "expected"],
    [
        (np.eye(3), np.eye(3)),
        (np.diag([2.0, 4.0]), np.diag([0.5, 0.25])),
        ([[4.0]], [[0.25]]),
    ],
)
def test_invert(m, expected) -> None:
    assert max_diff(invert_matrix(m), expected) < 1e-15


def test_double_inverse(rng) -> None:
    for n in (1, 2, 5, 8):
        a = rng.normal(size=(n, n))
        m = a @ a.T + n * np.eye(n)
        back = invert_matrix(invert_matrix(m))
        assert max_diff(back, m) / np.max(np.abs(m)) < 1e-9


def test_singular() -> None:
    with pytest.raises(SingularityError) as exc:
        invert_matrix([[1.0, 1.0], [1.0, 1.0]])
    assert exc.value.condition > 1e12


def test_ill_conditioned() -> None:
    with pytest.raises(SingularityError):
        invert_matrix(np.diag([1.0, 1e-13]))
    assert invert_matrix(np.diag([1.0, 1e-13]), max_condition=1e14)[1, 1] == pytest.approx(1e13)


def test_not_symmetric() -> None:
    with pytest.raises(SymmetryError):
        invert_matrix([[1.0, 2.0], [0.0, 1.0]])


def test_condition_number() -> None:
    assert condition_number(np.diag([1.0, 4.0])) == pytest.approx(4.0)
    assert condition_number(np.zeros((2, 2))) == float("inf")


def test_raise_identity(rng) -> None:
    t = SymTensor.from_dense(rng.normal(size=(3, 3, 3)))
    assert max_diff(raise_first_index(np.eye(3), t), t.dense()) == 0.0


def test_raise_zero() -> None:
    assert not np.any(raise_first_index(np.eye(2), SymTensor.zeros(2, 3)))


def test_raise_scalar() -> None:
    t = SymTensor(1, 3, [3.0])
    assert raise_first_index([[2.0]], t)[0, 0, 0] == 6.0


def test_raise_shape_errors() -> None:
    with pytest.raises(DimensionError):
        raise_first_index(np.eye(2), SymTensor.zeros(2, 2))
    with pytest.raises(DimensionError):
        raise_first_index(np.eye(3), SymTensor.zeros(2, 3))
