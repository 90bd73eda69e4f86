import itertools

import numpy as np
import pytest

from tests import max_diff
from twopoint.errors import DimensionError
from twopoint.tensors import SymTensor, sym_get, symmetrize


def test_identity_off_diagonal() -> None:
    assert sym_get(SymTensor.identity(2), (0, 1)) == 0.0
    assert sym_get(SymTensor.identity(2), (1, 1)) == 1.0


def test_permuted_index() -> None:
    t = SymTensor.from_function(3, 3, lambda idx: 5.0 if idx == (0, 1, 2) else 0.0)
    assert t[(2, 0, 1)] == 5.0
    assert t[(1, 2, 0)] == 5.0


def test_zero_rank4() -> None:
    t = SymTensor.zeros(3, 4)
    assert t[(2, 0, 1, 1)] == 0.0
    assert t.max_abs() == 0.0


@pytest.mark.parametrize(
    ["dim", "rank", "size"],
    [
        (1, 1, 1),
        (2, 2, 3),
        (3, 3, 10),
        (4, 4, 35),
        (16, 4, 3876),
    ],
)
def test_storage_size(dim, rank, size) -> None:
    assert SymTensor.zeros(dim, rank).size == size


@pytest.mark.parametrize("idx", [(2,), (0, 3), (0, 0, -1)])
def test_index_out_of_range(idx) -> None:
    t = SymTensor.zeros(2, len(idx))
    with pytest.raises(DimensionError):
        sym_get(t, idx)


def test_index_wrong_length() -> None:
    with pytest.raises(DimensionError):
        sym_get(SymTensor.zeros(2, 3), (0, 1))


@pytest.mark.parametrize(["dim", "rank"], [(0, 2), (2, 0), (2, 5)])
def test_bad_shape(dim, rank) -> None:
    with pytest.raises(DimensionError):
        SymTensor.zeros(dim, rank)


def test_wrong_value_count() -> None:
    with pytest.raises(DimensionError):
        SymTensor(2, 2, [1.0, 2.0])


def test_symmetrize_rank2() -> None:
    t = symmetrize([[0.0, 1.0], [0.0, 0.0]])
    assert t[(0, 1)] == 0.5
    assert t[(1, 0)] == 0.5
    assert t[(0, 0)] == 0.0


def test_symmetrize_single_entry() -> None:
    arr = np.zeros((3, 3, 3))
    arr[0, 1, 2] = 6.0
    t = symmetrize(arr)
    assert t[(0, 1, 2)] == pytest.approx(1.0)
    assert t[(0, 0, 1)] == 0.0


def test_symmetrize_idempotent(rng) -> None:
    for rank in range(1, 5):
        arr = rng.normal(size=(3,) * rank)
        once = symmetrize(arr)
        twice = symmetrize(once.dense())
        assert max_diff(once.values, twice.values) < 1e-14


def test_symmetric_input_unchanged() -> None:
    m = np.array([[2.0, 1.0], [1.0, 3.0]])
    assert symmetrize(m).values.tolist() == [2.0, 1.0, 3.0]


def test_symmetrize_non_square() -> None:
    with pytest.raises(DimensionError):
        symmetrize(np.zeros((2, 3)))
    with pytest.raises(DimensionError):
        symmetrize(np.float64(1.0))


def test_permutation_invariance(rng) -> None:
    for rank in range(1, 5):
        t = symmetrize(rng.normal(size=(3,) * rank))
        for idx in itertools.product(range(3), repeat=rank):
            values = {t[perm] for perm in itertools.permutations(idx)}
            assert len(values) == 1


def test_dense_round_trip(rng) -> None:
    t = symmetrize(rng.normal(size=(2, 2, 2)))
    assert SymTensor.from_dense(t.dense()) == t


def test_arithmetic() -> None:
    a = SymTensor.identity(2)
    b = SymTensor(2, 2, [1.0, 2.0, 3.0])
    assert (a + b).values.tolist() == [2.0, 2.0, 4.0]
    assert (b - a).values.tolist() == [0.0, 2.0, 2.0]
    assert (2 * b).values.tolist() == [2.0, 4.0, 6.0]
    assert (-a).values.tolist() == [-1.0, 0.0, -1.0]


def test_arithmetic_shape_mismatch() -> None:
    with pytest.raises(DimensionError):
        SymTensor.identity(2) + SymTensor.identity(3)


def test_immutable() -> None:
    t = SymTensor.identity(2)
    with pytest.raises(ValueError):
        t.values[0] = 3.0


def test_record() -> None:
    t = SymTensor(2, 2, [1.0, 2.0, 3.0])
    record = t.to_record()
    assert record == {"dim": 2, "rank": 2, "values": [1.0, 2.0, 3.0]}
    assert SymTensor.from_record(record) == t


def test_allclose() -> None:
    t = SymTensor(2, 2, [1.0, 0.0, 1.0])
    assert t.allclose(np.eye(2))
    assert not t.allclose(2 * np.eye(2))
