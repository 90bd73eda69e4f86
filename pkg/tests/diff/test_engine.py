import itertools

import numpy as np
import pytest

from tests import max_diff
from twopoint.diff import (
    DiffConfig,
    SlotPattern,
    TwoPointFunction,
    derivative_table,
    diagonal_gradient,
    gradient_at,
    mixed_partial,
    mixed_partial_at,
    ops,
)
from twopoint.diff.engine import keys_for_marks, uses_jets
from twopoint.errors import DimensionError, DomainError
from twopoint.models import kl_bernoulli, kl_categorical, quadratic_model
from twopoint.models.quadratic import random_spd


def half_distance(n: int) -> TwoPointFunction:
    return TwoPointFunction(n, lambda x, y: 0.5 * sum((y[i] - x[i]) ** 2 for i in range(n)), "half-distance")


def smooth(n: int) -> TwoPointFunction:
    """A generic smooth non-symmetric S."""

    def s(x, y):
        total = 0.0
        for i in range(n):
            total = total + ops.exp(0.3 * x[i] - 0.2 * y[i]) * (1.0 + x[i] * y[(i + 1) % n])
        return total

    return TwoPointFunction(n, s, "smooth")


@pytest.mark.parametrize(["text", "expected"], [("L0L0", 1.0), ("R1R1", 1.0), ("L0R0", -1.0), ("L0R1", 0.0)])
def test_half_distance(method_cfg, text, expected) -> None:
    value = mixed_partial(half_distance(2), [0.3, -1.2], SlotPattern.parse(text), method_cfg)
    assert value.value == pytest.approx(expected, abs=1e-6)


def test_bernoulli_rr(method_cfg) -> None:
    s = kl_bernoulli().potential
    value = mixed_partial(s, [0.3], SlotPattern.parse("R0R0"), method_cfg).value
    assert value == pytest.approx(1 / (0.3 * 0.7), rel=1e-6)


def test_out_of_range_pattern() -> None:
    with pytest.raises(DimensionError):
        mixed_partial(half_distance(2), [0.0, 0.0], SlotPattern.parse("L2R0"))


def test_out_of_domain() -> None:
    with pytest.raises(DomainError):
        mixed_partial(kl_bernoulli().potential, [1.5], SlotPattern.parse("L0R0"))


@pytest.mark.parametrize(
    ["q", "expected"],
    [
        ([0.5], [0.0, 0.0]),
        ([0.2], [0.0, 0.0]),
    ],
)
def test_bernoulli_diagonal_gradient(method_cfg, q, expected) -> None:
    assert max_diff(diagonal_gradient(kl_bernoulli().potential, q, method_cfg), expected) < 1e-8


def test_product_is_not_a_potential(method_cfg) -> None:
    s = TwoPointFunction(1, lambda x, y: x[0] * y[0], "product")
    assert max_diff(diagonal_gradient(s, [1.0], method_cfg), [1.0, 1.0]) < 1e-8


def test_gradient_at_off_diagonal(method_cfg) -> None:
    s = half_distance(2)
    dx, dy = gradient_at(s, [0.0, 1.0], [2.0, -1.0], method_cfg)
    assert max_diff(dx, [-2.0, 2.0]) < 1e-8
    assert max_diff(dy, [2.0, -2.0]) < 1e-8


def test_quadratic_table(method_cfg) -> None:
    m = random_spd(3, seed=7)
    s = quadratic_model(m).potential
    table = derivative_table(s, [0.1, 0.2, 0.3], 2, method_cfg)
    assert max_diff(table.dense("LL"), m) < 1e-6
    assert max_diff(table.dense("RR"), m) < 1e-6
    assert max_diff(table.dense("LR"), -m) < 1e-6
    assert max_diff(table.dense("RL"), -m) < 1e-6


def test_polynomial_exact_with_jets(jet) -> None:
    # degree-4 polynomial: jets reproduce derivatives to rounding
    s = TwoPointFunction(1, lambda x, y: (y[0] - x[0]) ** 4 + x[0] ** 2 * y[0] ** 2, "poly")
    table = derivative_table(s, [1.5], 4, jet)
    assert table[SlotPattern.parse("L0L0R0R0")] == pytest.approx(24.0 + 4.0, abs=1e-12)
    assert table[SlotPattern.parse("L0L0L0R0")] == pytest.approx(-24.0, abs=1e-12)


def test_symmetric_function_swaps(jet) -> None:
    s = smooth(2).symmetrized()
    table = derivative_table(s, [0.4, -0.3], 3, jet)
    for idx in itertools.product(range(2), repeat=3):
        lrr = table[SlotPattern.from_marks("LRR", idx)]
        rll = table[SlotPattern.from_marks("RLL", idx)]
        assert lrr == pytest.approx(rll, abs=1e-12)


def test_slot_order_invariance(method_cfg, rng) -> None:
    s = smooth(2)
    q = [0.2, 0.7]
    for _ in range(5):
        order = int(rng.integers(2, 5))
        marks = "".join(rng.choice(["L", "R"], size=order))
        idx = tuple(int(i) for i in rng.integers(0, 2, size=order))
        base = mixed_partial(s, q, SlotPattern.from_marks(marks, idx), method_cfg).value
        perm = rng.permutation(order)
        permuted = SlotPattern.from_marks("".join(marks[p] for p in perm), [idx[p] for p in perm])
        assert mixed_partial(s, q, permuted, method_cfg).value == pytest.approx(base, abs=method_cfg.tolerance(order))


@pytest.mark.parametrize(["s", "q"], [(kl_bernoulli().potential, [0.3]), (kl_categorical(3).potential, [0.2, 0.5])])
def test_methods_agree(jet, fd, s, q) -> None:
    exact = derivative_table(s, q, 4, jet)
    approx = derivative_table(s, q, 4, fd)
    for order, tol in ((2, 1e-6), (3, 1e-5), (4, 1e-4)):
        for marks in ("L" * order, "R" * order, "L" * (order - 1) + "R"):
            a, b = exact.dense(marks), approx.dense(marks)
            assert max_diff(a, b) <= tol * max(1.0, float(np.max(np.abs(a))))


def test_black_box_falls_back(jet) -> None:
    s = TwoPointFunction(1, lambda x, y: float(np.cosh(y[0] - x[0])), "cosh", jet_capable=False)
    assert not uses_jets(s, jet)
    table = derivative_table(s, [0.0], 2, jet)
    assert table.method == "finite-difference"
    assert table[SlotPattern.parse("L0R0")] == pytest.approx(-1.0, abs=1e-6)


def test_table_mapping_protocol(jet) -> None:
    table = derivative_table(half_distance(2), [0.0, 0.0], 3, jet)
    assert len(table) == 4**2 + 4**3
    assert sum(1 for _ in table) == len(table)
    with pytest.raises(KeyError):
        table[SlotPattern.parse("L0L0L0L0")]
    assert table.order_scale(2) == 1.0
    assert table.order_scale(3) == 0.0


def test_table_restricted_marks(jet) -> None:
    s = kl_categorical(3).potential
    full = derivative_table(s, [0.3, 0.3], 3, jet)
    part = derivative_table(s, [0.3, 0.3], 3, jet, marks=("LR", "LLR"))
    assert max_diff(part.dense("LR"), full.dense("LR")) < 1e-12
    assert max_diff(part.dense("LLR"), full.dense("LLR")) < 1e-12
    with pytest.raises(KeyError):
        part.dense("RRR")


def test_keys_for_marks() -> None:
    assert keys_for_marks(["LR"], 1) == [(0, 1)]
    assert sorted(keys_for_marks(["LL", "RR"], 2)) == [(0, 0), (0, 1), (1, 1), (2, 2), (2, 3), (3, 3)]


def test_table_order_bounds(jet) -> None:
    with pytest.raises(DimensionError):
        derivative_table(half_distance(1), [0.0], 5, jet)
    with pytest.raises(DimensionError):
        derivative_table(half_distance(1), [0.0], 2, jet, marks=("LLR",))


def test_mixed_partial_at(jet) -> None:
    s = quadratic_model(np.eye(1)).potential
    assert mixed_partial_at(s, [1.0], [3.0], SlotPattern.parse("R0R0"), jet).value == 1.0


def test_fd_workers_match_serial(fd) -> None:
    s = smooth(2)
    serial = derivative_table(s, [0.1, 0.2], 3, fd)
    pooled = derivative_table(s, [0.1, 0.2], 3, DiffConfig(method="finite-difference", workers=4))
    assert max_diff(serial.dense("LLR"), pooled.dense("LLR")) == 0.0
