import numpy as np
import pytest

from tests import max_diff
from twopoint.cli.sampling import halton, sample_points, unit_grid
from twopoint.errors import ConfigError
from twopoint.models import model


def test_unit_grid() -> None:
    grid = unit_grid(2, 2)
    assert max_diff(grid, [[0.25, 0.25], [0.25, 0.75], [0.75, 0.25], [0.75, 0.75]]) == 0.0


def test_halton_reproducible() -> None:
    a = halton(3, 8, seed=4)
    assert a.shape == (8, 3)
    assert max_diff(a, halton(3, 8, seed=4)) == 0.0
    assert np.all((a >= 0.0) & (a < 1.0))


@pytest.mark.parametrize(
    ["spec", "count"],
    [("origin", 1), ("base", 1), ("grid:3", 9), ("halton:5", 5), ("halton:5:2", 5), ("0.1,0.2;0.3,0.1", 2)],
)
def test_sample_counts(spec, count) -> None:
    points = sample_points(spec, model("kl-categorical:3"))
    assert len(points) == count
    assert all(p.shape == (2,) for p in points)


def test_samples_in_domain() -> None:
    m = model("kl-categorical:4")
    for spec in ("grid:2", "halton:10"):
        assert all(m.domain.contains(p) for p in sample_points(spec, m))


def test_one_dimensional_list() -> None:
    points = sample_points("0.2,0.4,0.6", model("kl-bernoulli"))
    assert [p[0] for p in points] == [0.2, 0.4, 0.6]


def test_base_is_copy() -> None:
    m = model("kl-bernoulli")
    sample_points("base", m)[0][0] = 0.9
    assert m.base_point[0] == 0.5


@pytest.mark.parametrize("spec", ["", "grid:0", "grid:x", "halton:3:s", "0.1,0.2,0.3", "a,b"])
def test_invalid(spec) -> None:
    with pytest.raises(ConfigError) as exc:
        sample_points(spec, model("kl-categorical:3"))
    assert exc.value.key == "points"
