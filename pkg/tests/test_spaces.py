import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropifs.errors import ConfigError, EmptySetError
from tropifs.spaces import (
    build_grid,
    build_point_space,
    build_shift_space,
    check_metric,
    hausdorff,
    snap,
)


def test_grid_basics():
    g = build_grid(0.0, 1.0, 3)
    assert g.n == 3
    assert g.dist[0][2] == 1.0
    assert g.dist[0][1] == 0.5
    assert build_grid(0.0, 1.0, 2).resolution == 0.5


def test_grid_preconditions():
    with pytest.raises(ConfigError):
        build_grid(1.0, 0.0, 3)
    with pytest.raises(ConfigError):
        build_grid(0.0, 1.0, 1)


def test_shift_space_metric():
    s = build_shift_space(2, 2)
    assert s.n == 4
    w = s.points
    assert s.dist[w.index((1, 1)), w.index((2, 1))] == 0.5
    assert s.dist[w.index((1, 1)), w.index((1, 2))] == 0.25
    assert s.resolution == 0.25
    two = build_shift_space(2, 1)
    assert two.n == 2 and two.dist[0, 1] == 0.5


def test_shift_space_preconditions():
    with pytest.raises(ConfigError):
        build_shift_space(0, 2)
    with pytest.raises(ConfigError):
        build_shift_space(2, 0)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 4), st.integers(1, 5))
def test_builders_pass_metric_axioms(symbols, depth):
    s = build_shift_space(symbols, min(depth, 4))
    check_metric(s.dist)
    g = build_grid(-1.0, float(symbols), 5 + depth)
    check_metric(g.dist)


def test_hausdorff_examples():
    g = build_grid(0.0, 1.0, 3)
    assert hausdorff(g, {0, 1}, {0, 1}) == 0.0
    assert hausdorff(g, {0}, {1}) == 0.5
    assert hausdorff(g, {0, 2}, {0}) == 1.0
    with pytest.raises(EmptySetError):
        hausdorff(g, set(), {0})


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_hausdorff_metric_axioms(seed):
    rng = np.random.default_rng(seed)
    g = build_grid(0.0, 1.0, 8)
    sets = []
    while len(sets) < 3:
        mask = rng.random(8) < 0.4
        if mask.any():
            sets.append(set(np.flatnonzero(mask).tolist()))
    a, b, c = sets
    assert hausdorff(g, a, b) == hausdorff(g, b, a)
    assert (hausdorff(g, a, b) == 0.0) == (a == b)
    assert hausdorff(g, a, c) <= hausdorff(g, a, b) + hausdorff(g, b, c) + 1e-12


def test_snap_grid():
    g = build_grid(0.0, 1.0, 3)
    assert snap(g, 0.6) == 1
    assert snap(g, 0.25) == 0  # exact tie, lowest index wins
    assert snap(g, 1.0) == 2


def test_snap_word():
    s = build_shift_space(2, 3)
    assert snap(s, (2, 1, 2)) == s.points.index((2, 1, 2))


@settings(max_examples=50, deadline=None)
@given(st.floats(min_value=-0.5, max_value=1.5, allow_nan=False))
def test_snap_minimizes_distance(x):
    g = build_grid(0.0, 1.0, 7)
    i = snap(g, x)
    assert all(abs(g.points[i] - x) <= abs(p - x) for p in g.points)


def test_bad_metric_rejected():
    with pytest.raises(ConfigError):
        build_point_space(["a", "b"], [[0.0, 1.0], [2.0, 0.0]])  # asymmetric
    with pytest.raises(ConfigError):
        build_point_space(["a", "b"], [[0.0, 0.0], [0.0, 0.0]])  # indistinct
    with pytest.raises(ConfigError):
        # triangle violation: d(a,c) = 5 > 1 + 1
        build_point_space(
            ["a", "b", "c"],
            [[0.0, 1.0, 5.0], [1.0, 0.0, 1.0], [5.0, 1.0, 0.0]],
        )
