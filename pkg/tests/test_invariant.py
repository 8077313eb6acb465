import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropifs.errors import ConfigError, NotConstantWeightError
from tropifs.examples import (
    build_nonunique_shift_system,
    build_two_point_system,
    lambda_alpha,
    random_system,
)
from tropifs.invariant import (
    BoundaryData,
    build_invariant,
    coding_map,
    constant_weight_density,
    enumerate_invariants,
    j0_image,
    verify_invariant,
)
from tropifs.maxplus import BOTTOM
from tropifs.mane import mane_potential
from tropifs.measures import Density, normalize
from tropifs.mpifs import d_rho, iterate_transfer
from tropifs.spaces import build_grid, build_shift_space

from oracles import dyadic_mp


def test_boundary_data_validation():
    BoundaryData(values={0: 0.0, 1: -1.0}, anchor=0)
    BoundaryData(values={0: 0.0, 1: BOTTOM}, anchor=0)
    with pytest.raises(ConfigError):
        BoundaryData(values={1: -1.0}, anchor=0)
    with pytest.raises(ConfigError):
        BoundaryData(values={0: -0.5}, anchor=0)
    with pytest.raises(ConfigError):
        BoundaryData(values={0: 0.0, 1: 0.5}, anchor=0)


def test_build_invariant_two_point():
    pot = mane_potential(build_two_point_system())
    lam = build_invariant(pot, BoundaryData(values={0: 0.0}, anchor=0))
    assert lam.values.tolist() == [0.0, -1.0]


def test_build_invariant_domain_mismatch():
    pot = mane_potential(build_two_point_system())
    with pytest.raises(ConfigError):
        build_invariant(pot, BoundaryData(values={0: 0.0, 1: -1.0}, anchor=0))


@pytest.mark.parametrize("depth", [3, 4, 5, 6])
@pytest.mark.parametrize("alpha", [0.0, 0.25, 0.5, 0.75])
def test_build_invariant_matches_family(depth, alpha):
    system = build_nonunique_shift_system(depth)
    pot = mane_potential(system)
    words = system.space.points
    boundary = BoundaryData(
        values={words.index((1,) * depth): 0.0, words.index((2,) * depth): -alpha},
        anchor=words.index((1,) * depth),
    )
    built = build_invariant(pot, boundary)
    assert np.array_equal(built.values, lambda_alpha(depth, alpha).values)


def test_build_invariant_single_anchor_is_column():
    system = build_nonunique_shift_system(3)
    pot = mane_potential(system)
    z = pot.aubry[0]
    lam = build_invariant(pot, BoundaryData(values={z: 0.0}, anchor=z))
    assert np.array_equal(lam.values, pot.s.entries[:, z])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_build_invariant_monotone_in_boundary(seed):
    system = build_nonunique_shift_system(4)
    pot = mane_potential(system)
    rng = np.random.default_rng(seed)
    z0, z1 = pot.aubry
    low = float(-rng.random() - 0.1)
    high = low + float(rng.random() * 0.1)
    lam_low = build_invariant(pot, BoundaryData(values={z0: 0.0, z1: low}, anchor=z0))
    lam_high = build_invariant(pot, BoundaryData(values={z0: 0.0, z1: high}, anchor=z0))
    assert np.all(lam_low.values <= lam_high.values)


def test_verify_invariant():
    system = build_two_point_system()
    pot = mane_potential(system)
    lam = build_invariant(pot, BoundaryData(values={0: 0.0}, anchor=0))
    report = verify_invariant(system, lam)
    assert report.passed and report.max_deviation == 0.0

    for alpha in (0.0, 0.25, 0.5):
        lam_a = lambda_alpha(5, alpha)
        rep = verify_invariant(build_nonunique_shift_system(5), lam_a)
        assert rep.passed and rep.max_deviation == 0.0

    perturbed = Density(system.space, [0.0, -1.1])
    rep = verify_invariant(system, perturbed)
    assert not rep.passed
    assert rep.max_deviation >= abs(np.exp(-1.0) - np.exp(-1.1)) - 1e-15


def test_enumerate_invariants_shift():
    system = build_nonunique_shift_system(4)
    pot = mane_potential(system)
    found = enumerate_invariants(system, pot, [0.0, -0.25, -0.5])
    assert len(found) == 3
    for lam in found:
        rep = verify_invariant(system, lam)
        assert rep.passed
    # the three are exactly the family members
    for alpha in (0.0, 0.25, 0.5):
        target = lambda_alpha(4, alpha).values
        assert any(np.array_equal(lam.values, target) for lam in found)


def test_enumerate_invariants_threads_match():
    system = build_nonunique_shift_system(4)
    pot = mane_potential(system)
    seq = enumerate_invariants(system, pot, [0.0, -0.5])
    par = enumerate_invariants(system, pot, [0.0, -0.5], threads=4)
    assert len(seq) == len(par)
    for a, b in zip(seq, par):
        assert np.array_equal(a.values, b.values)


def test_enumerate_invariants_constant_weight_collapses():
    system = random_system(build_grid(0.0, 1.0, 20), 2, 3, constant_weights=True)
    pot = mane_potential(system)
    found = enumerate_invariants(system, pot, [0.0, -0.5, -1.0])
    assert len(found) == 1


def test_enumerate_invariants_singleton_aubry():
    system = build_two_point_system()
    pot = mane_potential(system)
    assert len(enumerate_invariants(system, pot, [0.0, -1.0])) == 1


def test_enumerate_invariants_rejects_positive_levels():
    system = build_two_point_system()
    pot = mane_potential(system)
    with pytest.raises(ConfigError):
        enumerate_invariants(system, pot, [0.5])


def test_coding_map_two_point():
    system = build_two_point_system()
    cm = coding_map(system)
    assert cm.depth == 1 and cm.exact
    assert cm.pi == {(0,): 0, (1,): 1}
    assert cm.j0 == (0,)


def test_coding_map_single_constant_map():
    from tropifs.examples import discrete_index_space
    from tropifs.mpifs import MpIfs, validate

    space = build_grid(0.0, 1.0, 4)
    system = MpIfs(
        space, discrete_index_space(["c"]), np.full((1, 4), 3), np.zeros((1, 4)),
        exact_maps=True,
    )
    validate(system)
    cm = coding_map(system)
    assert set(cm.pi.values()) == {3}


def test_coding_map_shift_words():
    system = random_system(build_shift_space(2, 3), 2, 1, constant_weights=True)
    cm = coding_map(system)
    assert cm.depth == 3 and cm.exact
    words = system.space.points
    for word, target in cm.pi.items():
        spelled = tuple(j + 1 for j in word)
        assert words[target] == spelled


def test_coding_map_requires_constant_weights():
    with pytest.raises(NotConstantWeightError):
        coding_map(build_nonunique_shift_system(3))


def test_constant_weight_density_two_point():
    system = build_two_point_system()
    pot = mane_potential(system)
    lam = constant_weight_density(system, pot)
    assert lam.values.tolist() == [0.0, -1.0]


def test_constant_weight_density_all_zero_weights():
    # two prepend maps, both free: every word costs 0
    from tropifs.examples import discrete_index_space
    from tropifs.mpifs import MpIfs, validate

    space = build_shift_space(2, 2)
    base = build_nonunique_shift_system(2)
    system = MpIfs(
        space, base.index_space, base.maps.copy(), np.zeros((2, space.n)),
        exact_maps=True,
    )
    validate(system)
    pot = mane_potential(system)
    lam = constant_weight_density(system, pot)
    assert np.all(lam.values == 0.0)
    assert set(pot.aubry) == set(range(space.n))


def test_constant_weight_density_rejects_place_dependent():
    system = build_nonunique_shift_system(3)
    pot = mane_potential(system)
    with pytest.raises(NotConstantWeightError):
        constant_weight_density(system, pot)


def test_j0_image_matches_aubry_symbolic():
    for symbols, depth, seed in ((2, 3, 0), (2, 4, 5), (3, 3, 2)):
        system = random_system(
            build_shift_space(symbols, depth), symbols, seed, constant_weights=True
        )
        pot = mane_potential(system)
        cm = coding_map(system)
        assert j0_image(cm) == set(pot.aubry)
    # the two-point system: zero-weight words are the all-first-map ones
    system = build_two_point_system()
    cm = coding_map(system)
    assert j0_image(cm) == {0} == set(mane_potential(system).aubry)


def test_uniqueness_iteration_evidence():
    system = random_system(build_grid(0.0, 1.0, 40), 3, 17, constant_weights=True)
    pot = mane_potential(system)
    lam = constant_weight_density(system, pot)
    rng = np.random.default_rng(0)
    for _ in range(20):
        vals = dyadic_mp(rng, 40, p_bottom=0.1)
        if not (vals > BOTTOM).any():
            vals[0] = 0.0
        start = normalize(Density(system.space, vals))
        res = iterate_transfer(system, start, tol=1e-13)
        assert res.converged
        assert d_rho(res.density, lam) <= 1e-9


def test_build_invariant_outputs_verify_exactly():
    for depth in (3, 5):
        system = build_nonunique_shift_system(depth)
        pot = mane_potential(system)
        for assignment in ([0.0, 0.0], [0.0, -0.75]):
            z0, z1 = pot.aubry
            lam = build_invariant(
                pot, BoundaryData(values={z0: assignment[0], z1: assignment[1]}, anchor=z0)
            )
            assert verify_invariant(system, lam).max_deviation == 0.0


def test_build_invariant_verifies_on_grids():
    # place-dependent snapped systems: built densities are still exact fixed
    # points because every Aubry diagonal is attained at exactly 0
    rng = np.random.default_rng(2)
    for seed in range(6):
        system = random_system(build_grid(0.0, 1.0, 25), 2, seed)
        pot = mane_potential(system)
        levels = {z: float(-np.round(rng.random() * 2**10) / 2**10) for z in pot.aubry}
        anchor = pot.aubry[0]
        levels[anchor] = 0.0
        lam = build_invariant(pot, BoundaryData(values=levels, anchor=anchor))
        assert verify_invariant(system, lam, tol=1e-12).max_deviation == 0.0
