"""Canonical systems for tests and demonstrations.

* the two-point system with constant maps and weights (0, -1), small enough
  that every quantity is a hand computation;
* the binary-shift family with first-symbol-matching weights, which carries
  a whole one-parameter family of invariant densities and is the standard
  witness that place-dependent weights break uniqueness;
* seeded random generators for grids and truncated shifts.

Generated weights are quantized to the dyadic lattice 2^-26 so that all
max-plus path sums are exact float64 values regardless of association
order; exact-equality checks across independently computed quantities are
then meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    ConfigError,
    DemonstrationError,
    GenerationError,
    NormalizationError,
    NotContractiveError,
)
from .measures import Density
from .mpifs import MpIfs, transfer_density, validate
from .mane import mane_potential
from .invariant import BoundaryData, build_invariant
from .fuzzy import d_theta
from .spaces import FiniteSpace, IndexSpace, build_shift_space, snap

QUANT = float(2**-26)


def _dyadic(arr: np.ndarray) -> np.ndarray:
    """Round to the 2^-26 lattice; sums of thousands of these are exact."""
    return np.round(np.asarray(arr, dtype=np.float64) / QUANT) * QUANT


def discrete_index_space(labels: Sequence[str], spacing: float = 1.0) -> IndexSpace:
    m = len(labels)
    dist = spacing * (1.0 - np.eye(m))
    return IndexSpace(labels=list(labels), dist=dist)


def build_two_point_system() -> MpIfs:
    """Two points, two constant maps (one onto each point), weights 0 and -1."""
    space = FiniteSpace(labels=["p0", "p1"], dist=np.array([[0.0, 1.0], [1.0, 0.0]]))
    index_space = discrete_index_space(["1", "2"], spacing=2.0)
    maps = np.array([[0, 0], [1, 1]])
    weights = np.array([[0.0, 0.0], [-1.0, -1.0]])
    system = MpIfs(space, index_space, maps, weights, exact_maps=True)
    validate(system)
    return system


def build_nonunique_shift_system(depth: int) -> MpIfs:
    """Binary shift truncation with prepend maps and first-symbol weights.

    phi_j prepends the symbol j and drops the last symbol (exact on the
    truncation); q_j(x) is 0 when j matches the leading symbol of x and -1
    otherwise.  The transfer operator of this system fixes a continuum of
    densities, one per boundary level on the all-2 word.
    """
    if depth < 1:
        raise ConfigError("depth must be >= 1")
    space = build_shift_space(2, depth)
    index_space = discrete_index_space(["1", "2"], spacing=1.0)
    words = space.points
    index = {w: i for i, w in enumerate(words)}
    n = len(words)
    maps = np.zeros((2, n), dtype=np.intp)
    weights = np.zeros((2, n))
    for i, w in enumerate(words):
        for j in (1, 2):
            maps[j - 1, i] = index[(j,) + w[:-1]]
            weights[j - 1, i] = 0.0 if j == w[0] else -1.0
    system = MpIfs(space, index_space, maps, weights, exact_maps=True)
    validate(system)
    return system


def _word_changes(w: tuple) -> int:
    return sum(1 for a, b in zip(w, w[1:]) if a != b)


def lambda_alpha(depth: int, alpha: float) -> Density:
    """The invariant density of the binary-shift example at parameter alpha.

    A depth-n word is read as itself followed by an infinite tail of its
    last symbol; its value is minus the number of symbol changes, lowered
    by alpha when the tail symbol is 2.  The maximum 0 sits at the all-1
    word.  Words that would need infinitely many alternations (value
    bottom in the untruncated model) have no representative here, so the
    truncated density is finite everywhere.
    """
    if not 0 <= alpha < 1:
        raise ConfigError("alpha must lie in [0, 1)")
    space = build_shift_space(2, depth)
    vals = np.empty(space.n)
    for i, w in enumerate(space.points):
        vals[i] = -_word_changes(w) - (alpha if w[-1] == 2 else 0.0)
    return Density(space, vals)


@dataclass
class ShiftExampleSpec:
    depth: int
    alphas: Sequence[float]

    def __post_init__(self):
        if self.depth < 2:
            raise ConfigError("depth must be >= 2")
        if len(set(self.alphas)) != len(self.alphas):
            raise ConfigError("alphas must be distinct")
        for a in self.alphas:
            if not 0 <= a < 1:
                raise ConfigError("alphas must lie in [0, 1)")


@dataclass
class DemoReport:
    depth: int
    alphas: list
    fixed_point_exact: list
    pairwise_d_theta: list
    boundary_match_exact: list
    densities: list

    def to_jsonable(self) -> dict:
        return {
            "depth": self.depth,
            "alphas": list(self.alphas),
            "fixed_point_exact": list(self.fixed_point_exact),
            "pairwise_d_theta": [list(row) for row in self.pairwise_d_theta],
            "boundary_match_exact": list(self.boundary_match_exact),
            "num_distinct": len(self.alphas),
        }


def demonstrate_nonuniqueness(spec: ShiftExampleSpec) -> DemoReport:
    """Exhibit one distinct invariant density per alpha, three ways.

    Each candidate must be an exact fixed point of the transfer operator,
    pairwise d_theta distances must be positive, and each must coincide
    exactly with the density built from the potential with boundary
    {all-1 word: 0, all-2 word: -alpha}.
    """
    system = build_nonunique_shift_system(spec.depth)
    pot = mane_potential(system)
    words = system.space.points
    one_idx = words.index((1,) * spec.depth)
    two_idx = words.index((2,) * spec.depth)

    densities = [lambda_alpha(spec.depth, a) for a in spec.alphas]
    fixed = []
    for lam in densities:
        out = transfer_density(system, lam)
        fixed.append(bool(np.array_equal(out.values, lam.values)))

    pairwise = [
        [d_theta(a, b) if i != k else 0.0 for k, b in enumerate(densities)]
        for i, a in enumerate(densities)
    ]
    matches = []
    for a, lam in zip(spec.alphas, densities):
        boundary = BoundaryData(values={one_idx: 0.0, two_idx: -a}, anchor=one_idx)
        built = build_invariant(pot, boundary)
        matches.append(bool(np.array_equal(built.values, lam.values)))

    report = DemoReport(
        depth=spec.depth,
        alphas=list(spec.alphas),
        fixed_point_exact=fixed,
        pairwise_d_theta=pairwise,
        boundary_match_exact=matches,
        densities=densities,
    )
    problems = []
    if not all(fixed):
        problems.append(f"fixed-point check failed for alphas "
                        f"{[a for a, ok in zip(spec.alphas, fixed) if not ok]}")
    for i in range(len(densities)):
        for k in range(i + 1, len(densities)):
            if pairwise[i][k] <= 0:
                problems.append(f"densities for alphas {spec.alphas[i]} and "
                                f"{spec.alphas[k]} are not distinct")
    if not all(matches):
        problems.append("potential-based reconstruction mismatch")
    if problems:
        raise DemonstrationError("; ".join(problems))
    return report


def _affine_grid_maps(space: FiniteSpace, num_maps: int, rng, constant_first: bool):
    xs = space.points
    a, b = float(xs[0]), float(xs[-1])
    maps = np.zeros((num_maps, space.n), dtype=np.intp)
    for j in range(num_maps):
        if constant_first and j == 0:
            target = snap(space, rng.uniform(a, b))
            maps[j, :] = target
            continue
        slope = rng.uniform(0.2, 0.6) * (1 if rng.random() < 0.5 else -1)
        span_lo = min(slope * a, slope * b)
        span_hi = max(slope * a, slope * b)
        shift = rng.uniform(a - span_lo, b - span_hi)
        for i, x in enumerate(xs):
            maps[j, i] = snap(space, shift + slope * float(x))
    return maps


def _grid_weights(space: FiniteSpace, num_maps: int, rng, constant: bool):
    if constant:
        w = -_dyadic(rng.uniform(2**-4, 2.0, size=num_maps))
        w[0] = 0.0
        return np.repeat(w[:, None], space.n, axis=1)
    xs = np.asarray(space.points, dtype=np.float64)
    span = max(float(xs[-1] - xs[0]), 1.0)
    raw = np.empty((num_maps, space.n))
    for j in range(num_maps):
        amp = rng.uniform(0.2, 1.0)
        freq = rng.uniform(0.5, 2.0) * np.pi / span
        phase = rng.uniform(0, 2 * np.pi)
        raw[j] = amp * np.sin(freq * xs + phase) - rng.uniform(0.0, 1.0)
    raw = _dyadic(raw)
    return raw - raw.max(axis=0, keepdims=True)


def _shift_weights(space: FiniteSpace, symbols: int, rng, constant: bool):
    if constant:
        w = -_dyadic(rng.uniform(2**-4, 2.0, size=symbols))
        zeros = rng.choice(symbols, size=int(rng.integers(1, min(symbols, 2) + 1)), replace=False)
        w[zeros] = 0.0
        return np.repeat(w[:, None], space.n, axis=1)
    first = np.array([w[0] for w in space.points])
    table = -_dyadic(rng.uniform(0.0, 2.0, size=(symbols, symbols)))
    raw = table[:, first - 1]
    return raw - raw.max(axis=0, keepdims=True)


def random_system(
    space: FiniteSpace,
    num_maps: int,
    seed: int,
    constant_weights: bool = False,
) -> MpIfs:
    """Seeded random valid system on a grid or truncated shift space.

    Grid systems use affine contractions snapped to the grid; shift systems
    use the prepend maps (``num_maps`` must equal the symbol count).  When
    ``constant_weights`` is set, grid systems make the zero-weight map
    constant so the zero-cost dynamics has a genuine fixed point.  Retries
    with derived seeds until validation passes, then fails with
    :class:`GenerationError`.
    """
    if num_maps < 1:
        raise ConfigError("need at least one map")
    symbolic = isinstance(space.points, tuple)
    if symbolic:
        depth = len(space.points[0])
        symbols = max(w[0] for w in space.points)
        if num_maps != symbols:
            raise ConfigError("shift systems need one prepend map per symbol")
        index = {w: i for i, w in enumerate(space.points)}
        maps = np.zeros((num_maps, space.n), dtype=np.intp)
        for i, w in enumerate(space.points):
            for j in range(1, symbols + 1):
                maps[j - 1, i] = index[(j,) + w[:-1]]
        index_space = discrete_index_space([str(j) for j in range(1, symbols + 1)])
    else:
        index_space = discrete_index_space(
            [str(j) for j in range(num_maps)], spacing=2.5 * space.diameter
        )

    last_error = None
    for attempt in range(100):
        rng = np.random.default_rng((seed, attempt))
        try:
            if symbolic:
                weights = _shift_weights(space, num_maps, rng, constant_weights)
                system = MpIfs(space, index_space, maps.copy(), weights, exact_maps=True)
            else:
                m = _affine_grid_maps(space, num_maps, rng, constant_first=constant_weights)
                weights = _grid_weights(space, num_maps, rng, constant_weights)
                system = MpIfs(space, index_space, m, weights, exact_maps=False)
            validate(system)
            return system
        except (NormalizationError, NotContractiveError) as exc:
            last_error = exc
    raise GenerationError(f"no valid system after 100 attempts: {last_error}")
