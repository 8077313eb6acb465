"""Fuzzy IFS layer conjugate to the max-plus one.

The scale map t -> e^t carries a probability density to a normal fuzzy set
and intertwines the density transfer operator with the fuzzy
Hutchinson-Barnsley operator

    (Z u)(x) = max over phi_j(y) = x of  e^(q_j(y)) * u(y),

whose grey-level maps are t -> e^(q) * t.  Distances between fuzzy sets
are measured by the supremum over thresholds of the Hausdorff distance
between level cuts; on a finite space that supremum is attained on the
finitely many attained membership values, so it is computed exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .errors import ConfigError, NonConvergenceError
from .maxplus import BOTTOM
from .measures import Density
from .mpifs import MpIfs
from .spaces import FiniteSpace, hausdorff


def _check_membership(values) -> np.ndarray:
    v = np.asarray(values, dtype=np.float64)
    if np.isnan(v).any() or (v < 0).any() or (v > 1).any():
        raise ConfigError("memberships must lie in [0, 1]")
    return v


@dataclass
class FuzzySet:
    """Membership function over a finite space."""

    space: FiniteSpace
    values: np.ndarray

    def __post_init__(self):
        self.values = _check_membership(self.values)
        if self.values.shape != (self.space.n,):
            raise ConfigError("membership length must match the space size")
        self.values.flags.writeable = False

    @property
    def is_normal(self) -> bool:
        return self.values.max() == 1.0


def theta_conjugate(lam: Density) -> FuzzySet:
    """Exponential image of a probability density; BOTTOM becomes 0."""
    if lam.values.max() != 0.0:
        raise ConfigError("density must be normalized (max exactly 0)")
    return FuzzySet(lam.space, np.exp(lam.values))


def theta_inverse(u: FuzzySet) -> Density:
    """Logarithm of the membership; 0 becomes BOTTOM."""
    with np.errstate(divide="ignore"):
        return Density(u.space, np.log(u.values))


def alpha_cut(u: FuzzySet, alpha: float) -> set:
    """Threshold set {u >= alpha}; at alpha = 0 the support {u > 0}."""
    if np.isnan(alpha) or alpha < 0 or alpha > 1:
        raise ConfigError("alpha must lie in [0, 1]")
    if alpha == 0:
        return set(np.flatnonzero(u.values > 0).tolist())
    return set(np.flatnonzero(u.values >= alpha).tolist())


def _cut_distance(space: FiniteSpace, a: set, b: set) -> float:
    if not a and not b:
        return 0.0
    if not a or not b:
        return space.diameter
    return hausdorff(space, a, b)


def d_infty(u: FuzzySet, v: FuzzySet) -> float:
    """sup over alpha in [0,1] of the Hausdorff distance between alpha-cuts.

    The cuts are piecewise constant in alpha, changing only at attained
    membership values, so the supremum over the attained values plus 0 is
    exact.  An empty cut against a nonempty one counts the full diameter.
    """
    if u.space is not v.space and u.space.n != v.space.n:
        raise ConfigError("fuzzy sets live on different spaces")
    levels = {0.0}
    levels.update(float(t) for t in u.values if t > 0)
    levels.update(float(t) for t in v.values if t > 0)
    return max(
        _cut_distance(u.space, alpha_cut(u, t), alpha_cut(v, t)) for t in levels
    )


def d_theta(lam: Density, eta: Density) -> float:
    """Distance between probabilities: sup over levels of Hausdorff distance
    between the super-level sets {x : density(x) >= beta}.

    Equals ``d_infty`` of the exponential images; computed directly on the
    densities over the finitely many attained finite values.
    """
    if lam.values.max() != 0.0 or eta.values.max() != 0.0:
        raise ConfigError("d_theta is defined between probability densities")
    if lam.space is not eta.space and lam.space.n != eta.space.n:
        raise ConfigError("densities live on different spaces")
    betas = {float(t) for t in lam.values if t > BOTTOM}
    betas.update(float(t) for t in eta.values if t > BOTTOM)
    space = lam.space
    best = 0.0
    for b in betas:
        ca = set(np.flatnonzero(lam.values >= b).tolist())
        cb = set(np.flatnonzero(eta.values >= b).tolist())
        best = max(best, _cut_distance(space, ca, cb))
    return best


def fhb_apply(system: MpIfs, u: FuzzySet) -> FuzzySet:
    """One step of the fuzzy Hutchinson-Barnsley operator.

    (Z u)(x) = max over pairs (j, y) with phi_j(y) = x of e^(q_j(y)) u(y),
    and 0 where the preimage is empty.
    """
    grey = np.exp(system.weights) * u.values[None, :]
    out = np.zeros(system.space.n)
    np.maximum.at(out, system.maps.reshape(-1), grey.reshape(-1))
    return FuzzySet(system.space, out)


@dataclass
class FhbResult:
    attractor: FuzzySet
    iterations: int
    trace: List[float]


def fhb_attractor(
    system: MpIfs,
    u0: FuzzySet,
    tol: float = 1e-12,
    max_iters: Optional[int] = None,
) -> FhbResult:
    """Iterate the FHB operator to its fixed point.

    For constant weights the operator is a Banach contraction in d_infty
    and convergence is guaranteed; for place-dependent weights no such
    guarantee exists and exhausting the budget raises
    :class:`NonConvergenceError` carrying the trace so far.  An input that
    is already fixed returns with zero iterations and an empty trace.
    """
    if not u0.is_normal:
        raise ConfigError("starting fuzzy set must be normal")
    if max_iters is None:
        max_iters = max(100, 10 * system.space.n)
    cur = u0
    trace: List[float] = []
    for k in range(1, max_iters + 1):
        nxt = fhb_apply(system, cur)
        d = d_infty(cur, nxt)
        if d == 0.0 and k == 1:
            return FhbResult(nxt, 0, [])
        trace.append(d)
        if d <= tol:
            return FhbResult(nxt, k, trace)
        cur = nxt
    err = NonConvergenceError(f"no fixed point within {max_iters} iterations")
    err.trace = trace
    err.last = cur
    raise err
