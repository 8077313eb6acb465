"""Mane potential and Aubry set of a max-plus IFS.

The one-step transition matrix has A[x, y] = best weight of jumping from
source y to target x in a single map application.  Its transitive closure
S = A+ gives, at (x, y), the supremum of accumulated weights over all
finite words steering y onto x; the Aubry set collects the points whose
zero-cost return S[x, x] = 0 is attained (up to a diagonal tolerance that
only absorbs float summation error).

Because the maps are stored pre-snapped, "landing within epsilon of x"
degenerates to exact index equality: the S computed here is the
resolution-scale version of the continuum potential.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConfigError, EmptyAubryError, InternalError
from .maxplus import BOTTOM, MpMatrix, kleene_plus
from .mpifs import MpIfs
from .spaces import FiniteSpace

AUBRY_TOL = 1e-9


@dataclass
class PotentialMatrix:
    """Closure S (row = target, column = source) plus the extracted Aubry set."""

    space: "FiniteSpace"
    s: MpMatrix
    aubry: tuple
    tol_aubry: float

    def column(self, z: int) -> np.ndarray:
        return self.s.entries[:, z].copy()


def transition_matrix(system: MpIfs) -> MpMatrix:
    """A[x, y] = max over j with phi_j(y) = x of q_j(y); BOTTOM when no j hits."""
    n = system.space.n
    a = np.full((n, n), BOTTOM)
    src = np.broadcast_to(np.arange(n), system.maps.shape)
    np.maximum.at(a, (system.maps.reshape(-1), src.reshape(-1)), system.weights.reshape(-1))
    return MpMatrix(a)


def mane_potential(system: MpIfs, tol_aubry: float = AUBRY_TOL) -> PotentialMatrix:
    """Exact path-supremum potential and Aubry set of a validated system.

    Raises :class:`EmptyAubryError` when no diagonal entry passes the
    zero test; for a validated system that signals a too-tight tolerance
    or corrupted input, never correct behavior.
    """
    if not system.validated:
        raise ConfigError("system must be validated first")
    s = kleene_plus(transition_matrix(system))
    if np.max(s.entries) > 0:
        raise InternalError("path supremum above zero despite weights <= 0")
    diag = np.diagonal(s.entries)
    aubry = tuple(int(i) for i in np.flatnonzero(diag >= -tol_aubry))
    if not aubry:
        raise EmptyAubryError(
            f"no point has a return cycle within {tol_aubry} of zero cost"
        )
    return PotentialMatrix(space=system.space, s=s, aubry=aubry, tol_aubry=tol_aubry)


def sum_along(system: MpIfs, omega: Sequence[int], x: int):
    """Accumulated weight and endpoint of applying a word right to left.

    ``omega`` lists map indices; the last entry acts first.  Returns the
    pair (total weight, final point index).
    """
    if len(omega) == 0:
        raise ConfigError("word must be nonempty")
    total = 0.0
    cur = x
    for j in reversed(list(omega)):
        total = system.weights[j, cur] + total
        cur = int(system.maps[j, cur])
    return total, cur


def check_triangle(pot: PotentialMatrix, tol: float = 0.0) -> bool:
    """S[x, z] >= S[x, y] + S[y, z] over all triples (concatenation bound)."""
    s = pot.s.entries
    through = np.max(s[:, :, None] + s[None, :, :], axis=1)
    return bool(np.all(s >= through - tol))


def check_sum_lipschitz(system: MpIfs, trials: int = 1000, seed: int = 0) -> float:
    """Sampled Lipschitz ratio of the accumulated weight in its base point.

    Draws random words and point pairs, returns the largest observed
    |Sum(w, y1) - Sum(w, y2)| / d(y1, y2).  For exact maps the ratio is
    bounded by lip_c_hat / (1 - gamma_hat) and exceeding it raises
    :class:`InternalError`.  Snapped maps can phase-lock two orbits onto a
    short cycle a cell or two apart, making the weight difference grow
    with the word length, so for them the ratio is only reported.
    """
    if not system.validated:
        raise ConfigError("system must be validated first")
    n = system.space.n
    if n < 2:
        return 0.0
    rng = np.random.default_rng(seed)
    max_len = max(1, 4 * n)
    best = 0.0
    for _ in range(trials):
        length = int(rng.integers(1, min(max_len, 32) + 1))
        omega = rng.integers(0, system.num_maps, size=length)
        y1, y2 = rng.choice(n, size=2, replace=False)
        s1, _ = sum_along(system, omega, int(y1))
        s2, _ = sum_along(system, omega, int(y2))
        if s1 == BOTTOM or s2 == BOTTOM:
            continue
        best = max(best, abs(s1 - s2) / system.space.dist[y1, y2])
    if system.exact_maps:
        bound = system.lip_c_hat / (1.0 - system.gamma_hat)
        if best > bound + 1e-12:
            raise InternalError(f"Lipschitz ratio {best} exceeds bound {bound}")
    return best
