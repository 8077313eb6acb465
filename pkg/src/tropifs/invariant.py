"""Construction and verification of invariant densities.

Every invariant density of a place-dependent system is pinned down by its
restriction to the Aubry set: given boundary levels lam1 on Aubry points
(at least one of them exactly 0), the density

    lam(x) = max over Aubry z of  S[x, z] + lam1(z)

is an exact fixed point of the transfer operator, and conversely every
invariant density arises this way.  For place-independent weights the
construction collapses to a single density, the column of S at any Aubry
point, which also equals the supremum of accumulated weight over coding
sequences.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, Optional, Sequence

import numpy as np

from .errors import ConfigError, InternalError, NotConstantWeightError
from .maxplus import BOTTOM
from .measures import Density, normalize
from .mpifs import MpIfs, d_rho, transfer_density
from .mane import PotentialMatrix

AUBRY_COLUMN_TOL = 1e-9
SERIES_TOL = 1e-9


@dataclass
class BoundaryData:
    """Levels assigned to Aubry points; omitted points count as BOTTOM.

    ``anchor`` must carry the level 0 exactly, which forces the built
    density to be a probability.
    """

    values: Dict[int, float]
    anchor: int

    def __post_init__(self):
        if self.anchor not in self.values:
            raise ConfigError("anchor must appear in the boundary mapping")
        if self.values[self.anchor] != 0.0:
            raise ConfigError("anchor level must be exactly 0")
        for z, v in self.values.items():
            if np.isnan(v) or v > 0 or v == np.inf:
                raise ConfigError(f"boundary level at {z} must lie in [-inf, 0]")


def build_invariant(pot: PotentialMatrix, boundary: BoundaryData) -> Density:
    """Density lam(x) = max over boundary points z of S[x, z] + level(z).

    The anchor forces lam(anchor) >= S[anchor, anchor] = 0 while every term
    is <= 0, so the result is a probability (a drift up to the Aubry
    diagonal tolerance is shifted away; more than that is a bug).
    """
    extra = set(boundary.values) - set(pot.aubry)
    if extra:
        raise ConfigError(f"boundary points {sorted(extra)} are not Aubry points")
    s = pot.s.entries
    lam = np.full(s.shape[0], BOTTOM)
    for z, level in boundary.values.items():
        np.maximum(lam, s[:, z] + level, out=lam)
    top = lam.max()
    if top != 0.0:
        if abs(top) > pot.tol_aubry:
            raise InternalError(f"built density peaks at {top}, not 0")
        lam = lam - top
    return Density(pot.space, lam)


@dataclass
class VerifyReport:
    passed: bool
    max_deviation: float
    tol: float

    def to_jsonable(self) -> dict:
        return {"passed": self.passed, "max_deviation": self.max_deviation, "tol": self.tol}


def verify_invariant(system: MpIfs, lam: Density, tol: float = 1e-12) -> VerifyReport:
    """Apply the transfer operator once and report the exp-scale deviation."""
    dev = d_rho(transfer_density(system, lam), lam)
    return VerifyReport(passed=dev <= tol, max_deviation=dev, tol=tol)


def enumerate_invariants(
    system: MpIfs,
    pot: PotentialMatrix,
    levels: Sequence[float],
    verify_tol: float = 1e-9,
    threads: int = 1,
) -> list:
    """Sweep boundary levels over the non-anchor Aubry points.

    The lowest Aubry index is anchored at 0; every assignment of ``levels``
    to the remaining Aubry points is built, verified as a fixed point, and
    the distinct results are returned.  This generates (not enumerates) the
    continuum of invariant densities the boundary freedom allows.
    """
    for lv in levels:
        if np.isnan(lv) or lv > 0:
            raise ConfigError("levels must lie in [-inf, 0]")
    anchor = pot.aubry[0]
    others = list(pot.aubry[1:])

    def one(assignment):
        vals = {anchor: 0.0}
        vals.update(dict(zip(others, assignment)))
        lam = build_invariant(pot, BoundaryData(values=vals, anchor=anchor))
        rep = verify_invariant(system, lam, tol=verify_tol)
        if not rep.passed:
            raise InternalError(
                f"built density failed verification (deviation {rep.max_deviation})"
            )
        return lam

    assignments = list(itertools.product(levels, repeat=len(others)))
    if threads > 1 and len(assignments) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            built = list(pool.map(one, assignments))
    else:
        built = [one(a) for a in assignments]

    distinct = []
    for lam in built:
        if not any(np.array_equal(lam.values, d.values) for d in distinct):
            distinct.append(lam)
    return distinct


@dataclass
class CodingMap:
    """Finite-depth coding of points by map-index words.

    ``pi`` maps words (tuples of map indices, leftmost applied last) to the
    point index of the composed image of a reference point.  ``exact`` is
    True when at the chosen depth every composed map is literally constant,
    so the image does not depend on the reference point at all; otherwise
    depth was chosen so the dependence is below the space resolution.
    """

    depth: int
    pi: Dict[tuple, int]
    j0: tuple
    exact: bool
    x_ref: int


MAX_CODING_DEPTH = 64
MAX_COMPOSITE_SET = 4096
MAX_PI_WORDS = 300_000


def coding_map(system: MpIfs, x_ref: int = 0) -> CodingMap:
    """Depth and word-to-point table for a constant-weight system.

    The depth is the first at which all composed maps collapse to constants
    (exact coding); if composites keep oscillating, which snapped grids can
    do, the depth where gamma_hat^depth * diam drops below the resolution is
    used instead.
    """
    if not system.is_constant_weight():
        raise NotConstantWeightError("coding map requires place-independent weights")
    if not system.validated:
        raise ConfigError("system must be validated first")
    m = system.num_maps
    cw = system.weights[:, 0]
    j0 = tuple(int(j) for j in np.flatnonzero(cw == 0.0))
    if not j0:
        raise InternalError("normalized constant weights must include a zero")

    depth_exact = None
    composites = [np.arange(system.space.n)]
    for k in range(1, MAX_CODING_DEPTH + 1):
        nxt = {}
        for comp in composites:
            for j in range(m):
                cand = system.maps[j][comp]
                nxt[cand.tobytes()] = cand
        composites = list(nxt.values())
        if all((c == c[0]).all() for c in composites):
            depth_exact = k
            break
        if len(composites) > MAX_COMPOSITE_SET:
            break

    if depth_exact is not None:
        depth, exact = depth_exact, True
    else:
        res = system.space.resolution
        diam = system.space.diameter
        gamma = system.gamma_hat
        if res <= 0 or diam <= 0:
            raise ConfigError("composite maps never collapse and the space is exact")
        if gamma <= 0:
            depth = 1
        else:
            depth = 1
            while gamma**depth * diam > res:
                depth += 1
                if depth > MAX_CODING_DEPTH:
                    raise ConfigError("required coding depth exceeds the cap")
        exact = False

    if len(j0) ** depth > MAX_PI_WORDS:
        raise ConfigError("zero-weight word table too large")
    alphabet = range(m) if m**depth <= MAX_PI_WORDS else j0
    pi: Dict[tuple, int] = {}
    for word in itertools.product(alphabet, repeat=depth):
        cur = x_ref
        for j in reversed(word):
            cur = int(system.maps[j, cur])
        pi[word] = cur
    return CodingMap(depth=depth, pi=pi, j0=j0, exact=exact, x_ref=x_ref)


def j0_image(cm: CodingMap) -> set:
    """Points coded by words using only zero-weight indices."""
    out = set()
    for word in itertools.product(cm.j0, repeat=cm.depth):
        out.add(cm.pi[word])
    return out


def _weight_series(system: MpIfs, depth: int, start: int) -> np.ndarray:
    """Best accumulated weight of length-``depth`` words from ``start`` per endpoint."""
    best = np.full(system.space.n, BOTTOM)
    best[start] = 0.0
    for _ in range(depth):
        nxt = np.full(system.space.n, BOTTOM)
        vals = system.weights + best[None, :]
        np.maximum.at(nxt, system.maps.reshape(-1), vals.reshape(-1))
        best = nxt
    return best


def constant_weight_density(
    system: MpIfs, pot: PotentialMatrix, cm: Optional[CodingMap] = None
) -> Density:
    """The unique invariant density of a constant-weight system.

    Returns the S column at an Aubry point after asserting all Aubry
    columns coincide (they must, by the structure of constant weights;
    disagreement beyond tolerance signals a bug, not bad input).  The
    result is cross-checked against the truncated coding series: the best
    accumulated weight over words of the coding depth starting at the
    Aubry anchor never exceeds the density, and on exact symbolic spaces
    matches it wherever the series is finite.
    """
    if not system.is_constant_weight():
        raise NotConstantWeightError("unique-density construction needs constant weights")
    if cm is None:
        cm = coding_map(system)
    s = pot.s.entries
    cols = s[:, list(pot.aubry)]
    finite_ref = cols[:, 0]
    for k in range(1, cols.shape[1]):
        a, b = finite_ref, cols[:, k]
        both = (a > BOTTOM) & (b > BOTTOM)
        if ((a > BOTTOM) != (b > BOTTOM)).any() or (
            both.any() and np.max(np.abs(a[both] - b[both])) > AUBRY_COLUMN_TOL
        ):
            raise InternalError("Aubry columns of S disagree for constant weights")
    lam = normalize(Density(pot.space, finite_ref.copy()))

    z = pot.aubry[0]
    series = _weight_series(system, cm.depth, z)
    finite = series > BOTTOM
    if np.any(series > lam.values + SERIES_TOL):
        raise InternalError("coding series exceeds the S-column density")
    if system.exact_maps and cm.exact and finite.any():
        gap = np.max(np.abs(series[finite] - lam.values[finite]))
        if gap > SERIES_TOL:
            raise InternalError(f"coding series misses the density by {gap}")
    return lam
