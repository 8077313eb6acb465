"""Max-plus semiring scalars and matrices.

Scalars live in R u {-inf} with a (+) b = max(a, b) and a (*) b = a + b.
BOTTOM is IEEE -inf: absorption under (*) and neutrality under (+) are then
exact float identities, provided +inf and NaN never enter (constructors
reject them).  Finite entries are ordinary float64.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, InternalError, PositiveCycleError

#: Additive neutral / multiplicative absorber of the semiring.
BOTTOM = float("-inf")

#: Multiplicative neutral.
ONE = 0.0


def is_bottom(a: float) -> bool:
    return a == BOTTOM


def oplus(a: float, b: float) -> float:
    """Semiring addition: max(a, b).  BOTTOM is neutral."""
    return a if a >= b else b


def odot(a: float, b: float) -> float:
    """Semiring multiplication: a + b.  BOTTOM is absorbing."""
    return a + b


def _check_entries(entries: np.ndarray) -> np.ndarray:
    entries = np.asarray(entries, dtype=np.float64)
    if np.isnan(entries).any() or (entries == np.inf).any():
        raise ValueError("matrix entries must be finite or -inf")
    return entries


@dataclass
class MpMatrix:
    """Dense matrix over the max-plus semiring (float64, -inf for bottom)."""

    entries: np.ndarray

    def __post_init__(self):
        self.entries = _check_entries(self.entries)
        if self.entries.ndim != 2:
            raise DimensionError("MpMatrix requires a 2-d entry table")

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def __eq__(self, other) -> bool:
        return isinstance(other, MpMatrix) and np.array_equal(
            self.entries, other.entries
        )


def mp_eye(n: int) -> MpMatrix:
    """Identity: 0 on the diagonal, -inf off it."""
    e = np.full((n, n), BOTTOM)
    np.fill_diagonal(e, 0.0)
    return MpMatrix(e)


def mp_zeros(rows: int, cols: int) -> MpMatrix:
    return MpMatrix(np.full((rows, cols), BOTTOM))


def _mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # C[i,k] = max_j a[i,j] + b[j,k]; -inf propagates, never NaN (no +inf).
    return np.max(a[:, :, None] + b[None, :, :], axis=1)


def mp_mat_mul(a: MpMatrix, b: MpMatrix) -> MpMatrix:
    """Max-plus matrix product C[i,k] = max_j (A[i,j] + B[j,k])."""
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    return MpMatrix(_mul(a.entries, b.entries))


def kleene_plus(a: MpMatrix, method: str = "squaring") -> MpMatrix:
    """Transitive closure A+ = A (+) A^2 (+) ... (+) A^n.

    Entry (i, j) is the supremum of total weights over all paths j -> i of
    length >= 1 (row index is the path target).  Requires that no cycle has
    strictly positive weight; this holds automatically when all entries are
    <= 0, and is detected otherwise through the diagonal of the result.

    ``method="squaring"`` runs accumulating squarings P <- P (+) P*P until
    the matrix stops changing (at most ceil(log2 n) steps in exact
    arithmetic; a few more are allowed to absorb rounding on non-dyadic
    input).  At the fixed point P >= P*P holds entrywise in float, so the
    triangle property of the closure is exact.  ``method="floyd_warshall"``
    is the cubic relaxation alternative.
    """
    if a.rows != a.cols:
        raise DimensionError("kleene_plus requires a square matrix")
    n = a.rows
    if n == 0:
        return MpMatrix(a.entries.copy())
    if method == "floyd_warshall":
        p = a.entries.copy()
        for k in range(n):
            np.maximum(p, p[:, k, None] + p[None, k, :], out=p)
    elif method == "squaring":
        p = a.entries.copy()
        cap = max(1, math.ceil(math.log2(n))) + 8
        for _ in range(cap):
            q = np.maximum(p, _mul(p, p))
            if np.array_equal(q, p):
                break
            p = q
        else:
            if np.max(np.diagonal(p)) > 0:
                raise PositiveCycleError("closure diverges: positive-weight cycle")
            raise InternalError("closure failed to stabilize")
    else:
        raise ValueError(f"unknown closure method {method!r}")
    diag_max = np.max(np.diagonal(p)) if n else BOTTOM
    if diag_max > 0:
        raise PositiveCycleError(f"positive-weight cycle detected (diag max {diag_max})")
    return MpMatrix(p)
