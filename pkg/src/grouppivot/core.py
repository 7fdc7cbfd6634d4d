"""Matrix values, tolerances and approximate comparison.

Matrices are plain ``numpy`` arrays of dtype ``complex128`` that have been
marked read-only. Every function here returns a fresh array.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

EPS = np.finfo(np.float64).eps


class UsageError(ValueError):
    """Raised for shape mismatches and other caller mistakes."""


def as_matrix(x) -> np.ndarray:
    """Return an immutable complex128 copy of ``x``.

    Scalars and 1-d inputs are not accepted; a matrix needs two axes.
    """
    a = np.array(x, dtype=np.complex128, copy=True)
    if a.ndim != 2:
        raise UsageError(f"expected a 2-d matrix, got ndim={a.ndim}")
    if a.shape[0] < 1 or a.shape[1] < 1:
        raise UsageError(f"matrix dimensions must be positive, got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise UsageError("matrix entries must be finite")
    a.flags.writeable = False
    return a


def frozen(a: np.ndarray) -> np.ndarray:
    """Mark a freshly computed array read-only without copying."""
    a = np.asarray(a, dtype=np.complex128)
    if a.base is not None or not a.flags.owndata:
        a = a.copy()
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class Tolerance:
    """Thresholds for rank decisions and approximate equality.

    ``rank_rtol=None`` means ``max(rows, cols) * eps`` of whatever matrix is
    being ranked.
    """

    rank_rtol: float | None = None
    eq_atol: float = 1e-10
    eq_rtol: float = 1e-8

    def __post_init__(self):
        for name in ("rank_rtol", "eq_atol", "eq_rtol"):
            v = getattr(self, name)
            if v is None and name == "rank_rtol":
                continue
            if not np.isfinite(v) or v < 0:
                raise UsageError(f"{name} must be finite and nonnegative, got {v}")

    def rank_threshold(self, shape: tuple[int, int]) -> float:
        """Relative singular-value cutoff for a matrix of ``shape``."""
        if self.rank_rtol is None:
            return max(shape) * EPS
        return self.rank_rtol

    def bound(self, scale: float) -> float:
        return self.eq_atol + self.eq_rtol * scale


DEFAULT_TOL = Tolerance()


def conjugate_transpose(a: np.ndarray) -> np.ndarray:
    return frozen(np.conj(np.asarray(a)).T.copy())


def fro(a) -> float:
    return float(np.linalg.norm(a, "fro"))


def mat_approx_eq(x, y, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff ``||x - y||_F <= eq_atol + eq_rtol * max(||x||_F, ||y||_F)``."""
    x = np.asarray(x)
    y = np.asarray(y)
    if x.shape != y.shape:
        raise UsageError(f"shape mismatch: {x.shape} vs {y.shape}")
    return fro(x - y) <= tol.bound(max(fro(x), fro(y)))


def singular_values(a) -> np.ndarray:
    a = np.asarray(a)
    if a.size == 0:
        return np.zeros(0)
    return np.linalg.svd(a, compute_uv=False)


def rank_from_singular_values(s: np.ndarray, shape, tol: Tolerance) -> int:
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol.rank_threshold(shape) * s[0]))


def numerical_rank(a, tol: Tolerance = DEFAULT_TOL) -> int:
    """Number of singular values above ``rank_threshold * sigma_max``."""
    a = np.asarray(a)
    return rank_from_singular_values(singular_values(a), a.shape, tol)

# Rank decisions on matrices formed by cancellation (D - C A^# B, assembled
# blocks) need a cutoff above the roundoff of that cancellation.
COMPOSITE_TOL = Tolerance(rank_rtol=1e-10)
