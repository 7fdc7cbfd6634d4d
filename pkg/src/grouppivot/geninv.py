"""Group inverse, Moore-Penrose inverse, index-1 test and range inclusion."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_TOL,
    Tolerance,
    UsageError,
    as_matrix,
    fro,
    frozen,
    numerical_rank,
    rank_from_singular_values,
)


class NoGroupInverse(ArithmeticError):
    """The matrix has index greater than one, so no group inverse exists."""

    def __init__(self, rank_a: int, rank_a2: int, name: str = "A"):
        self.rank_a = rank_a
        self.rank_a2 = rank_a2
        self.name = name
        super().__init__(
            f"{name} has no group inverse: rank({name})={rank_a}, rank({name}^2)={rank_a2}"
        )


@dataclass(frozen=True)
class GroupInverseResult:
    inverse: np.ndarray
    rank: int
    residuals: tuple[float, float, float]


def _require_square(a: np.ndarray, what: str = "matrix"):
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise UsageError(f"{what} must be square, got shape {a.shape}")


def group_inverse_residuals(a, x) -> tuple[float, float, float]:
    """Frobenius norms of ``AXA - A``, ``XAX - X`` and ``AX - XA``."""
    ax = a @ x
    xa = x @ a
    return fro(ax @ a - a), fro(xa @ x - x), fro(ax - xa)


def index_ranks(a, tol: Tolerance = DEFAULT_TOL) -> tuple[int, int]:
    """``(rank(A), rank(A @ A))`` under ``tol``."""
    a = np.asarray(a)
    _require_square(a)
    return numerical_rank(a, tol), numerical_rank(a @ a, tol)


def has_index_at_most_one(a, tol: Tolerance = DEFAULT_TOL) -> bool:
    r1, r2 = index_ranks(a, tol)
    return r1 == r2


def group_inverse(a, tol: Tolerance = DEFAULT_TOL, name: str = "A") -> GroupInverseResult:
    """Group inverse through a full-rank factorization ``A = F G``.

    With ``F = U_r S_r`` and ``G = V_r^*`` taken from the thin SVD,
    ``A^# = F (G F)^{-2} G``. The index test decides existence; ``G F`` is
    invertible whenever it passes.

    Raises
    ------
    NoGroupInverse
        If ``rank(A) != rank(A^2)``.
    """
    a = as_matrix(a)
    _require_square(a)
    n = a.shape[0]
    u, s, vh = np.linalg.svd(a)
    r = rank_from_singular_values(s, a.shape, tol)
    r2 = numerical_rank(a @ a, tol)
    if r != r2:
        raise NoGroupInverse(r, r2, name)
    if r == 0:
        x = np.zeros((n, n), dtype=np.complex128)
    else:
        f = u[:, :r] * s[:r]
        g = vh[:r]
        gf = g @ f
        x = f @ np.linalg.solve(gf, np.linalg.solve(gf, g))
    x = frozen(x)
    return GroupInverseResult(x, r, group_inverse_residuals(a, x))


def ginv(a, tol: Tolerance = DEFAULT_TOL, name: str = "A") -> np.ndarray:
    """Shorthand for ``group_inverse(a, tol).inverse``."""
    return group_inverse(a, tol, name).inverse


def moore_penrose(a, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Moore-Penrose inverse by truncated SVD, sharing the rank cutoff."""
    a = as_matrix(a)
    u, s, vh = np.linalg.svd(a, full_matrices=False)
    r = rank_from_singular_values(s, a.shape, tol)
    x = (vh[:r].conj().T / s[:r]) @ u[:, :r].conj().T
    return frozen(x)


def range_basis(y, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of the numerical column space of ``y``."""
    y = np.asarray(y)
    u, s, _ = np.linalg.svd(y, full_matrices=False)
    r = rank_from_singular_values(s, y.shape, tol)
    return u[:, :r]


def range_residual(x, y, tol: Tolerance = DEFAULT_TOL) -> float:
    """``||(I - Y Y^+) X||_F``, the part of ``R(X)`` outside ``R(Y)``."""
    x = np.asarray(x)
    y = np.asarray(y)
    if x.shape[0] != y.shape[0]:
        raise UsageError(f"row counts differ: {x.shape[0]} vs {y.shape[0]}")
    q = range_basis(y, tol)
    return fro(x - q @ (q.conj().T @ x))


def range_included(x, y, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Numerical test of ``R(X) ⊆ R(Y)`` by orthogonal projection onto ``R(Y)``."""
    return range_residual(x, y, tol) <= tol.bound(fro(x))
