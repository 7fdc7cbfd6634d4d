"""Pseudo principal pivot transforms built on the group inverse.

    pppt(M)  = [[A^#, -A^# B], [C A^#, K]],     K = D - C A^# B
    cpppt(M) = [[L, B D^#], [-D^# C, D^#]],     L = A - B D^# C

Both are involutions once the off-diagonal blocks live in the right ranges,
and they exchange parts of the domain and range of ``M`` (see
:func:`exchange_equivalence_check`).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .block import BlockMatrix, HypothesisViolated, complementary_schur, pseudo_schur
from .core import COMPOSITE_TOL, Tolerance, UsageError, conjugate_transpose, fro
from .geninv import NoGroupInverse, ginv, index_ranks, range_included


@dataclass(frozen=True)
class ExchangeVectors:
    x1: np.ndarray
    x2: np.ndarray
    y1: np.ndarray
    y2: np.ndarray


def pppt(m: BlockMatrix, tol: Tolerance = COMPOSITE_TOL) -> BlockMatrix:
    a_g = ginv(m.A, tol, "A")
    return BlockMatrix(a_g, -a_g @ m.B, m.C @ a_g, pseudo_schur(m, tol))


def cpppt(m: BlockMatrix, tol: Tolerance = COMPOSITE_TOL) -> BlockMatrix:
    d_g = ginv(m.D, tol, "D")
    return BlockMatrix(complementary_schur(m, tol), m.B @ d_g, -d_g @ m.C, d_g)


def _require_index1(a, name, tol):
    r1, r2 = index_ranks(a, tol)
    if r1 != r2:
        raise NoGroupInverse(r1, r2, name)


def require_lemma_hypotheses(m: BlockMatrix, tol: Tolerance = COMPOSITE_TOL, pivot: str = "A"):
    """Gate for the pivot-on-A lemmas (``pivot="A"``) or their pivot-on-D mirror.

    Pivot A needs R(B) ⊆ R(A) and R(C*) ⊆ R(A*); pivot D needs R(C) ⊆ R(D)
    and R(B*) ⊆ R(D*).
    """
    if pivot == "A":
        _require_index1(m.A, "A", tol)
        if not range_included(m.B, m.A, tol):
            raise HypothesisViolated("incl_BA")
        if not range_included(conjugate_transpose(m.C), conjugate_transpose(m.A), tol):
            raise HypothesisViolated("incl_CstarAstar")
    elif pivot == "D":
        _require_index1(m.D, "D", tol)
        if not range_included(m.C, m.D, tol):
            raise HypothesisViolated("incl_CD")
        if not range_included(conjugate_transpose(m.B), conjugate_transpose(m.D), tol):
            raise HypothesisViolated("incl_BstarDstar")
    else:
        raise UsageError(f"pivot must be 'A' or 'D', got {pivot!r}")


def pppt_involution_check(m: BlockMatrix, tol: Tolerance = COMPOSITE_TOL) -> bool:
    """Whether ``pppt(pppt(M))`` reproduces ``M`` blockwise.

    The second transform takes the group inverse of ``A^#`` numerically; it
    does not reuse ``A``.
    """
    require_lemma_hypotheses(m, tol, "A")
    return pppt(pppt(m, tol), tol).approx_eq(m, tol)


def cpppt_involution_check(m: BlockMatrix, tol: Tolerance = COMPOSITE_TOL) -> bool:
    require_lemma_hypotheses(m, tol, "D")
    return cpppt(cpppt(m, tol), tol).approx_eq(m, tol)


def _vec(v, n, name):
    """Vector of length n, or an (n, k) stack of k column vectors."""
    v = np.asarray(v, dtype=np.complex128)
    if v.ndim == 0 or v.ndim > 2:
        raise UsageError(f"{name} must be a vector or a stack of column vectors")
    if v.ndim == 1:
        v = v.reshape(-1)
    if v.shape[0] != n:
        raise UsageError(f"{name} must have length {n}, got {v.shape[0]}")
    return v


def exchange_forward(m: BlockMatrix, x1, x2, tol: Tolerance = COMPOSITE_TOL):
    """``(A x1 + B x2, C x1 + D x2)``: the image of ``(x1; x2)`` under ``M``."""
    x1 = _vec(x1, m.p, "x1")
    x2 = _vec(x2, m.q, "x2")
    return m.A @ x1 + m.B @ x2, m.C @ x1 + m.D @ x2


def _norms(v):
    return np.linalg.norm(v, axis=0)


def _rel(residual, *parts):
    return residual / np.maximum(1.0, np.max([_norms(p) for p in parts], axis=0))


def exchange_residuals(m: BlockMatrix, x1, x2, y1, y2=None, tol: Tolerance = COMPOSITE_TOL):
    """Relative residuals of the two sides of the pivot-on-A exchange.

    Returns ``(lhs, rhs)`` where ``lhs`` measures
    ``M (x1; x2) = (A A^# y1; y2)`` and ``rhs`` measures
    ``P (y1; x2) = (A^# A x1; y2)`` with ``P = pppt(M)``. ``y2`` defaults to
    ``C x1 + D x2``. Each residual is normalized by the largest vector norm
    involved (floored at one). Passing (n, k) column stacks evaluates k
    draws at once and returns arrays of length k.
    """
    x1 = _vec(x1, m.p, "x1")
    x2 = _vec(x2, m.q, "x2")
    y1 = _vec(y1, m.p, "y1")
    top, bottom = exchange_forward(m, x1, x2)
    y2 = bottom if y2 is None else _vec(y2, m.q, "y2")
    a_g = ginv(m.A, tol, "A")
    p = pppt(m, tol)
    aag_y1 = m.A @ (a_g @ y1)
    lhs = _norms(top - aag_y1) + _norms(bottom - y2)
    p_top = p.A @ y1 + p.B @ x2
    p_bottom = p.C @ y1 + p.D @ x2
    aga_x1 = a_g @ (m.A @ x1)
    rhs = _norms(p_top - aga_x1) + _norms(p_bottom - y2)
    lhs = _rel(lhs, top, bottom, aag_y1, y2)
    rhs = _rel(rhs, p_top, p_bottom, aga_x1, y2)
    if np.ndim(lhs) == 0:
        return float(lhs), float(rhs)
    return lhs, rhs


def exchange_equivalence_check(
    m: BlockMatrix, x1, x2, y1, y2=None, tol: Tolerance = COMPOSITE_TOL
) -> bool:
    """Whether the two exchange relations hold or fail together.

    ``M (x1; x2) = (A A^# y1; y2)`` if and only if
    ``P (y1; x2) = (A^# A x1; y2)``. Each side is judged against
    ``tol.eq_rtol`` on the relative residual of :func:`exchange_residuals`.
    """
    require_lemma_hypotheses(m, tol, "A")
    lhs, rhs = exchange_residuals(m, x1, x2, y1, y2, tol)
    return bool(np.all((lhs <= tol.eq_rtol) == (rhs <= tol.eq_rtol)))


def complementary_exchange_check(
    m: BlockMatrix, x1, x2, y2, y1=None, tol: Tolerance = COMPOSITE_TOL
) -> bool:
    """Pivot-on-D exchange, evaluated on the block-swapped matrix.

    ``M (x1; x2) = (y1; D D^# y2)`` if and only if
    ``Q (x1; y2) = (y1; D^# D x2)`` with ``Q = cpppt(M)``: pivoting on ``D``
    trades ``x2`` for ``y2``.
    """
    require_lemma_hypotheses(m, tol, "D")
    s = m.swapped()
    lhs, rhs = exchange_residuals(s, x2, x1, y2, y1, tol)
    return bool(np.all((lhs <= tol.eq_rtol) == (rhs <= tol.eq_rtol)))


def complementary_exchange_residuals(m: BlockMatrix, x1, x2, y2, y1=None, tol: Tolerance = COMPOSITE_TOL):
    return exchange_residuals(m.swapped(), x2, x1, y2, y1, tol)


def classical_ppt(m: BlockMatrix) -> BlockMatrix:
    """Principal pivot transform with an invertible ``A``, via dense solves."""
    a_inv_b = np.linalg.solve(m.A, m.B)
    a_inv = np.linalg.inv(m.A)
    return BlockMatrix(a_inv, -a_inv_b, m.C @ a_inv, m.D - m.C @ a_inv_b)


def blockwise_error(x: BlockMatrix, y: BlockMatrix) -> float:
    """Largest Frobenius distance between corresponding blocks."""
    return max(fro(a - b) for a, b in zip(x.blocks(), y.blocks()))
