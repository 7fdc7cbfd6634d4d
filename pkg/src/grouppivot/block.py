"""Pseudo Schur complements and group inverses of 2x2 block matrices.

For ``M = [[A, B], [C, D]]`` with ``A`` of index at most one, the pseudo
Schur complement is ``K = D - C A^# B``. When ``K^#`` exists as well,

    M^# = [[A^# + A^# B K^# C A^#, -A^# B K^#],
           [-K^# C A^#,             K^#      ]]

holds exactly when the four range inclusions R(C*) ⊆ R(A*), R(B) ⊆ R(A),
R(C) ⊆ R(K) and R(B*) ⊆ R(K*) hold. The complementary version pivots on
``D`` with ``L = A - B D^# C``.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, fields

import numpy as np

from .core import (
    COMPOSITE_TOL,
    Tolerance,
    UsageError,
    as_matrix,
    conjugate_transpose,
    frozen,
    mat_approx_eq,
)
from .geninv import (
    NoGroupInverse,
    ginv,
    group_inverse_residuals,
    has_index_at_most_one,
    index_ranks,
    range_included,
)


class HypothesisViolated(ValueError):
    """A range inclusion required by a block formula does not hold."""

    def __init__(self, inclusion: str):
        self.inclusion = inclusion
        super().__init__(f"hypothesis violated: {inclusion} ({INCLUSION_TEXT[inclusion]})")


INCLUSION_TEXT = {
    "incl_CstarAstar": "R(C*) ⊆ R(A*)",
    "incl_BA": "R(B) ⊆ R(A)",
    "incl_CK": "R(C) ⊆ R(K)",
    "incl_BstarKstar": "R(B*) ⊆ R(K*)",
    "incl_BstarDstar": "R(B*) ⊆ R(D*)",
    "incl_CD": "R(C) ⊆ R(D)",
    "incl_BL": "R(B) ⊆ R(L)",
    "incl_CstarLstar": "R(C*) ⊆ R(L*)",
}
THEOREM1_INCLUSIONS = ("incl_CstarAstar", "incl_BA", "incl_CK", "incl_BstarKstar")
THEOREM2_INCLUSIONS = ("incl_BstarDstar", "incl_CD", "incl_BL", "incl_CstarLstar")
# Theorem-1 condition on swapped(M) -> Theorem-2 condition on M
SWAP_INCLUSION = dict(zip(THEOREM1_INCLUSIONS, THEOREM2_INCLUSIONS))
SWAP_INCLUSION.update({v: k for k, v in SWAP_INCLUSION.items()})


@dataclass(frozen=True)
class BlockMatrix:
    """``[[A, B], [C, D]]`` with square diagonal blocks (A is p x p, D is q x q)."""

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray

    def __post_init__(self):
        for name in "ABCD":
            object.__setattr__(self, name, as_matrix(getattr(self, name)))
        p, q = self.A.shape[0], self.D.shape[0]
        expected = {"A": (p, p), "B": (p, q), "C": (q, p), "D": (q, q)}
        for name, shape in expected.items():
            if getattr(self, name).shape != shape:
                raise UsageError(
                    f"block {name} has shape {getattr(self, name).shape}, expected {shape}"
                )

    @property
    def p(self) -> int:
        return self.A.shape[0]

    @property
    def q(self) -> int:
        return self.D.shape[0]

    def assemble(self) -> np.ndarray:
        return frozen(np.block([[self.A, self.B], [self.C, self.D]]))

    def swapped(self) -> "BlockMatrix":
        """``[[D, C], [B, A]]``: the same operator with the two index sets exchanged."""
        return BlockMatrix(self.D, self.C, self.B, self.A)

    @classmethod
    def split(cls, m, p: int) -> "BlockMatrix":
        m = as_matrix(m)
        if m.shape[0] != m.shape[1] or not 0 < p < m.shape[0]:
            raise UsageError(f"cannot split {m.shape} at {p}")
        return cls(m[:p, :p], m[:p, p:], m[p:, :p], m[p:, p:])

    def blocks(self):
        return self.A, self.B, self.C, self.D

    def approx_eq(self, other: "BlockMatrix", tol: Tolerance = COMPOSITE_TOL) -> bool:
        return all(mat_approx_eq(x, y, tol) for x, y in zip(self.blocks(), other.blocks()))


@dataclass(frozen=True)
class HypothesisReport:
    a_index1: bool
    k_index1: bool
    d_index1: bool
    l_index1: bool
    incl_CstarAstar: bool
    incl_BA: bool
    incl_CK: bool
    incl_BstarKstar: bool
    incl_BstarDstar: bool
    incl_CD: bool
    incl_BL: bool
    incl_CstarLstar: bool
    notes: tuple[str, ...] = ()

    def theorem1_failures(self) -> list[str]:
        return [name for name in THEOREM1_INCLUSIONS if not getattr(self, name)]

    def theorem2_failures(self) -> list[str]:
        return [name for name in THEOREM2_INCLUSIONS if not getattr(self, name)]

    @property
    def theorem1_holds(self) -> bool:
        return self.a_index1 and self.k_index1 and not self.theorem1_failures()

    @property
    def theorem2_holds(self) -> bool:
        return self.d_index1 and self.l_index1 and not self.theorem2_failures()

    def to_dict(self) -> dict:
        d = asdict(self)
        d["notes"] = list(self.notes)
        return d


def pseudo_schur(m: BlockMatrix, tol: Tolerance = COMPOSITE_TOL) -> np.ndarray:
    """``K = D - C A^# B``."""
    a_g = ginv(m.A, tol, "A")
    return frozen(m.D - m.C @ a_g @ m.B)


def complementary_schur(m: BlockMatrix, tol: Tolerance = COMPOSITE_TOL) -> np.ndarray:
    """``L = A - B D^# C``."""
    d_g = ginv(m.D, tol, "D")
    return frozen(m.A - m.B @ d_g @ m.C)


def _inclusions(x_col, y_col, x_row, y_row, tol):
    """Column-space and row-space inclusion verdicts for one pivot pair."""
    return (
        range_included(conjugate_transpose(x_row), conjugate_transpose(y_row), tol),
        range_included(x_col, y_col, tol),
    )


def check_hypotheses(m: BlockMatrix, tol: Tolerance = COMPOSITE_TOL) -> HypothesisReport:
    """Evaluate every index-1 and range-inclusion condition of both block formulas.

    Conditions that need ``K`` (or ``L``) are reported false, with a note,
    when ``A`` (or ``D``) has no group inverse.
    """
    A, B, C, D = m.blocks()
    notes = []
    v = {}
    v["a_index1"] = has_index_at_most_one(A, tol)
    v["incl_CstarAstar"], v["incl_BA"] = _inclusions(B, A, C, A, tol)
    if v["a_index1"]:
        K = pseudo_schur(m, tol)
        v["k_index1"] = has_index_at_most_one(K, tol)
        v["incl_BstarKstar"], v["incl_CK"] = _inclusions(C, K, B, K, tol)
    else:
        notes.append("A has no group inverse; K undefined")
        v["k_index1"] = v["incl_CK"] = v["incl_BstarKstar"] = False

    v["d_index1"] = has_index_at_most_one(D, tol)
    v["incl_BstarDstar"], v["incl_CD"] = _inclusions(C, D, B, D, tol)
    if v["d_index1"]:
        L = complementary_schur(m, tol)
        v["l_index1"] = has_index_at_most_one(L, tol)
        v["incl_CstarLstar"], v["incl_BL"] = _inclusions(B, L, C, L, tol)
    else:
        notes.append("D has no group inverse; L undefined")
        v["l_index1"] = v["incl_BL"] = v["incl_CstarLstar"] = False
    return HypothesisReport(**v, notes=tuple(notes))


def theorem1_candidate(m: BlockMatrix, tol: Tolerance = COMPOSITE_TOL) -> np.ndarray:
    """Apply the ``K``-based block formula without checking the range inclusions.

    Needs ``A^#`` and ``K^#``; on instances violating an inclusion the result
    is not the group inverse of ``M``, which is what the converse tests probe.
    """
    a_g = ginv(m.A, tol, "A")
    k = frozen(m.D - m.C @ a_g @ m.B)
    k_g = ginv(k, tol, "K")
    agb = a_g @ m.B
    cag = m.C @ a_g
    top_left = a_g + agb @ k_g @ cag
    return frozen(np.block([[top_left, -agb @ k_g], [-k_g @ cag, k_g]]))


def theorem2_candidate(m: BlockMatrix, tol: Tolerance = COMPOSITE_TOL) -> np.ndarray:
    """``L``-based block formula, unchecked.

    The bottom-right block is ``D^# + D^# C L^# B D^#``.
    """
    d_g = ginv(m.D, tol, "D")
    l = frozen(m.A - m.B @ d_g @ m.C)
    l_g = ginv(l, tol, "L")
    bdg = m.B @ d_g
    dgc = d_g @ m.C
    bottom_right = d_g + dgc @ l_g @ bdg
    return frozen(np.block([[l_g, -l_g @ bdg], [-dgc @ l_g, bottom_right]]))


def _require_pivots(m: BlockMatrix, tol: Tolerance, theorem: int):
    """Raise NoGroupInverse, with ranks, for the first pivot lacking a group inverse."""
    first = m.A if theorem == 1 else m.D
    names = ("A", "K") if theorem == 1 else ("D", "L")
    r1, r2 = index_ranks(first, tol)
    if r1 != r2:
        raise NoGroupInverse(r1, r2, names[0])
    second = pseudo_schur(m, tol) if theorem == 1 else complementary_schur(m, tol)
    r1, r2 = index_ranks(second, tol)
    if r1 != r2:
        raise NoGroupInverse(r1, r2, names[1])


def block_group_inverse(m: BlockMatrix, tol: Tolerance = COMPOSITE_TOL) -> np.ndarray:
    """Group inverse of ``M`` from the ``K``-based formula, gated on its hypotheses.

    Raises
    ------
    NoGroupInverse
        If ``A`` or ``K`` has index greater than one.
    HypothesisViolated
        Naming the first failing inclusion, in the order
        R(C*) ⊆ R(A*), R(B) ⊆ R(A), R(C) ⊆ R(K), R(B*) ⊆ R(K*).
    """
    _require_pivots(m, tol, 1)
    failures = check_hypotheses(m, tol).theorem1_failures()
    if failures:
        raise HypothesisViolated(failures[0])
    return theorem1_candidate(m, tol)


def block_group_inverse_complementary(m: BlockMatrix, tol: Tolerance = COMPOSITE_TOL) -> np.ndarray:
    """Group inverse of ``M`` from the ``L``-based formula, gated on its hypotheses."""
    _require_pivots(m, tol, 2)
    failures = check_hypotheses(m, tol).theorem2_failures()
    if failures:
        raise HypothesisViolated(failures[0])
    return theorem2_candidate(m, tol)


@dataclass(frozen=True)
class Verification:
    residuals: tuple[float, float, float]
    ok: bool

    @property
    def max_residual(self) -> float:
        return max(self.residuals)


def verify_group_inverse(m, x, tol: Tolerance = COMPOSITE_TOL) -> Verification:
    """Check ``MXM = M``, ``XMX = X`` and ``MX = XM``.

    Each equation is judged with :func:`mat_approx_eq` on its two sides, so the
    threshold scales with the size of the quantities being compared.
    """
    m = np.asarray(m)
    x = np.asarray(x)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or x.shape != m.shape:
        raise UsageError(f"need square matrices of equal shape, got {m.shape} and {x.shape}")
    residuals = group_inverse_residuals(m, x)
    mx, xm = m @ x, x @ m
    ok = (
        mat_approx_eq(mx @ m, m, tol)
        and mat_approx_eq(xm @ x, x, tol)
        and mat_approx_eq(mx, xm, tol)
    )
    return Verification(residuals, bool(ok))


REPORT_FIELDS = [f.name for f in fields(HypothesisReport) if f.name != "notes"]
