"""Seeded block instances that satisfy, or break one of, the block-formula hypotheses.

Construction (pivot on A): draw index-1 ``A`` (p x p, rank ``rank_a``) and
``K`` (q x q, rank ``rank_k``), couplers ``B0``, ``C0``, then

    B = A B0 K,    C = K C0 A,    D = K + C A^# B.

The sandwiches force R(B) ⊆ R(A), R(B*) ⊆ R(K*), R(C) ⊆ R(K), R(C*) ⊆ R(A*)
and the pseudo Schur complement of the result is ``K`` by construction.
Generically the same instance also satisfies the pivot-on-D conditions.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .block import THEOREM1_INCLUSIONS, BlockMatrix, check_hypotheses
from .core import COMPOSITE_TOL, DEFAULT_TOL, Tolerance, UsageError, frozen, numerical_rank
from .geninv import ginv, has_index_at_most_one
from .rng import SplitMix64

MAX_ATTEMPTS = 100
VIOLABLE = THEOREM1_INCLUSIONS


class GenerationFailure(RuntimeError):
    """The resampling budget ran out without an acceptable draw."""


class InfeasibleViolation(ValueError):
    """The requested inclusion cannot be broken (the target range is the whole space)."""


@dataclass(frozen=True)
class InstanceSpec:
    p: int
    q: int
    rank_a: int
    rank_k: int
    seed: int = 0
    violate: str | None = None

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise UsageError(f"block dimensions must be positive, got p={self.p}, q={self.q}")
        if not 1 <= self.rank_a <= self.p:
            raise UsageError(f"rank_a={self.rank_a} outside [1, {self.p}]")
        if not 1 <= self.rank_k <= self.q:
            raise UsageError(f"rank_k={self.rank_k} outside [1, {self.q}]")
        if not 0 <= self.seed < 2**64:
            raise UsageError(f"seed must fit in 64 unsigned bits, got {self.seed}")
        if self.violate == "none":
            object.__setattr__(self, "violate", None)
        if self.violate is not None and self.violate not in VIOLABLE:
            raise UsageError(f"violate must be one of {VIOLABLE} or None, got {self.violate!r}")


def _index1(rng: SplitMix64, n: int, r: int, tol: Tolerance) -> np.ndarray:
    for _ in range(MAX_ATTEMPTS):
        f = rng.complex_normal((n, r))
        g = rng.complex_normal((r, n))
        gf = g @ f
        if np.linalg.cond(gf) >= 1.0 / tol.rank_threshold((n, n)):
            continue
        a = f @ g
        if numerical_rank(a, tol) == r and has_index_at_most_one(a, tol):
            return frozen(a)
    raise GenerationFailure(f"no acceptable index-1 draw for n={n}, r={r} in {MAX_ATTEMPTS} attempts")


def random_index1(n: int, r: int, seed: int, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """``F @ G`` with complex Gaussian ``F`` (n x r) and ``G`` (r x n), rank r, index <= 1.

    Draws are rejected while ``cond(G F) >= 1 / rank_rtol``.
    """
    if not 1 <= r <= n:
        raise UsageError(f"need 1 <= r <= n, got r={r}, n={n}")
    return _index1(SplitMix64(seed), n, r, tol)


def _theorem1_parts(spec: InstanceSpec, tol: Tolerance):
    rng = SplitMix64(spec.seed)
    a = _index1(rng, spec.p, spec.rank_a, tol)
    k = _index1(rng, spec.q, spec.rank_k, tol)
    b0 = rng.complex_normal((spec.p, spec.q))
    c0 = rng.complex_normal((spec.q, spec.p))
    return rng, a, k, a @ b0 @ k, k @ c0 @ a


def _assemble(a, b, c, k, tol):
    d = k + c @ ginv(a, tol) @ b
    return BlockMatrix(a, b, c, d)


def theorem1_instance(spec: InstanceSpec, tol: Tolerance = COMPOSITE_TOL) -> BlockMatrix:
    """Block matrix meeting every pivot-on-A hypothesis; ``pseudo_schur`` gives back ``K``."""
    if spec.violate is not None:
        raise UsageError("theorem1_instance takes no violate tag; use theorem1_violating_instance")
    _, a, k, b, c = _theorem1_parts(spec, tol)
    return _assemble(a, b, c, k, tol)


def theorem1_violating_instance(spec: InstanceSpec, tol: Tolerance = COMPOSITE_TOL) -> BlockMatrix:
    """Instance breaking exactly the inclusion named by ``spec.violate``.

    The offending coupler gets a component ``E`` outside the required range,
    filtered so the other inclusion on that coupler survives, and ``D`` is
    re-derived so that the pseudo Schur complement stays ``K``:

    * ``incl_BA``:         B += (I - A A^#) E K
    * ``incl_CstarAstar``: C += K E (I - A^# A)
    * ``incl_CK``:         C += (I - K K^#) E A
    * ``incl_BstarKstar``: B += A E (I - K^# K)

    Raises
    ------
    InfeasibleViolation
        When the range to escape is everything (``rank_a == p`` for the A-side
        inclusions, ``rank_k == q`` for the K-side ones).
    """
    if spec.violate is None:
        raise UsageError("theorem1_violating_instance needs a violate tag")
    name = spec.violate
    if name in ("incl_BA", "incl_CstarAstar") and spec.rank_a == spec.p:
        raise InfeasibleViolation(f"{name}: A is invertible, R(A) is the whole space")
    if name in ("incl_CK", "incl_BstarKstar") and spec.rank_k == spec.q:
        raise InfeasibleViolation(f"{name}: K is invertible, R(K) is the whole space")

    rng, a, k, b, c = _theorem1_parts(spec, tol)
    a_g = ginv(a, tol)
    k_g = ginv(k, tol)
    ip, iq = np.eye(spec.p), np.eye(spec.q)
    for _ in range(MAX_ATTEMPTS):
        if name == "incl_BA":
            e = rng.complex_normal((spec.p, spec.q))
            bb, cc = b + (ip - a @ a_g) @ e @ k, c
        elif name == "incl_CstarAstar":
            e = rng.complex_normal((spec.q, spec.p))
            bb, cc = b, c + k @ e @ (ip - a_g @ a)
        elif name == "incl_CK":
            e = rng.complex_normal((spec.q, spec.p))
            bb, cc = b, c + (iq - k @ k_g) @ e @ a
        else:
            e = rng.complex_normal((spec.p, spec.q))
            bb, cc = b + a @ e @ (iq - k_g @ k), c
        m = _assemble(a, bb, cc, k, tol)
        if not getattr(check_hypotheses(m, tol), name):
            return m
    raise GenerationFailure(f"could not break {name} in {MAX_ATTEMPTS} attempts")


def theorem2_instance(spec: InstanceSpec, tol: Tolerance = COMPOSITE_TOL) -> BlockMatrix:
    """Mirror of :func:`theorem1_instance` pivoting on D.

    The result is ``theorem1_instance(spec).swapped()``: ``D`` is p x p of
    rank ``rank_a`` and ``L = A - B D^# C`` has rank ``rank_k``.
    """
    return theorem1_instance(spec, tol).swapped()


def theorem2_violating_instance(spec: InstanceSpec, tol: Tolerance = COMPOSITE_TOL) -> BlockMatrix:
    """Mirror of :func:`theorem1_violating_instance`.

    ``spec.violate`` is read as the Theorem-1 tag whose swapped image is broken
    (``incl_BA`` breaks ``incl_CD``, ``incl_CstarAstar`` breaks
    ``incl_BstarDstar``, ``incl_CK`` breaks ``incl_BL``, ``incl_BstarKstar``
    breaks ``incl_CstarLstar``).
    """
    return theorem1_violating_instance(spec, tol).swapped()


def random_invertible_instance(p: int, q: int, seed: int, tol: Tolerance = COMPOSITE_TOL) -> BlockMatrix:
    """Gaussian blocks with invertible ``A``, ``D`` and ``M``."""
    rng = SplitMix64(seed)
    for _ in range(MAX_ATTEMPTS):
        m = BlockMatrix(
            rng.complex_normal((p, p)),
            rng.complex_normal((p, q)),
            rng.complex_normal((q, p)),
            rng.complex_normal((q, q)),
        )
        limit = 1.0 / tol.rank_threshold((p + q, p + q))
        if all(np.linalg.cond(x) < limit for x in (m.A, m.D, m.assemble())):
            return m
    raise GenerationFailure(f"no invertible draw for p={p}, q={q}")
