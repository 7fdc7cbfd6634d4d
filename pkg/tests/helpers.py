"""Independent oracles and draw helpers shared by the tests."""
from fractions import Fraction

import numpy as np

from grouppivot.rng import SplitMix64


def exact_rank(rows) -> int:
    """Rank by Gaussian elimination over the rationals."""
    m = [[Fraction(x) for x in row] for row in rows]
    rank, ncols = 0, len(m[0]) if m else 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / m[rank][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def exact_matmul(x, y):
    return [[sum(Fraction(a) * Fraction(b) for a, b in zip(row, col)) for col in zip(*y)] for row in x]


def cline_group_inverse(a):
    """``A (A^3)^+ A``, which equals ``A^#`` for index-1 ``A``; uses numpy's pinv."""
    a = np.asarray(a)
    a3 = a @ a @ a
    return a @ np.linalg.pinv(a3, rcond=1e-10) @ a


def draw_dims(seed: int, lo: int, hi: int):
    """(p, q, rank_a, rank_k) with p, q in [lo, hi] and ranks in [1, dim]."""
    u = SplitMix64(seed ^ 0xD1B54A32D192ED03).next_uint64(4)
    span = hi - lo + 1
    p = lo + int(u[0] % np.uint64(span))
    q = lo + int(u[1] % np.uint64(span))
    return p, q, 1 + int(u[2] % np.uint64(p)), 1 + int(u[3] % np.uint64(q))


def rel_fro(x, y) -> float:
    return float(np.linalg.norm(np.asarray(x) - np.asarray(y)) / max(1.0, np.linalg.norm(y)))
