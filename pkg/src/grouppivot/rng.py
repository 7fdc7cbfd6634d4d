"""SplitMix64 stream and the Gaussian draws built on it.

The generator is fixed here rather than borrowed from ``numpy.random`` so that
instance streams never move when numpy changes its defaults. SplitMix64
(Steele, Lea, Flood 2014) is counter based: the k-th output (k = 1, 2, ...)
for seed ``s`` is ``mix(s + k * 0x9E3779B97F4A7C15)`` with

    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    z =  z ^ (z >> 31)

all arithmetic modulo 2**64. Complex normals use Box-Muller on consecutive
output pairs ``(a, b)``: ``u1 = ((a >> 11) + 1) / 2**53``,
``u2 = (b >> 11) / 2**53``, ``z = sqrt(-log u1) * exp(2j*pi*u2)``, which has
``E|z|^2 = 1``.
"""
from __future__ import annotations

import numpy as np

GAMMA = np.uint64(0x9E3779B97F4A7C15)
MIX1 = np.uint64(0xBF58476D1CE4E5B9)
MIX2 = np.uint64(0x94D049BB133111EB)
MASK64 = (1 << 64) - 1


def _mix(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * MIX1
    z = (z ^ (z >> np.uint64(27))) * MIX2
    return z ^ (z >> np.uint64(31))


class SplitMix64:
    """Stateful cursor over the SplitMix64 sequence for one seed."""

    def __init__(self, seed: int):
        if not 0 <= int(seed) <= MASK64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.seed = int(seed)
        self.counter = 0

    def next_uint64(self, n: int) -> np.ndarray:
        k = np.arange(self.counter + 1, self.counter + 1 + n, dtype=np.uint64)
        self.counter += n
        with np.errstate(over="ignore"):
            return _mix(np.uint64(self.seed) + k * GAMMA)

    def complex_normal(self, shape) -> np.ndarray:
        """Standard complex Gaussian array of the given shape."""
        n = int(np.prod(shape))
        raw = self.next_uint64(2 * n).reshape(n, 2)
        u1 = ((raw[:, 0] >> np.uint64(11)).astype(np.float64) + 1.0) * 2.0**-53
        u2 = (raw[:, 1] >> np.uint64(11)).astype(np.float64) * 2.0**-53
        z = np.sqrt(-np.log(u1)) * np.exp(2j * np.pi * u2)
        return z.reshape(shape)
