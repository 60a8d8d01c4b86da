"""Seeded random streams that are stable across platforms and library versions.

The generator is SplitMix64 for the integer stream and Box-Muller for
normal deviates, so the exact sequence produced by a seed is part of the
public contract: the same seed gives the same bytes everywhere.
"""

from __future__ import annotations

import math

import numpy as np

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_TWO_PI = 2.0 * math.pi


class SplitMix64:
    """SplitMix64 integer stream with Box-Muller normal deviates on top."""

    def __init__(self, seed: int):
        self._state = int(seed) & _MASK64
        self._spare: float | None = None

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Uniform double in [0, 1) built from the top 53 bits."""
        return (self.next_u64() >> 11) * 2.0**-53

    def normal(self) -> float:
        """Standard normal deviate; pairs are generated by Box-Muller."""
        if self._spare is not None:
            out, self._spare = self._spare, None
            return out
        # u1 shifted into (0, 1] so the log never sees zero
        u1 = ((self.next_u64() >> 11) + 1) * 2.0**-53
        u2 = self.uniform()
        r = math.sqrt(-2.0 * math.log(u1))
        self._spare = r * math.sin(_TWO_PI * u2)
        return r * math.cos(_TWO_PI * u2)

    def normals(self, shape) -> np.ndarray:
        out = np.empty(int(np.prod(shape)), dtype=np.float64)
        for i in range(out.size):
            out[i] = self.normal()
        return out.reshape(shape)

    def complex_normals(self, shape) -> np.ndarray:
        """Standard complex normals, real and imaginary parts interleaved
        per element so the stream does not depend on the array shape."""
        out = np.empty(int(np.prod(shape)), dtype=np.complex128)
        for i in range(out.size):
            re = self.normal()
            im = self.normal()
            out[i] = complex(re, im)
        return out.reshape(shape)


def derive_seed(master: int, *parts: int) -> int:
    """Derive a child seed from a master seed and integer coordinates.

    Feeds each coordinate through a SplitMix64 step so nearby coordinates
    give unrelated streams. Deterministic and order-sensitive.
    """
    state = int(master) & _MASK64
    for p in parts:
        state = (state ^ ((int(p) & _MASK64) + _GOLDEN)) & _MASK64
        g = SplitMix64(state)
        state = g.next_u64()
    return state
