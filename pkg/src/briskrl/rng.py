"""Deterministic random numbers via SplitMix64.

SplitMix64 is a tiny, well-studied generator (Steele, Lea & Flood 2014) with a
published test vector, a single 64-bit word of state, and no data-dependent
branches, which makes it trivial to reproduce bit-for-bit in other languages
and inside JIT-compiled kernels.  Every stochastic draw in this package flows
through :meth:`Rng.random` so that one scalar recurrence defines all of them.
"""

from __future__ import annotations

import math

_MASK64 = 0xFFFFFFFFFFFFFFFF
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class Rng:
    """SplitMix64 stream seeded with a 64-bit integer.

    >>> Rng(0).next_raw() == 0xE220A8397B1DCDAF
    True
    """

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = int(seed) & _MASK64

    @property
    def state(self) -> int:
        """Current 64-bit state word (the next output is a mix of state + gamma)."""
        return self._state

    def next_raw(self) -> int:
        """Advance the stream and return the next raw uint64."""
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return (z ^ (z >> 31)) & _MASK64

    def random(self) -> float:
        """Uniform double in [0, 1), from the top 53 bits of the next output."""
        return (self.next_raw() >> 11) * 2.0 ** -53

    def uniform(self, low: float, high: float) -> float:
        """Uniform double in [low, high).

        Computed as ``low + (high - low) * random()``; rounding can land the
        product exactly on ``high``, so the result is nudged back below it.
        """
        if not (math.isfinite(low) and math.isfinite(high)):
            raise ValueError("uniform() bounds must be finite")
        if low > high:
            raise ValueError(f"uniform() requires low <= high, got [{low}, {high}]")
        v = low + (high - low) * self.random()
        if v >= high and low < high:
            v = math.nextafter(high, low)
        return v

    def randint(self, n: int) -> int:
        """Uniform integer in [0, n).

        Floor-multiply of a 53-bit double: the bias is at most n * 2**-53,
        which is negligible for any n this package draws (actions, buffer
        indices), and it keeps the draw reproducible from `random()` alone.
        """
        if n <= 0:
            raise ValueError(f"randint() requires n >= 1, got {n}")
        return int(self.random() * n)

    def split(self) -> "Rng":
        """Derive an independent child stream, advancing this one once."""
        return Rng(self.next_raw())

    def __repr__(self):
        return f"Rng(state=0x{self._state:016X})"
