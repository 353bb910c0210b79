"""Action/observation space descriptions."""

from __future__ import annotations

import numpy as np

from .rng import Rng


class Space:
    def sample(self, rng: Rng):
        raise NotImplementedError

    def contains(self, x) -> bool:
        raise NotImplementedError


class Discrete(Space):
    """The integers {0, 1, ..., n-1}."""

    def __init__(self, n: int):
        if int(n) != n or n < 1:
            raise ValueError(f"Discrete requires a positive integer n, got {n!r}")
        self.n = int(n)

    def sample(self, rng: Rng) -> int:
        return rng.randint(self.n)

    def contains(self, x) -> bool:
        if isinstance(x, (bool, np.bool_)):
            return False
        if isinstance(x, (int, np.integer)):
            return 0 <= int(x) < self.n
        return False

    def __eq__(self, other):
        return isinstance(other, Discrete) and other.n == self.n

    def __repr__(self):
        return f"Discrete({self.n})"


class Box(Space):
    """A box in R^n: elementwise bounds low[i] <= x[i] <= high[i], float64."""

    def __init__(self, low, high, shape=None):
        if shape is not None:
            low = np.full(shape, low, dtype=np.float64)
            high = np.full(shape, high, dtype=np.float64)
        else:
            low = np.asarray(low, dtype=np.float64)
            high = np.asarray(high, dtype=np.float64)
        if low.shape != high.shape:
            raise ValueError(f"bound shapes differ: {low.shape} vs {high.shape}")
        if np.any(np.isnan(low)) or np.any(np.isnan(high)):
            raise ValueError("bounds must not be NaN")
        if np.any(low > high):
            raise ValueError("low must be <= high elementwise")
        self.low = low
        self.high = high
        self.shape = low.shape

    def sample(self, rng: Rng) -> np.ndarray:
        # one uniform draw per component, in flat row-major order
        if not (np.all(np.isfinite(self.low)) and np.all(np.isfinite(self.high))):
            raise ValueError("cannot sample from an unbounded Box")
        out = np.empty(self.shape, dtype=np.float64)
        flat = out.reshape(-1)
        lo = self.low.reshape(-1)
        hi = self.high.reshape(-1)
        for i in range(flat.size):
            flat[i] = rng.uniform(lo[i], hi[i])
        return out

    def contains(self, x) -> bool:
        arr = np.asarray(x, dtype=np.float64)
        if arr.shape != self.shape:
            return False
        if np.any(np.isnan(arr)):
            return False
        return bool(np.all(arr >= self.low) and np.all(arr <= self.high))

    def __eq__(self, other):
        return (
            isinstance(other, Box)
            and other.shape == self.shape
            and np.array_equal(other.low, self.low)
            and np.array_equal(other.high, self.high)
        )

    def __repr__(self):
        return f"Box(low={self.low!r}, high={self.high!r})"
