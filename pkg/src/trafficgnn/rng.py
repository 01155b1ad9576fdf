"""Deterministic, portable pseudo-random generator.

Every stochastic step in the package (weight init, dropout masks, neighbor
sampling, synthetic data) draws from this generator, so a seed pins down
every result bit-for-bit on every platform.

The core is splitmix64.  The state advances by a fixed odd constant and each
output is a bijective mix of the new state:

    state_k  = state_{k-1} + 0x9E3779B97F4A7C15            (mod 2**64)
    z        = state_k
    z        = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9        (mod 2**64)
    z        = (z ^ (z >> 27)) * 0x94D049BB133111EB        (mod 2**64)
    output_k = z ^ (z >> 31)

The k-th output depends only on ``seed + k * constant``, so blocks of draws
vectorize with uint64 numpy arithmetic; the scalar and block paths yield the
identical stream.
"""

import numpy as np

from .errors import ValidationError

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

# 2**-53; a 53-bit draw times this lies in [0, 1)
_INV53 = 1.0 / (1 << 53)


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return z ^ (z >> 31)


class Rng:
    """splitmix64 stream; one instance = one independent stream."""

    def __init__(self, seed: int):
        self._state = int(seed) & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        return _mix(self._state)

    def _u64_block(self, n: int) -> np.ndarray:
        """n outputs as a uint64 array, advancing the stream by n."""
        idx = np.arange(1, n + 1, dtype=np.uint64)
        z = np.uint64(self._state) + idx * np.uint64(_GOLDEN)
        self._state = (self._state + n * _GOLDEN) & _MASK64
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
        return z ^ (z >> np.uint64(31))

    # floats ------------------------------------------------------------

    def random(self) -> float:
        """One double in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * _INV53

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.random()

    def random_matrix(self, rows: int, cols: int) -> np.ndarray:
        """rows x cols doubles in [0, 1); same stream as repeated random()."""
        u = (self._u64_block(rows * cols) >> np.uint64(11)).astype(np.float64)
        return (u * _INV53).reshape(rows, cols)

    def uniform_matrix(self, rows: int, cols: int, lo: float, hi: float) -> np.ndarray:
        return lo + (hi - lo) * self.random_matrix(rows, cols)

    def normal_matrix(self, rows: int, cols: int, std: float = 1.0) -> np.ndarray:
        """Box-Muller normals; offsets keep both uniforms strictly inside (0, 1)."""
        n = rows * cols
        m = (n + 1) // 2
        u1 = ((self._u64_block(m) >> np.uint64(11)).astype(np.float64) + 0.5) * _INV53
        u2 = ((self._u64_block(m) >> np.uint64(11)).astype(np.float64) + 0.5) * _INV53
        radius = np.sqrt(-2.0 * np.log(u1))
        angle = 2.0 * np.pi * u2
        z = np.concatenate([radius * np.cos(angle), radius * np.sin(angle)])[:n]
        return (std * z).reshape(rows, cols)

    # integers ----------------------------------------------------------

    def randint_below(self, n: int) -> int:
        """Unbiased integer in [0, n) via rejection sampling."""
        if n <= 0:
            raise ValidationError(f"randint_below needs n >= 1, got {n}")
        threshold = ((1 << 64) // n) * n
        while True:
            r = self.next_u64()
            if r < threshold:
                return r % n

    def permutation(self, n: int) -> list[int]:
        """Fisher-Yates shuffle of range(n)."""
        out = list(range(n))
        for i in range(n - 1, 0, -1):
            j = self.randint_below(i + 1)
            out[i], out[j] = out[j], out[i]
        return out

    def sample_without_replacement(self, items, k: int) -> list:
        """k distinct elements of items, uniformly; order is stream-determined."""
        pool = list(items)
        if k > len(pool):
            raise ValidationError(f"cannot sample {k} items from {len(pool)}")
        for i in range(k):
            j = i + self.randint_below(len(pool) - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]
