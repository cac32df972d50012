"""Deterministic 64-bit PRNG used for all randomized trial generation.

Every implementation of the benchmark protocol must reproduce trials
bit-for-bit, so the generator is pinned here rather than delegated to a
platform RNG.  The generator is SplitMix64:

    state <- (state + 0x9E3779B97F4A7C15) mod 2^64
    z <- state
    z <- (z XOR (z >> 30)) * 0xBF58476D1CE4E5B9   (mod 2^64)
    z <- (z XOR (z >> 27)) * 0x94D049BB133111EB   (mod 2^64)
    output z XOR (z >> 31)

Bounded draws use rejection sampling on the top of the 64-bit range, so
`randbelow(n)` is exactly uniform.  Distinct-position sampling is a
partial Fisher-Yates shuffle.  Sub-seeds for independent trials come
from `derive_seed`, which folds integer coordinates into the state with
the same mixing function; trials are therefore independent of execution
order, which keeps parallel benchmark runs byte-identical to serial
ones.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """SplitMix64 finalizer: bijective scramble of a 64-bit value."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(master: int, *coords: int) -> int:
    """Derive an independent sub-seed from a master seed and integer coords.

    Folding is positional: derive_seed(m, a, b) != derive_seed(m, b, a)
    in general.  Used to give every (pattern, level, trial) cell its own
    stream without any sequential dependency between trials.
    """
    s = master & MASK64
    for c in coords:
        s = mix64(s ^ mix64((c + GOLDEN) & MASK64))
    return s


class SplitMix64:
    """Sequential SplitMix64 stream."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        return mix64(self.state)

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n) via rejection sampling (unbiased)."""
        if n <= 0:
            raise ValueError("randbelow requires n >= 1")
        if n == 1:
            return 0
        limit = MASK64 + 1 - ((MASK64 + 1) % n)
        while True:
            u = self.next_u64()
            if u < limit:
                return u % n

    def sample_distinct(self, n: int, k: int) -> list[int]:
        """k distinct positions from range(n), by partial Fisher-Yates.

        Order of the returned list is part of the pinned behaviour (the
        first k slots of the shuffle), though callers usually only need
        the set.
        """
        if not 0 <= k <= n:
            raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
        pool = list(range(n))
        for i in range(k):
            j = i + self.randbelow(n - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]
