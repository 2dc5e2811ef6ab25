"""Seeded 64-bit xorshift generator used by every randomized check.

State update (all arithmetic mod 2^64)::

    x ^= x << 13
    x ^= x >> 7
    x ^= x << 17

A zero seed is replaced by 0x9E3779B97F4A7C15 since zero is a fixed point.
``randint(lo, hi)`` draws by rejection so every value in [lo, hi] is equally likely.
The whole specification fits in these lines, so any language can replay a seed.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
ZERO_SEED_REPLACEMENT = 0x9E3779B97F4A7C15


class XorShift64:
    def __init__(self, seed: int):
        s = seed & MASK64
        self.state = s if s else ZERO_SEED_REPLACEMENT

    def next_u64(self) -> int:
        x = self.state
        x ^= (x << 13) & MASK64
        x ^= x >> 7
        x ^= (x << 17) & MASK64
        self.state = x
        return x

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in the closed range [lo, hi]."""
        span = hi - lo + 1
        if span <= 0:
            raise ValueError("empty range")
        limit = (1 << 64) - ((1 << 64) % span)
        while True:
            x = self.next_u64()
            if x < limit:
                return lo + x % span

    def choice(self, seq):
        return seq[self.randint(0, len(seq) - 1)]
