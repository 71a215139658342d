"""Deterministic 64-bit PRNG for corpus generation.

SplitMix64: state advances by the golden-gamma constant, output is the
finalizer mix. Chosen because it is trivial to re-implement bit-exactly
in any language (state and output are pure 64-bit integer ops), so a
corpus generated from the same seed is identical everywhere. Everything
that affects corpus *structure* draws integers only; no floats.

Reference vectors for state 0 are pinned in the test suite.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    """SplitMix64 generator with unbiased bounded-integer draws."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n) via rejection (no modulo bias)."""
        if n <= 0:
            raise ValueError(f"randbelow needs n >= 1, got {n}")
        # Reject draws from the tail remainder of the 64-bit range.
        limit = _MASK64 - (_MASK64 + 1) % n
        while True:
            r = self.next_u64()
            if r <= limit:
                return r % n

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi] inclusive."""
        if hi < lo:
            raise ValueError(f"empty range [{lo}, {hi}]")
        return lo + self.randbelow(hi - lo + 1)

    def bernoulli(self, probability: float) -> bool:
        """True with the given probability.

        The probability is frozen into an integer threshold over 2^53 at
        call time; the comparison itself is pure integer, so outcomes are
        platform-independent for any given float input.
        """
        if probability <= 0.0:
            return False
        if probability >= 1.0:
            return True
        threshold = round(probability * (1 << 53))
        return (self.next_u64() >> 11) < threshold

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]

    def split(self) -> "SplitMix64":
        """Derive an independent child generator."""
        return SplitMix64(self.next_u64())
