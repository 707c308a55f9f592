"""Deterministic randomness for seeded verification trials.

All random inputs in the package come from one fixed 64-bit linear
congruential generator so that every trial can be reproduced bit for bit,
including by reimplementations in other languages:

    state' = (6364136223846793005 * state + 1442695040888963407) mod 2**64

Doubles are drawn from the top 53 bits of the state, uniform on [0, 1).
Complex samples take real and imaginary parts uniform on [-1, 1).
"""

from __future__ import annotations

MULTIPLIER = 6364136223846793005
INCREMENT = 1442695040888963407
_MASK = (1 << 64) - 1


class Lcg64:
    """The package-wide linear congruential generator."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (MULTIPLIER * self._state + INCREMENT) & _MASK
        return self._state

    def uniform(self) -> float:
        """Uniform double on [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) / float(1 << 53)

    def complex_uniform(self) -> complex:
        """Complex number with re, im each uniform on [-1, 1)."""
        re = 2.0 * self.uniform() - 1.0
        im = 2.0 * self.uniform() - 1.0
        return complex(re, im)


def trial_seed(seed: int, index: int) -> int:
    """Derived seed for trial `index` of a batch started at `seed`."""
    return (seed + 1000003 * index) & _MASK
