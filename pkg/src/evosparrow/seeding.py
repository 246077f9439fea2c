"""Counter-based seed derivation.

Every stochastic component of a run (deals, policy sampling, seat
permutations, CMA-ES draws) pulls its stream from a seed derived as
``derive_seed(master, index)``.  Streams therefore depend only on the
(master seed, index) pair, never on worker scheduling, which is what makes
parallel simulation results independent of the thread count.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

# Disjoint index domains so that e.g. generation 3's sampling stream can
# never collide with game 3's deal stream.
DOMAIN_GAME = 0
DOMAIN_INIT = 1
DOMAIN_ASK = 2
DOMAIN_FITNESS = 3
DOMAIN_PPO = 4


def splitmix64(x: int) -> int:
    """One SplitMix64 output step; a 64-bit bijective mix."""
    x = (x + _GOLDEN) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def derive_seed(master: int, index: int, domain: int = DOMAIN_GAME) -> int:
    """Derive the seed of stream `index` within `domain` from `master`."""
    return splitmix64(splitmix64((master & _MASK64) ^ (domain * _GOLDEN)) + index)
