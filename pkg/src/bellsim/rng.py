"""Counter-based random streams for reproducible (parallel) Monte Carlo.

Every trial block gets its own Philox stream keyed by (seed, block index),
so the random numbers seen by a trial depend only on the seed and the
trial's position, never on how blocks are scheduled across threads.
"""

import numpy as np

MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    """One round of the splitmix64 mixer; maps uint64 -> uint64."""
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return (x ^ (x >> 31)) & MASK64


def derive_seed(seed: int, index: int) -> int:
    """Independent child seed for sweep point / angle pair `index`."""
    return (seed ^ splitmix64(index)) & MASK64


def block_generator(seed: int, block_index: int) -> np.random.Generator:
    """Generator for one trial block, keyed by (seed, block index)."""
    key = np.array([seed & MASK64, block_index & MASK64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))
