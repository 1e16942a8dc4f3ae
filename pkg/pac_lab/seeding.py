"""
Seeding rules for reproducible runs.

Streams are split in three places:

1. Per trial: seed = splitmix64(master_seed ^ splitmix64(grid_index << 32 | trial_index)).
   Trials can then run in any order or process and still see the same bits.
2. Per purpose inside a trial: the trial seed is passed to both
   draw_quantum_sample and measure_labels, which key their streams with
   stream_key(seed, SAMPLING) and stream_key(seed, MEASUREMENT).
3. Per example index: example i of a stream owns the i-th output of the
   splitmix64 sequence started at that stream's key, i.e.
   splitmix64(key + i * GOLDEN_GAMMA). Example i therefore sees the same
   uniform whatever the sample size, and a size-m sample is a prefix of any
   larger sample drawn from the same seed.

Other random sources (Monte Carlo Rademacher estimates, test fixtures) are
numpy Generators on PCG64 built by make_rng.
"""

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15

SAMPLING = 1
MEASUREMENT = 2

_GAMMA = np.uint64(GOLDEN_GAMMA)
_MUL1 = np.uint64(0xBF58476D1CE4E5B9)
_MUL2 = np.uint64(0x94D049BB133111EB)
_UNIT = 2.0**-53


def splitmix64(value: int) -> int:
    """One step of the splitmix64 finalizer on a 64-bit integer."""
    z = (value + GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def splitmix64_array(values: np.ndarray) -> np.ndarray:
    """splitmix64 over a uint64 array; arithmetic wraps mod 2⁶⁴."""
    z = np.asarray(values, dtype=np.uint64) + _GAMMA
    z = (z ^ (z >> np.uint64(30))) * _MUL1
    z = (z ^ (z >> np.uint64(27))) * _MUL2
    return z ^ (z >> np.uint64(31))


def trial_seed(master_seed: int, grid_index: int, trial_index: int) -> int:
    """Deterministic 64-bit seed for one (grid point, trial) cell."""
    cell = ((grid_index & 0xFFFFFFFF) << 32) | (trial_index & 0xFFFFFFFF)
    return splitmix64((master_seed & MASK64) ^ splitmix64(cell))


def stream_key(seed: int, purpose: int) -> int:
    return splitmix64((seed & MASK64) ^ splitmix64(purpose))


def example_uniforms(key: int, m: int, start: int = 0) -> np.ndarray:
    """Uniforms in [0, 1) for example indices start..start+m-1 of the stream keyed by key."""
    index = np.arange(start, start + m, dtype=np.uint64)
    states = np.uint64(key & MASK64) + index * _GAMMA
    return (splitmix64_array(states) >> np.uint64(11)).astype(np.float64) * _UNIT


def as_stream_key(source, purpose: int) -> int:
    """
    Key of a per-example stream from an int seed or a Generator.

    An int seed is keyed directly, so equal seeds give equal streams. A
    Generator gives up one 64-bit draw as the key.
    """
    if isinstance(source, np.random.Generator):
        return int(source.integers(0, MASK64, dtype=np.uint64, endpoint=True))
    if source is None:
        source = np.random.SeedSequence().entropy
    return stream_key(int(source), purpose)


def make_rng(seed) -> np.random.Generator:
    """Build a PCG64 generator from an int seed (or pass a Generator through)."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))
