#
# SPDX-License-Identifier: Apache-2.0
r"""
=====================
Deterministic streams
=====================

SplitMix64 generator with a frozen uniform mapping, so that a seed and a
draw order reproduce the same numbers on every platform and in any
language.

The n-th output (n = 1, 2, ...) of a stream whose state is ``s`` is
``mix(s + n * GAMMA)``; drawing ``count`` values advances the state by
``count * GAMMA``. This makes block draws identical to one-at-a-time draws.

A uniform double in [0, 1) is the top 53 bits of an output times 2**-53,
and ``uniform(low, high)`` is ``low + (high - low) * u``.

Sub-streams for batch parallelism are seeded with the first output of a
SplitMix64 generator seeded with ``seed XOR index``.
"""
import numpy as np

from cape.core import utils

MASK = 2**64 - 1
GAMMA = 0x9E3779B97F4A7C15
MUL1 = 0xBF58476D1CE4E5B9
MUL2 = 0x94D049BB133111EB

_GAMMA = np.uint64(GAMMA)
_MUL1 = np.uint64(MUL1)
_MUL2 = np.uint64(MUL2)
_SHIFTS = (np.uint64(30), np.uint64(27), np.uint64(31))
_MANTISSA_SHIFT = np.uint64(11)
_UNIT = 1.0 / (1 << 53)


def mix64(z):
    """SplitMix64 finaliser on a Python int."""
    z &= MASK
    z = ((z ^ (z >> 30)) * MUL1) & MASK
    z = ((z ^ (z >> 27)) * MUL2) & MASK
    return z ^ (z >> 31)


def _mix_array(z):
    z ^= z >> _SHIFTS[0]
    z *= _MUL1
    z ^= z >> _SHIFTS[1]
    z *= _MUL2
    z ^= z >> _SHIFTS[2]
    return z


def _count(size):
    if size is None:
        return 1
    return int(np.prod(size, dtype=np.int64))


class RngStream:
    """SplitMix64 stream of 64-bit outputs and uniform doubles.

    Streams are cheap and must not be shared across threads; derive one
    per worker with :meth:`spawn`.
    """

    def __init__(self, seed=0):
        self.seed = utils.parse_seed(seed)
        self.state = self.seed
        self.drawn = 0

    def __repr__(self):
        return f"RngStream(seed={self.seed}, drawn={self.drawn})"

    def next_uint64(self, size=None):
        """Return the next outputs as uint64 values.

        :param size: None for a single Python int, otherwise an int or
            shape tuple
        """
        count = _count(size)
        counters = np.arange(1, count + 1, dtype=np.uint64)
        counters *= _GAMMA
        counters += np.uint64(self.state)
        values = _mix_array(counters)

        self.state = (self.state + GAMMA * count) & MASK
        self.drawn += count

        if size is None:
            return int(values[0])
        return values.reshape(size)

    def random(self, size=None):
        """Uniform doubles in [0, 1) from the top 53 bits of each output."""
        bits = self.next_uint64(1 if size is None else size)
        values = (np.asarray(bits) >> _MANTISSA_SHIFT).astype(np.float64)
        values *= _UNIT
        if size is None:
            return float(values.reshape(-1)[0])
        return values

    def uniform(self, low=0.0, high=1.0, size=None):
        """Uniform draws in [low, high); a collapsed range still consumes."""
        u = self.random(size)
        return low + (high - low) * u

    def spawn(self, index):
        """Derive the sub-stream for batch element ``index``."""
        if index < 0:
            raise utils.InvalidInputError(
                f"Sub-stream index must be non-negative: {index}"
            )
        return RngStream(mix64((self.seed ^ index) + GAMMA))
