"""Portable deterministic random number generation.

The generator is SplitMix64: a 64-bit counter advanced by the golden-gamma
constant, with each output passed through a fixed avalanche mix. It is tiny,
has a published reference implementation, and is trivially reproducible in
any language, which keeps fixtures portable. Gaussian variates are produced
from the uniform stream by the Box-Muller transform, again a fixed, portable
recipe (no rejection steps, so the draw count is deterministic).
"""

import numpy as np

_MASK = 0xFFFFFFFFFFFFFFFF
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_U53 = 2.0 ** -53


def _mix_array(z):
    """SplitMix64 finalizer on a uint64 array (wraparound is intended)."""
    z ^= z >> np.uint64(30)
    z *= np.uint64(_MIX1)
    z ^= z >> np.uint64(27)
    z *= np.uint64(_MIX2)
    z ^= z >> np.uint64(31)
    return z


def _mix_int(z):
    z &= _MASK
    z = (z ^ (z >> 30)) * _MIX1 & _MASK
    z = (z ^ (z >> 27)) * _MIX2 & _MASK
    return z ^ (z >> 31)


def mix_seed(seed, stream):
    """Derive an independent 64-bit seed from (seed, stream index)."""
    return _mix_int((int(seed) + _GAMMA * (int(stream) + 1)) & _MASK)


class SplitMix64:
    """Seedable counter-based generator with vectorized output."""

    def __init__(self, seed):
        self._state = int(seed) & _MASK

    def uint64(self, n):
        idx = np.arange(1, n + 1, dtype=np.uint64)
        out = _mix_array(np.uint64(self._state) + np.uint64(_GAMMA) * idx)
        self._state = (self._state + _GAMMA * n) & _MASK
        return out

    def uniform(self, n):
        """n floats uniform on [0, 1)."""
        return (self.uint64(n) >> np.uint64(11)).astype(np.float64) * _U53

    def normal(self, n):
        """n standard normal floats via Box-Muller."""
        pairs = (n + 1) // 2
        u1 = 1.0 - self.uniform(pairs)  # in (0, 1], keeps log finite
        u2 = self.uniform(pairs)
        r = np.sqrt(-2.0 * np.log(u1))
        z = np.concatenate([r * np.cos(2.0 * np.pi * u2),
                            r * np.sin(2.0 * np.pi * u2)])
        return z[:n]

    def complex_normal(self, rows, cols):
        """rows x cols matrix with standard complex Gaussian entries."""
        n = rows * cols
        re = self.normal(n)
        im = self.normal(n)
        return ((re + 1j * im) / np.sqrt(2.0)).reshape(rows, cols)
