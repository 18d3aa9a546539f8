"""BPSK mapping, AWGN channel and hard slicing.

Bit 0 maps to +1 and bit 1 to -1 (unit symbol energy); a positive
observation therefore favours bit 0.
"""

import math

import numpy as np

from ..errors import ChannelError


def bpsk_modulate(bits):
    bits = np.asarray(bits)
    return 1.0 - 2.0 * bits.astype(np.float64)


def noise_sigma(ebn0_db, rate=1.0):
    """Per-dimension noise std for unit-energy symbols.

    Eb/N0 is per information bit, so a rate-r code sees Es/N0 = r*Eb/N0.
    """
    if math.isinf(ebn0_db) and ebn0_db > 0:
        return 0.0
    ebn0 = 10.0 ** (ebn0_db / 10.0)
    return math.sqrt(1.0 / (2.0 * rate * ebn0))


def awgn_channel(symbols, ebn0_db, rate=1.0, seed=None):
    """Add white Gaussian noise.

    ``seed`` may be an int, a ``numpy.random.SeedSequence`` or a
    ``numpy.random.Generator``; the same seed always gives the same noise.
    """
    symbols = np.asarray(symbols, dtype=np.float64)
    if not np.all(np.isfinite(symbols)):
        raise ChannelError("channel input contains non-finite values")
    if not 0 < rate <= 1:
        raise ChannelError(f"rate must be in (0, 1], got {rate!r}")
    if math.isnan(ebn0_db):
        raise ChannelError("Eb/N0 is NaN")
    sigma = noise_sigma(ebn0_db, rate)
    if sigma == 0.0:
        return symbols.copy()
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    return symbols + sigma * rng.standard_normal(symbols.shape)


def hard_slice(obs):
    obs = np.asarray(obs, dtype=np.float64)
    if not np.all(np.isfinite(obs)):
        raise ChannelError("observations contain non-finite values")
    return (obs < 0).astype(np.uint8)
