"""Monte-Carlo BER measurement over BPSK/AWGN and coding-gain extraction.

Every simulated scheme maps a batch of information-bit frames to decoded
frames through ``modulate -> AWGN -> decode``.  Coded runs charge noise per
information bit: the channel sees Es/N0 = rate * Eb/N0 with ``rate`` the
actual frame rate, tail bits included.
"""

import math
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from .csvio import write_csv
from .errors import InvalidParameterError, NotBracketedError
from .fec.channel import awgn_channel, bpsk_modulate, hard_slice
from .fec.conv import ConvolutionalCode, ConvSpec
from .fec.rs import ReedSolomon, RsSpec

BER_CSV_HEADER = ("ebn0_db", "ber", "bits", "errors", "codec")


def analytic_uncoded_ber(ebn0_db):
    """Uncoded BPSK bit error rate Q(sqrt(2 Eb/N0)).

    Uses Q(sqrt(2g)) = erfc(sqrt(g)) / 2 with the C library ``erfc``, which
    stays accurate deep into the tail.
    """
    if math.isinf(ebn0_db):
        return 0.0 if ebn0_db > 0 else 0.5
    return 0.5 * math.erfc(math.sqrt(10.0 ** (ebn0_db / 10.0)))


class Uncoded:
    label = "uncoded"

    def __init__(self, frame_bits=10_000):
        self.frame_bits = frame_bits
        self.rate = 1.0

    def transmit(self, bits, ebn0_db, rng):
        obs = awgn_channel(bpsk_modulate(bits), ebn0_db, 1.0, rng)
        return hard_slice(obs)


class RsScheme:
    """RS over BPSK with hard-decision symbol decoding.

    A word that fails to decode is passed through as its received systematic
    part.
    """

    label = "RS"

    def __init__(self, spec: RsSpec = RsSpec()):
        self.codec = ReedSolomon(spec)
        self.spec = spec
        self.frame_bits = spec.k * spec.symbol_bits
        self.rate = spec.k / spec.n
        self._weights = 1 << np.arange(spec.symbol_bits - 1, -1, -1)

    def _to_symbols(self, bits):
        s = self.spec.symbol_bits
        return (bits.reshape(bits.shape[0], -1, s) * self._weights).sum(axis=2)

    def _to_bits(self, symbols):
        s = self.spec.symbol_bits
        shifts = np.arange(s - 1, -1, -1)
        return ((symbols[:, :, None] >> shifts) & 1).reshape(symbols.shape[0], -1)

    def transmit(self, bits, ebn0_db, rng):
        msgs = self._to_symbols(np.asarray(bits, dtype=np.int64))
        words = self.codec.encode_batch(msgs)
        obs = awgn_channel(bpsk_modulate(self._to_bits(words)), ebn0_db, self.rate, rng)
        received = self._to_symbols(hard_slice(obs).astype(np.int64))
        out = received[:, : self.spec.k].copy()
        dirty = np.flatnonzero(np.any(self.codec.syndromes_batch(received), axis=1))
        for row in dirty:
            msg = self.codec.decode(received[row])
            if msg is not None:
                out[row] = msg
        return self._to_bits(out).astype(np.uint8)


class ConvScheme:
    """Convolutional code with hard- or soft-decision Viterbi decoding."""

    def __init__(self, spec: ConvSpec = ConvSpec(), soft=True, frame_bits=1000):
        self.codec = ConvolutionalCode(spec)
        self.spec = spec
        self.soft = soft
        self.label = "CC-Soft" if soft else "CC-Hard"
        self.frame_bits = frame_bits
        self.rate = frame_bits / spec.coded_length(frame_bits)

    def transmit(self, bits, ebn0_db, rng):
        coded = self.codec.encode_batch(bits)
        obs = awgn_channel(bpsk_modulate(coded), ebn0_db, self.rate, rng)
        if self.soft:
            return self.codec.decode_soft(obs)
        return self.codec.decode_hard(hard_slice(obs))


def default_schemes(rs_spec=RsSpec(), conv_spec=ConvSpec()):
    """The three coded schemes, keyed by label."""
    return {
        "RS": RsScheme(rs_spec),
        "CC-Hard": ConvScheme(conv_spec, soft=False),
        "CC-Soft": ConvScheme(conv_spec, soft=True),
    }


@dataclass(frozen=True)
class Budget:
    """Stopping rule: run until both minimums are met or ``max_bits`` is hit."""

    min_bits: int = 100_000
    min_errors: int = 100
    max_bits: int = 2_000_000

    def __post_init__(self):
        if self.min_bits < 1 or self.max_bits < self.min_bits or self.min_errors < 0:
            raise InvalidParameterError(f"inconsistent budget {self}")


@dataclass(frozen=True)
class BerPoint:
    ebn0_db: float
    ber: float
    bits: int
    errors: int


@dataclass(frozen=True)
class BerCurve:
    points: Tuple[BerPoint, ...]
    codec_label: str

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        for p in self.points:
            if not 0 <= p.errors <= p.bits or not 0.0 <= p.ber <= 1.0:
                raise InvalidParameterError(f"invalid BER point {p}")
        x = [p.ebn0_db for p in self.points]
        if any(b <= a for a, b in zip(x, x[1:])):
            raise InvalidParameterError("BER curve points must have strictly increasing Eb/N0")

    @property
    def ebn0_db(self):
        return np.array([p.ebn0_db for p in self.points])

    @property
    def ber(self):
        return np.array([p.ber for p in self.points])

    def shifted(self, offset_db):
        pts = [BerPoint(p.ebn0_db + offset_db, p.ber, p.bits, p.errors) for p in self.points]
        return BerCurve(pts, self.codec_label)

    def rows(self):
        for p in self.points:
            yield (p.ebn0_db, p.ber, p.bits, p.errors, self.codec_label)


@dataclass(frozen=True)
class GainResult:
    codec_label: str
    target_ber: float
    ebn0_uncoded_db: float
    ebn0_coded_db: float
    gain_db: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "gain_db", self.ebn0_uncoded_db - self.ebn0_coded_db)


def _rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _frames_per_batch(scheme, target_bits=200_000):
    return max(1, target_bits // scheme.frame_bits)


def simulate_ber_point(scheme, ebn0_db, budget=Budget(), seed=0):
    """Measure one BER point; returns a :class:`BerPoint` with its counts."""
    if not math.isfinite(ebn0_db):
        raise InvalidParameterError("Eb/N0 must be finite")
    rng = _rng(seed)
    frames = _frames_per_batch(scheme)
    bits_done = errors = 0
    while bits_done < budget.max_bits and (
        bits_done < budget.min_bits or errors < budget.min_errors
    ):
        n = min(frames, -(-(budget.max_bits - bits_done) // scheme.frame_bits))
        info = rng.integers(0, 2, size=(n, scheme.frame_bits), dtype=np.uint8)
        decoded = scheme.transmit(info, ebn0_db, rng)
        errors += int(np.count_nonzero(decoded != info))
        bits_done += info.size
    return BerPoint(float(ebn0_db), errors / bits_done, bits_done, errors)


def point_seed(seed, index):
    """Per-point seed, a pure function of (master seed, grid index)."""
    return np.random.SeedSequence(seed, spawn_key=(index,))


def ber_sweep(scheme, grid, budget=Budget(), seed=0):
    grid = [float(x) for x in grid]
    if not grid:
        raise InvalidParameterError("Eb/N0 grid is empty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise InvalidParameterError("Eb/N0 grid must be strictly increasing")
    points = [
        simulate_ber_point(scheme, x, budget, point_seed(seed, i)) for i, x in enumerate(grid)
    ]
    return BerCurve(points, scheme.label)


def paired_frame_errors(schemes, ebn0_db, n_frames, seed=0):
    """Per-frame error counts for schemes driven by identical bits and noise.

    Only meaningful for schemes with the same encoder and frame layout
    (e.g. hard and soft Viterbi over one convolutional code).
    """
    out = []
    for scheme in schemes:
        rng = _rng(np.random.SeedSequence(seed))
        counts = []
        left = n_frames
        while left:
            n = min(left, _frames_per_batch(scheme))
            info = rng.integers(0, 2, size=(n, scheme.frame_bits), dtype=np.uint8)
            decoded = scheme.transmit(info, ebn0_db, rng)
            counts.append(np.count_nonzero(decoded != info, axis=1))
            left -= n
        out.append(np.concatenate(counts))
    return out


def _crossing(curve, target):
    x, y = curve.ebn0_db, curve.ber
    for i in range(len(y)):
        if y[i] == target:
            return float(x[i])
        if i + 1 < len(y) and y[i] > target > y[i + 1] and y[i + 1] > 0:
            ly0, ly1, lt = math.log10(y[i]), math.log10(y[i + 1]), math.log10(target)
            frac = (ly0 - lt) / (ly0 - ly1)
            return float(x[i] + frac * (x[i + 1] - x[i]))
    raise NotBracketedError(curve.codec_label, target)


def coding_gain_at(coded: BerCurve, uncoded: BerCurve, target_ber=1e-3):
    """Coding gain at ``target_ber`` by log-BER linear interpolation.

    Each curve's crossing is taken on the first adjacent pair of points that
    brackets the target with nonzero BER.
    """
    if not 0 < target_ber < 1:
        raise InvalidParameterError("target BER must be in (0, 1)")
    x_u = _crossing(uncoded, target_ber)
    x_c = _crossing(coded, target_ber)
    return GainResult(coded.codec_label, target_ber, x_u, x_c)


def write_ber_csv(path, curve: BerCurve):
    return write_csv(path, BER_CSV_HEADER, curve.rows())
