"""Feed-forward convolutional codes with hard and soft Viterbi decoding.

Register convention: the newest input bit is the most significant bit of
the K-bit register, so generator ``g`` read MSB to LSB is the impulse
response of its output stream.  With zero-flush termination the encoder
appends K-1 zeros and the decoder traces back from the all-zero state.

The decoders accept a single word (1-D) or a batch of equal-length words
(2-D, one per row) and run the add-compare-select step across the batch in
numpy.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..errors import DecodeError, EncodeError, InvalidParameterError


def parse_octal(text):
    """``"171,133"`` -> ``(0o171, 0o133)``."""
    return tuple(int(part.strip(), 8) for part in text.split(",") if part.strip())


@dataclass(frozen=True)
class ConvSpec:
    constraint_length: int = 7
    generators: Tuple[int, ...] = (0o171, 0o133)
    terminated: bool = True

    def __post_init__(self):
        if self.constraint_length < 2:
            raise InvalidParameterError("constraint_length must be >= 2")
        if len(self.generators) < 2:
            raise InvalidParameterError("need at least two generators")
        for g in self.generators:
            if not 0 < g < (1 << self.constraint_length):
                raise InvalidParameterError(
                    f"generator {g:o} (octal) does not fit constraint length "
                    f"{self.constraint_length}"
                )

    @property
    def rate_inverse(self):
        return len(self.generators)

    @property
    def n_states(self):
        return 1 << (self.constraint_length - 1)

    def coded_length(self, n_info):
        tail = self.constraint_length - 1 if self.terminated else 0
        return (n_info + tail) * self.rate_inverse


def _parity(x):
    return bin(x).count("1") & 1


class ConvolutionalCode:
    def __init__(self, spec: ConvSpec = ConvSpec()):
        self.spec = spec
        k = spec.constraint_length
        n_states = spec.n_states
        mask = n_states - 1
        # For next state s the input bit is its MSB and the two predecessors
        # differ only in their LSB, which is the traceback decision.
        pred = np.empty((n_states, 2), dtype=np.int64)
        out = np.empty((n_states, 2), dtype=np.int64)
        for s in range(n_states):
            u = s >> (k - 2)
            for b in (0, 1):
                p = ((s << 1) & mask) | b
                reg = (u << (k - 1)) | p
                word = 0
                for g in spec.generators:
                    word = (word << 1) | _parity(reg & g)
                pred[s, b] = p
                out[s, b] = word
        self._pred = pred
        self._out = out
        n_out = spec.rate_inverse
        # Bits of every output pattern, first generator first.
        patterns = np.arange(1 << n_out)
        self._pattern_bits = ((patterns[:, None] >> np.arange(n_out - 1, -1, -1)) & 1).astype(
            np.int8
        )

    def encode(self, bits):
        bits = np.asarray(bits)
        if bits.ndim != 1 or bits.size == 0:
            raise EncodeError("input must be a nonempty 1-D bit sequence")
        if np.any((bits != 0) & (bits != 1)):
            raise EncodeError("input must contain only 0/1")
        return self.encode_batch(bits[None, :])[0]

    def encode_batch(self, bits):
        """Encode a (batch, n_info) 0/1 array; returns (batch, coded_length)."""
        spec = self.spec
        bits = np.asarray(bits, dtype=np.int64)
        k = spec.constraint_length
        if spec.terminated:
            bits = np.concatenate([bits, np.zeros((bits.shape[0], k - 1), np.int64)], axis=1)
        steps = bits.shape[1]
        # reg_t = sum_j u_{t-j} 2^(k-1-j), built from zero-padded history.
        padded = np.concatenate([np.zeros((bits.shape[0], k - 1), np.int64), bits], axis=1)
        reg = np.zeros((bits.shape[0], steps), dtype=np.int64)
        for j in range(k):
            reg |= padded[:, k - 1 - j : k - 1 - j + steps] << (k - 1 - j)
        out = np.empty((bits.shape[0], steps, spec.rate_inverse), dtype=np.uint8)
        for i, g in enumerate(spec.generators):
            tapped = reg & g
            par = np.zeros_like(tapped)
            while np.any(tapped):
                par ^= tapped & 1
                tapped >>= 1
            out[:, :, i] = par
        return out.reshape(bits.shape[0], -1)

    def _check(self, word):
        word = np.asarray(word)
        single = word.ndim == 1
        if single:
            word = word[None, :]
        if word.ndim != 2:
            raise DecodeError("input must be 1-D or 2-D")
        n_out = self.spec.rate_inverse
        length = word.shape[1]
        tail = self.spec.constraint_length - 1 if self.spec.terminated else 0
        if length == 0 or length % n_out or length // n_out <= tail:
            raise DecodeError(
                f"length {length} is inconsistent with rate 1/{n_out} and a "
                f"{tail}-bit tail"
            )
        return word, single

    def decode_hard(self, bits):
        """Maximum-likelihood decode under the Hamming metric."""
        word, single = self._check(bits)
        if np.any((word != 0) & (word != 1)):
            raise DecodeError("hard-decision input must contain only 0/1")
        word = word.astype(np.int64)
        steps = word.shape[1] // self.spec.rate_inverse
        sym = word.reshape(word.shape[0], steps, -1)
        # dist[b, t, p] = Hamming distance between received symbol t and pattern p
        pb = self._pattern_bits.astype(np.int64)
        dist = np.abs(sym[:, :, None, :] - pb[None, None, :, :]).sum(axis=3)
        out = self._viterbi(dist, big=np.int64(1) << 40)
        return out[0] if single else out

    def decode_soft(self, obs):
        """Maximum-likelihood decode on unquantized observations.

        Positive observations favour bit 0.  The metric is the negated
        correlation with the antipodal branch labels, so scaling all
        observations by a positive constant leaves the decisions unchanged.
        """
        word, single = self._check(obs)
        word = word.astype(np.float64)
        if not np.all(np.isfinite(word)):
            raise DecodeError("observations must be finite")
        steps = word.shape[1] // self.spec.rate_inverse
        sym = word.reshape(word.shape[0], steps, -1)
        antipodal = 1.0 - 2.0 * self._pattern_bits.astype(np.float64)
        metric = -np.einsum("btn,pn->btp", sym, antipodal)
        out = self._viterbi(metric, big=np.inf)
        return out[0] if single else out

    def _viterbi(self, branch, big):
        """Add-compare-select over branch costs of shape (batch, steps, patterns)."""
        spec = self.spec
        batch, steps, _ = branch.shape
        n_states = spec.n_states
        p0, p1 = self._pred[:, 0], self._pred[:, 1]
        o0, o1 = self._out[:, 0], self._out[:, 1]
        pm = np.full((batch, n_states), big, dtype=branch.dtype)
        pm[:, 0] = 0
        decisions = np.empty((steps, batch, n_states), dtype=bool)
        for t in range(steps):
            bm = branch[:, t, :]
            c0 = pm[:, p0] + bm[:, o0]
            c1 = pm[:, p1] + bm[:, o1]
            take1 = c1 < c0
            decisions[t] = take1
            pm = np.where(take1, c1, c0)
        if spec.terminated:
            state = np.zeros(batch, dtype=np.int64)
        else:
            state = np.argmin(pm, axis=1)
        shift = spec.constraint_length - 2
        mask = n_states - 1
        rows = np.arange(batch)
        decoded = np.empty((batch, steps), dtype=np.uint8)
        for t in range(steps - 1, -1, -1):
            decoded[:, t] = state >> shift
            state = ((state << 1) & mask) | decisions[t, rows, state]
        if spec.terminated:
            decoded = decoded[:, : steps - (spec.constraint_length - 1)]
        return decoded
