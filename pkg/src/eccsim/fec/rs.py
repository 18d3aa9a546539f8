"""Systematic Reed-Solomon codes over GF(2^s).

Decoding is Berlekamp-Massey for the error locator, Chien search for the
error positions and Forney's formula for the error values.  Erasures are not
supported.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import DecodeError, EncodeError, InvalidParameterError
from .gf import PRIMITIVE_POLYNOMIALS, GaloisField


@dataclass(frozen=True)
class RsSpec:
    symbol_bits: int = 5
    n: int = 31
    k: int = 21
    field_polynomial: Optional[int] = None
    first_root: int = 1

    def __post_init__(self):
        if self.symbol_bits < 2:
            raise InvalidParameterError("symbol_bits must be >= 2")
        if not 0 < self.k < self.n <= (1 << self.symbol_bits) - 1:
            raise InvalidParameterError(
                f"need 0 < k < n <= 2^s - 1, got n={self.n}, k={self.k}, s={self.symbol_bits}"
            )
        if self.field_polynomial is None:
            object.__setattr__(
                self, "field_polynomial", PRIMITIVE_POLYNOMIALS.get(self.symbol_bits)
            )

    @property
    def t(self):
        return (self.n - self.k) // 2

    @property
    def parity(self):
        return self.n - self.k

    @property
    def rate(self):
        return self.k / self.n


class ReedSolomon:
    """Encoder/decoder for one :class:`RsSpec`.

    Codewords are symbol lists with the message first, then the parity; list
    index ``j`` is the coefficient of ``x**(n-1-j)``.
    """

    def __init__(self, spec: RsSpec = RsSpec()):
        self.spec = spec
        self.gf = GaloisField(spec.symbol_bits, spec.field_polynomial)
        gen = [1]
        for i in range(spec.parity):
            gen = self.gf.poly_mul(gen, [1, self.gf.alpha_pow(spec.first_root + i)])
        self.generator = gen
        # syn_logs[i, j] = log of alpha^((first_root+i)*(n-1-j))
        i = np.arange(spec.parity)[:, None]
        j = np.arange(spec.n)[None, :]
        self._syn_logs = ((spec.first_root + i) * (spec.n - 1 - j)) % self.gf.order

    def encode(self, msg):
        spec = self.spec
        msg = [int(s) for s in msg]
        if len(msg) != spec.k:
            raise EncodeError(f"message must have {spec.k} symbols, got {len(msg)}")
        if any(s < 0 or s >= self.gf.size for s in msg):
            raise EncodeError(f"symbols must lie in [0, {self.gf.size})")
        # Synthetic division of msg(x) * x^(n-k) by the monic generator.
        rem = msg + [0] * spec.parity
        gf = self.gf
        for i in range(spec.k):
            coef = rem[i]
            if coef:
                for j in range(1, len(self.generator)):
                    rem[i + j] ^= gf.mul(self.generator[j], coef)
        return msg + rem[spec.k:]

    def encode_batch(self, msgs):
        """Encode a (batch, k) integer array with an LFSR across the batch."""
        spec = self.spec
        gf = self.gf
        msgs = np.asarray(msgs, dtype=np.int64)
        if msgs.ndim != 2 or msgs.shape[1] != spec.k:
            raise EncodeError(f"expected shape (batch, {spec.k}), got {msgs.shape}")
        if np.any((msgs < 0) | (msgs >= gf.size)):
            raise EncodeError(f"symbols must lie in [0, {gf.size})")
        gen_logs = np.array([gf.log[g] for g in self.generator[1:]], dtype=np.int64)
        gen_zero = np.array([g == 0 for g in self.generator[1:]])
        rem = np.zeros((msgs.shape[0], spec.parity), dtype=np.int64)
        for i in range(spec.k):
            fb = msgs[:, i] ^ rem[:, 0]
            prod = gf.exp_np[(gf.log_np[fb][:, None] + gen_logs[None, :]) % gf.order]
            prod[(fb == 0)[:, None] | gen_zero[None, :]] = 0
            rem[:, :-1] = rem[:, 1:]
            rem[:, -1] = 0
            rem ^= prod
        return np.concatenate([msgs, rem], axis=1)

    def syndromes(self, word):
        gf = self.gf
        out = []
        for i in range(self.spec.parity):
            out.append(gf.poly_eval(word, gf.alpha_pow(self.spec.first_root + i)))
        return out

    def syndromes_batch(self, words):
        """Syndromes of a (batch, n) integer array, shape (batch, n-k)."""
        words = np.asarray(words, dtype=np.int64)
        gf = self.gf
        logs = gf.log_np[words][:, None, :] + self._syn_logs[None, :, :]
        terms = np.where(words[:, None, :] == 0, 0, gf.exp_np[logs % gf.order])
        return np.bitwise_xor.reduce(terms, axis=2)

    def decode(self, received):
        """Return the k message symbols, or None when decoding fails.

        Up to t symbol errors are always corrected.  Heavier error patterns
        are either detected (None) or silently miscorrected to another
        codeword.
        """
        spec = self.spec
        word = [int(s) for s in received]
        if len(word) != spec.n:
            raise DecodeError(f"received word must have {spec.n} symbols, got {len(word)}")
        if any(s < 0 or s >= self.gf.size for s in word):
            raise DecodeError(f"symbols must lie in [0, {self.gf.size})")
        synd = self.syndromes(word)
        if not any(synd):
            return word[: spec.k]
        return self._correct(word, synd)

    def _correct(self, word, synd):
        gf = self.gf
        spec = self.spec
        locator = self._berlekamp_massey(synd)
        if locator is None:
            return None
        n_err = len(locator) - 1
        if n_err > spec.t:
            return None
        positions = self._chien(locator)
        if len(positions) != n_err:
            return None
        # Omega(x) = S(x) * Lambda(x) mod x^(n-k); polynomials lowest degree first.
        omega = [0] * spec.parity
        for i, li in enumerate(locator):
            if li == 0:
                continue
            for j in range(spec.parity - i):
                omega[i + j] ^= gf.mul(li, synd[j])
        # Formal derivative keeps only odd-degree terms in characteristic 2.
        deriv = [locator[i] if i % 2 else 0 for i in range(1, len(locator))]
        for pos in positions:
            x = gf.alpha_pow(spec.n - 1 - pos)
            x_inv = gf.inv(x)
            num = _eval_low(gf, omega, x_inv)
            den = _eval_low(gf, deriv, x_inv)
            if den == 0:
                return None
            magnitude = gf.mul(gf.pow(x, 1 - spec.first_root + gf.order), gf.div(num, den))
            word[pos] ^= magnitude
        if any(self.syndromes(word)):
            return None
        return word[: spec.k]

    def _berlekamp_massey(self, synd):
        gf = self.gf
        cur = [1]
        prev = [1]
        length = 0
        shift = 1
        prev_disc = 1
        for step, s in enumerate(synd):
            disc = s
            for i in range(1, length + 1):
                if i < len(cur):
                    disc ^= gf.mul(cur[i], synd[step - i])
            if disc == 0:
                shift += 1
                continue
            scale = gf.div(disc, prev_disc)
            update = [0] * shift + [gf.mul(scale, c) for c in prev]
            new = cur + [0] * max(0, len(update) - len(cur))
            for i, c in enumerate(update):
                new[i] ^= c
            if 2 * length <= step:
                prev = cur
                length = step + 1 - length
                prev_disc = disc
                shift = 1
            else:
                shift += 1
            cur = new
        while len(cur) > 1 and cur[-1] == 0:
            cur.pop()
        if len(cur) - 1 != length:
            # locator degree disagrees with the LFSR length: uncorrectable
            return None
        return cur

    def _chien(self, locator):
        gf = self.gf
        n = self.spec.n
        found = []
        for pos in range(n):
            x_inv = gf.alpha_pow(-(n - 1 - pos))
            if _eval_low(gf, locator, x_inv) == 0:
                found.append(pos)
        return found


def _eval_low(gf, poly, x):
    """Evaluate a lowest-degree-first polynomial."""
    y = 0
    for c in reversed(poly):
        y = gf.mul(y, x) ^ c
    return y
