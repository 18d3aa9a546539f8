"""Reed-Solomon and convolutional codecs plus the BPSK/AWGN channel."""

from functools import lru_cache

from .channel import awgn_channel, bpsk_modulate, hard_slice, noise_sigma
from .conv import ConvolutionalCode, ConvSpec, parse_octal
from .gf import GaloisField
from .rs import ReedSolomon, RsSpec


@lru_cache(maxsize=32)
def _rs(spec):
    return ReedSolomon(spec)


@lru_cache(maxsize=32)
def _conv(spec):
    return ConvolutionalCode(spec)


def rs_encode(msg, spec=RsSpec()):
    return _rs(spec).encode(msg)


def rs_decode(received, spec=RsSpec()):
    """Decoded message symbols, or None on decoding failure."""
    return _rs(spec).decode(received)


def conv_encode(bits, spec=ConvSpec()):
    return _conv(spec).encode(bits)


def viterbi_decode_hard(bits, spec=ConvSpec()):
    return _conv(spec).decode_hard(bits)


def viterbi_decode_soft(obs, spec=ConvSpec()):
    return _conv(spec).decode_soft(obs)


__all__ = [
    "ConvSpec", "ConvolutionalCode", "GaloisField", "ReedSolomon", "RsSpec",
    "awgn_channel", "bpsk_modulate", "conv_encode", "hard_slice", "noise_sigma",
    "parse_octal", "rs_decode", "rs_encode", "viterbi_decode_hard",
    "viterbi_decode_soft",
]
