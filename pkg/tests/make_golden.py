"""Regenerate tests/data/*.golden from the oracles (not from eccsim codecs)."""

import random
from pathlib import Path

import oracles

from eccsim.fec.golden import write_vectors

DATA = Path(__file__).parent / "data"


def main():
    rnd = random.Random(20130901)
    for (m, poly, n, k) in [(3, 0xB, 7, 3), (5, 0x25, 31, 21)]:
        pairs = []
        for _ in range(24):
            msg = [rnd.randrange(1 << m) for _ in range(k)]
            pairs.append((msg, oracles.rs_codeword(msg, n, k, m, poly)))
        write_vectors(DATA / f"rs_{n}_{k}.golden", pairs, m,
                      f"RS({n},{k}) over GF(2^{m}), poly {poly:#x}, first root 1")
    for K, gens, name in [(3, (0o7, 0o5), "conv_k3_7_5"), (7, (0o171, 0o133), "conv_k7_171_133")]:
        pairs = []
        for length in (1, 2, 5, 16, 40):
            msg = [rnd.randrange(2) for _ in range(length)]
            pairs.append((msg, oracles.conv_encode(msg, K, gens)))
        write_vectors(DATA / f"{name}.golden", pairs, 1,
                      f"K={K}, generators {','.join(oct(g)[2:] for g in gens)} (octal), zero-flushed")


if __name__ == "__main__":
    main()
