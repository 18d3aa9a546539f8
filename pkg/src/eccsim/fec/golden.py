"""Golden test-vector files.

One vector per line: ``<message> <codeword>``, each a run of fixed-width
hex digits, one group per element (``ceil(bits/4)`` digits; conv-code bits
use one digit each).  ``#`` starts a comment; blank lines are ignored.

    # RS(7,3) over GF(8)
    123 1236074
"""

from pathlib import Path


def _width(element_bits):
    return max(1, -(-element_bits // 4))


def encode_hex(values, element_bits):
    w = _width(element_bits)
    return "".join(f"{int(v):0{w}x}" for v in values)


def decode_hex(text, element_bits):
    w = _width(element_bits)
    if len(text) % w:
        raise ValueError(f"hex run {text!r} is not a multiple of {w} digits")
    return [int(text[i : i + w], 16) for i in range(0, len(text), w)]


def read_vectors(path, element_bits):
    """List of (message, codeword) element lists."""
    out = []
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"{path}:{lineno}: expected two hex fields")
        out.append((decode_hex(parts[0], element_bits), decode_hex(parts[1], element_bits)))
    return out


def write_vectors(path, pairs, element_bits, comment=None):
    lines = []
    if comment:
        lines += [f"# {c}" for c in comment.splitlines()]
    lines += [f"{encode_hex(m, element_bits)} {encode_hex(c, element_bits)}" for m, c in pairs]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
