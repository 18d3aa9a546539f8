"""Arithmetic in GF(2^m) via exp/log tables."""

import numpy as np

# Primitive polynomials, bit i is the coefficient of x^i.
PRIMITIVE_POLYNOMIALS = {
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x89,
    8: 0x11D,
}


class GaloisField:
    """GF(2^m) with generator alpha = x modulo ``poly``.

    ``exp`` is stored twice over so ``exp[log[a] + log[b]]`` never needs a
    modulo.
    """

    def __init__(self, m, poly=None):
        if poly is None:
            if m not in PRIMITIVE_POLYNOMIALS:
                raise ValueError(f"no default primitive polynomial for m={m}")
            poly = PRIMITIVE_POLYNOMIALS[m]
        if poly >> m != 1:
            raise ValueError(f"polynomial {poly:#x} is not of degree {m}")
        self.m = m
        self.poly = poly
        self.size = 1 << m
        self.order = self.size - 1
        exp = [0] * (2 * self.order)
        log = [0] * self.size
        x = 1
        for i in range(self.order):
            exp[i] = x
            if i and x == 1:
                raise ValueError(f"polynomial {poly:#x} is not primitive")
            log[x] = i
            x <<= 1
            if x & self.size:
                x ^= poly
        if x != 1:
            raise ValueError(f"polynomial {poly:#x} is not primitive")
        for i in range(self.order, 2 * self.order):
            exp[i] = exp[i - self.order]
        self.exp = exp
        self.log = log
        self.exp_np = np.array(exp, dtype=np.int64)
        self.log_np = np.array(log, dtype=np.int64)

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in GF(2^m)")
        if a == 0:
            return 0
        return self.exp[(self.log[a] - self.log[b]) % self.order]

    def inv(self, a):
        return self.div(1, a)

    def alpha_pow(self, e):
        return self.exp[e % self.order]

    def pow(self, a, e):
        if a == 0:
            return 0 if e else 1
        return self.exp[(self.log[a] * e) % self.order]

    # Polynomials below are coefficient lists, highest degree first.

    def poly_mul(self, p, q):
        out = [0] * (len(p) + len(q) - 1)
        for j, qj in enumerate(q):
            if qj == 0:
                continue
            for i, pi in enumerate(p):
                out[i + j] ^= self.mul(pi, qj)
        return out

    def poly_eval(self, p, x):
        y = 0
        for c in p:
            y = self.mul(y, x) ^ c
        return y

    def mul_array(self, a, scalar):
        """Elementwise product of an int array with a field scalar."""
        a = np.asarray(a, dtype=np.int64)
        if scalar == 0:
            return np.zeros_like(a)
        out = self.exp_np[(self.log_np[a] + self.log[scalar]) % self.order]
        return np.where(a == 0, 0, out)
