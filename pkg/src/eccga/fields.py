"""GF(2^m) arithmetic and GF(2)[x] polynomial helpers.

Polynomials over GF(2) are Python ints: bit i is the coefficient of x^i
(lowest degree first).  Field elements of GF(2^m) are ints in
[0, 2^m) read as coordinates in the polynomial basis {1, a, ..., a^(m-1)}
where a is the class of x modulo the primitive polynomial.

Fields with m <= 16 carry dense log/antilog tables; larger fields
(GF(2^35) is needed for length-71 quadratic residue codes) fall back to
carry-less multiplication with modular reduction, which is plenty for
the one-off generator-polynomial constructions done here.
"""

from __future__ import annotations

import numpy as np

from .errors import CodeConstructionError

_TABLE_LIMIT = 16

# Primitive polynomials, lowest degree first (bit i = coeff of x^i).
DEFAULT_PRIMITIVE_POLY = {
    2: 0b111,                # x^2 + x + 1
    3: 0b1011,               # x^3 + x + 1
    4: 0b10011,              # x^4 + x + 1
    5: 0b100101,             # x^5 + x^2 + 1
    6: 0b1000011,            # x^6 + x + 1
    7: 0b10001001,           # x^7 + x^3 + 1
    8: 0b100011101,          # x^8 + x^4 + x^3 + x^2 + 1
    9: 0b1000010001,         # x^9 + x^4 + 1
    10: 0b10000001001,       # x^10 + x^3 + 1
    11: 0b100000000101,      # x^11 + x^2 + 1
    12: 0b1000001010011,     # x^12 + x^6 + x^4 + x + 1
    13: 0b10000000011011,    # x^13 + x^4 + x^3 + x + 1
    14: 0b100010001000011,   # x^14 + x^10 + x^6 + x + 1
    15: 0b1000000000000011,  # x^15 + x + 1
    16: 0b10001000000001011, # x^16 + x^12 + x^3 + x + 1
    35: (1 << 35) | 0b101,   # x^35 + x^2 + 1
}


# ---------------------------------------------------------------------------
# GF(2)[x] helpers on int-coded polynomials


def poly_degree(p: int) -> int:
    """Degree of p, or -1 for the zero polynomial."""
    return p.bit_length() - 1


def poly_mul(a: int, b: int) -> int:
    """Carry-less product of two GF(2) polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def poly_divmod(a: int, b: int) -> tuple[int, int]:
    """Quotient and remainder of a / b over GF(2)."""
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    db = poly_degree(b)
    q = 0
    while a.bit_length() - 1 >= db and a:
        shift = a.bit_length() - 1 - db
        a ^= b << shift
        q |= 1 << shift
    return q, a


def poly_mod(a: int, b: int) -> int:
    return poly_divmod(a, b)[1]


def poly_divides(a: int, b: int) -> bool:
    """True when a divides b over GF(2)."""
    return poly_mod(b, a) == 0


def poly_to_bits(p: int, length: int | None = None) -> np.ndarray:
    """Coefficients of p as a uint8 array, lowest degree first."""
    if length is None:
        length = max(p.bit_length(), 1)
    if p.bit_length() > length:
        raise ValueError("polynomial does not fit in the requested length")
    return np.array([(p >> i) & 1 for i in range(length)], dtype=np.uint8)


def bits_to_poly(bits) -> int:
    p = 0
    for i, b in enumerate(bits):
        if int(b) & 1:
            p |= 1 << i
    return p


def poly_str(p: int) -> str:
    """Human-readable form like ``x^8+x^7+x^6+x^4+1``."""
    if p == 0:
        return "0"
    terms = []
    for i in range(poly_degree(p), -1, -1):
        if (p >> i) & 1:
            terms.append("1" if i == 0 else ("x" if i == 1 else f"x^{i}"))
    return "+".join(terms)


def _factorize(n: int) -> list[int]:
    """Distinct prime factors by trial division (n up to ~2^40 here)."""
    factors = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors.append(n)
    return factors


class GF2m:
    """The finite field GF(2^m) for 2 <= m <= 35.

    The constructor verifies that x has multiplicative order 2^m - 1
    modulo the chosen polynomial, which certifies the polynomial
    primitive (a reducible or non-primitive modulus fails the check).
    """

    def __init__(self, m: int, primitive_poly: int | None = None):
        if not 2 <= m <= 35:
            raise CodeConstructionError(f"extension degree m={m} outside supported range [2, 35]")
        if primitive_poly is None:
            primitive_poly = DEFAULT_PRIMITIVE_POLY.get(m)
            if primitive_poly is None:
                raise CodeConstructionError(f"no default primitive polynomial for m={m}; pass one explicitly")
        if poly_degree(primitive_poly) != m:
            raise CodeConstructionError(f"primitive polynomial must have degree {m}")
        self.m = m
        self.poly = primitive_poly
        self.order = (1 << m) - 1
        self._group_factors = _factorize(self.order)
        self.exp: np.ndarray | None = None
        self.log: np.ndarray | None = None
        # verify before building tables: table construction assumes the
        # modulus is primitive, so the check must not rely on them
        self._check_primitive()
        if m <= _TABLE_LIMIT:
            self._build_tables()

    def _build_tables(self) -> None:
        size = self.order
        exp = np.zeros(2 * size, dtype=np.int64)
        log = np.zeros(size + 1, dtype=np.int64)
        x = 1
        for i in range(size):
            exp[i] = x
            log[x] = i
            x <<= 1
            if x >> self.m:
                x ^= self.poly
        exp[size:] = exp[:size]
        self.exp = exp
        self.log = log

    def _pow_raw(self, a: int, e: int) -> int:
        """Square-and-multiply without tables or exponent reduction."""
        r = 1
        base = a
        while e:
            if e & 1:
                r = poly_mod(poly_mul(r, base), self.poly)
            base = poly_mod(poly_mul(base, base), self.poly)
            e >>= 1
        return r

    def _check_primitive(self) -> None:
        if self._pow_raw(2, self.order) != 1:
            raise CodeConstructionError("modulus is not primitive: x^(2^m - 1) != 1")
        for q in self._group_factors:
            if self._pow_raw(2, self.order // q) == 1:
                raise CodeConstructionError(f"modulus is not primitive: x has order dividing (2^m - 1)/{q}")

    # element arithmetic ----------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.exp is not None:
            return int(self.exp[self.log[a] + self.log[b]])
        return poly_mod(poly_mul(a, b), self.poly)

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e else 1
        e %= self.order
        if self.exp is not None:
            return int(self.exp[(self.log[a] * e) % self.order])
        r = 1
        base = a
        while e:
            if e & 1:
                r = self.mul(r, base)
            base = self.mul(base, base)
            e >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self.pow(a, self.order - 1)

    def alpha_pow(self, i: int) -> int:
        """alpha^i where alpha is the class of x (a primitive element)."""
        return self.pow(2, i)

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        order = self.order
        for q in self._group_factors:
            while order % q == 0 and self.pow(a, order // q) == 1:
                order //= q
        return order

    # polynomials with GF(2^m) coefficients ---------------------------------

    def polyseq_mul(self, a: list[int], b: list[int]) -> list[int]:
        """Product of polynomials given as coefficient lists (lowest first)."""
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] ^= self.mul(ai, bj)
        return out

    def product_of_linear_factors(self, roots: list[int]) -> list[int]:
        """Coefficients of prod (x - r) for r in roots (minus == plus here)."""
        g = [1]
        for r in roots:
            g = self.polyseq_mul(g, [r, 1])
        return g

    def minimal_polynomial(self, a: int) -> int:
        """Minimal polynomial of *a* over GF(2), as an int-coded polynomial."""
        conjugates = []
        c = a
        while c not in conjugates:
            conjugates.append(c)
            c = self.mul(c, c)
        coeffs = self.product_of_linear_factors(conjugates)
        for c in coeffs:
            if c > 1:
                raise CodeConstructionError("minimal polynomial has non-binary coefficients (bad field)")
        return bits_to_poly(coeffs)
