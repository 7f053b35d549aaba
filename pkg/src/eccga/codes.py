"""Construction of the binary linear block codes used by the toolkit.

BCH and quadratic-residue codes are cyclic and built from a generator
polynomial g(x); Reed-Solomon codes are expanded to their binary image.
All codes are stored systematically: G = [I_k | P], H = [P^T | I_{n-k}],
with information bits occupying the first k codeword positions.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

from .errors import CodeConstructionError, UnsupportedSizeError
from .fields import (
    GF2m,
    bits_to_poly,
    poly_degree,
    poly_divides,
    poly_divmod,
    poly_mul,
    poly_str,
    poly_to_bits,
)
from .gf2 import as_bit_vector, gf2_matmul, gf2_rank

# Minimum distances of binary quadratic residue codes with small prime
# length, from standard code tables.
_QR_KNOWN_DISTANCE = {7: 3, 17: 5, 23: 7, 31: 7, 41: 9, 47: 11, 71: 11}


@dataclass(frozen=True)
class LinearCode:
    """A binary (n, k, d) linear block code in systematic form.

    ``d`` is the design distance carried by the construction; the true
    minimum distance is verified against it only for small dimensions
    (see :func:`min_distance_bruteforce`).
    """

    name: str
    n: int
    k: int
    d: int
    generator: np.ndarray
    parity_check: np.ndarray
    gen_poly: int | None = None
    t: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "t", (self.d - 1) // 2)
        self.generator.setflags(write=False)
        self.parity_check.setflags(write=False)

    @property
    def rate(self) -> float:
        return self.k / self.n

    def __repr__(self):
        return f"LinearCode({self.name}: n={self.n}, k={self.k}, d={self.d})"


def _systematic_pair(p_block: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """G = [I | P] and H = [P^T | I] from the k x (n-k) parity block."""
    k, r = p_block.shape
    g = np.concatenate([np.eye(k, dtype=np.uint8), p_block], axis=1)
    h = np.concatenate([p_block.T.copy(), np.eye(r, dtype=np.uint8)], axis=1)
    return g, h


def _verify_code(code: LinearCode) -> LinearCode:
    if gf2_matmul(code.generator, code.parity_check.T).any():
        raise CodeConstructionError(f"{code.name}: generator and parity-check are not orthogonal")
    if gf2_rank(code.generator) != code.k:
        raise CodeConstructionError(f"{code.name}: generator is rank deficient")
    if gf2_rank(code.parity_check) != code.n - code.k:
        raise CodeConstructionError(f"{code.name}: parity-check is rank deficient")
    return code


def make_cyclic_code(name: str, n: int, gen_poly: int, d: int) -> LinearCode:
    """Systematic code from a cyclic generator polynomial.

    Row i of the parity block holds the coefficients of
    x^(n-k+i) mod g(x), so encoding matches polynomial-remainder
    systematic encoding with information bits first.

    Raises:
        CodeConstructionError: g does not divide x^n + 1, or k <= 0.
    """
    r = poly_degree(gen_poly)
    k = n - r
    if k <= 0:
        raise CodeConstructionError(f"{name}: generator degree {r} leaves no information bits")
    xn1 = (1 << n) | 1
    if not poly_divides(gen_poly, xn1):
        raise CodeConstructionError(f"{name}: generator polynomial does not divide x^{n}+1")
    p_block = np.zeros((k, r), dtype=np.uint8)
    for i in range(k):
        _, rem = poly_divmod(1 << (r + i), gen_poly)
        p_block[i] = poly_to_bits(rem, r)
    g, h = _systematic_pair(p_block)
    return _verify_code(LinearCode(name=name, n=n, k=k, d=d, generator=g, parity_check=h, gen_poly=gen_poly))


def build_bch(field_: GF2m, n: int, design_t: int) -> LinearCode:
    """Primitive narrow-sense BCH code of length n = 2^m - 1.

    g(x) is the product of the distinct minimal polynomials of
    alpha, alpha^2, ..., alpha^(2t); the stored distance is the design
    distance 2t + 1.
    """
    if n != field_.order:
        raise CodeConstructionError(f"BCH length must be 2^m - 1 = {field_.order}, got {n}")
    if design_t < 1:
        raise CodeConstructionError("error-correction capability must be >= 1")
    g = 1
    seen_cosets: set[int] = set()
    for i in range(1, 2 * design_t + 1):
        if i in seen_cosets:
            continue
        coset = i % n
        c = coset
        while True:
            seen_cosets.add(c)
            c = (c * 2) % n
            if c == coset:
                break
        g = poly_mul(g, field_.minimal_polynomial(field_.alpha_pow(i)))
    d = 2 * design_t + 1
    k = n - poly_degree(g)
    if k <= 0:
        raise CodeConstructionError(f"BCH(n={n}, t={design_t}) has no information bits (deg g = {poly_degree(g)})")
    return make_cyclic_code(f"bch{n}_{k}", n, g, d)


def multiplicative_order(a: int, p: int) -> int:
    """Order of a modulo the prime p."""
    if a % p == 0:
        raise CodeConstructionError(f"{a} is not invertible mod {p}")
    order = 1
    x = a % p
    while x != 1:
        x = (x * a) % p
        order += 1
        if order > p:
            raise CodeConstructionError("order computation failed")
    return order


def build_qr(p: int, d: int | None = None) -> LinearCode:
    """Binary quadratic residue code of prime length p.

    2 must be a quadratic residue mod p so that the residue set is closed
    under doubling and the generator polynomial has binary coefficients.
    The distance label defaults to published table values for known
    lengths.
    """
    if p < 3 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise CodeConstructionError(f"QR length must be an odd prime, got {p}")
    residues = sorted({(i * i) % p for i in range(1, p)})
    if 2 not in residues:
        raise CodeConstructionError(f"2 is not a quadratic residue mod {p}; no binary QR code of length {p}")
    if d is None:
        d = _QR_KNOWN_DISTANCE.get(p)
        if d is None:
            raise CodeConstructionError(f"no tabulated distance for QR length {p}; pass d explicitly")
    s = multiplicative_order(2, p)
    field_ = GF2m(s)
    # alpha of order p inside GF(2^s)
    alpha = field_.pow(2, field_.order // p)
    if alpha == 1 or field_.pow(alpha, p) != 1:
        raise CodeConstructionError("failed to construct an element of order p")
    coeffs = field_.product_of_linear_factors([field_.pow(alpha, q) for q in residues])
    for c in coeffs:
        if c > 1:
            raise CodeConstructionError("QR generator polynomial has non-binary coefficients")
    g = bits_to_poly(coeffs)
    k = p - poly_degree(g)
    if k != (p + 1) // 2:
        raise CodeConstructionError(f"QR dimension check failed: k={k}, expected {(p + 1) // 2}")
    return make_cyclic_code(f"qr{p}_{k}", p, g, d)


def build_rs_binary_image(field_: GF2m, n_sym: int, k_sym: int) -> LinearCode:
    """Binary image of a Reed-Solomon code over GF(2^m).

    The symbol-level code uses g(x) = prod_{i=1}^{n-k} (x - alpha^i) and a
    systematic symbol generator matrix; every symbol is then expanded to m
    bits in the polynomial basis (lowest power first).  The result is an
    (m*n_sym, m*k_sym) binary code whose stored distance is the symbol
    design distance n_sym - k_sym + 1 (a lower bound on the binary
    minimum distance).
    """
    if n_sym != field_.order:
        raise CodeConstructionError(f"RS length must be 2^m - 1 = {field_.order}, got {n_sym}")
    if not 0 < k_sym < n_sym:
        raise CodeConstructionError(f"RS dimension must be in (0, {n_sym}), got {k_sym}")
    m = field_.m
    r_sym = n_sym - k_sym
    g_sym = field_.product_of_linear_factors([field_.alpha_pow(i) for i in range(1, r_sym + 1)])

    def sym_poly_mod(dividend: list[int]) -> list[int]:
        # remainder of dividend by g_sym, coefficient lists lowest-first
        rem = list(dividend)
        for i in range(len(rem) - 1, r_sym - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            rem[i] = 0
            for j, gj in enumerate(g_sym[:-1]):  # g_sym is monic
                rem[i - r_sym + j] ^= field_.mul(c, gj)
        return rem[:r_sym]

    # systematic symbol parity block: row i = x^(r+i) mod g
    p_sym = np.zeros((k_sym, r_sym), dtype=np.int64)
    for i in range(k_sym):
        dividend = [0] * (r_sym + i) + [1]
        p_sym[i] = sym_poly_mod(dividend)

    def expand_symbol(s: int) -> np.ndarray:
        return np.array([(s >> b) & 1 for b in range(m)], dtype=np.uint8)

    # binary parity block: info bit (i, b) carries symbol alpha^b at
    # symbol position i, contributing alpha^b * p_sym[i, j] to parity j
    p_bin = np.zeros((m * k_sym, m * r_sym), dtype=np.uint8)
    for i in range(k_sym):
        for b in range(m):
            ab = field_.alpha_pow(b)
            for j in range(r_sym):
                s = field_.mul(ab, int(p_sym[i, j]))
                if s:
                    p_bin[i * m + b, j * m : (j + 1) * m] = expand_symbol(s)
    g, h = _systematic_pair(p_bin)
    d = r_sym + 1
    code = LinearCode(
        name=f"rs{n_sym}_{k_sym}_binimg", n=m * n_sym, k=m * k_sym, d=d, generator=g, parity_check=h
    )
    return _verify_code(code)


def encode(code: LinearCode, info) -> np.ndarray:
    """Systematic codeword info @ G over GF(2)."""
    info = as_bit_vector(info)
    if info.shape[0] != code.k:
        raise ValueError(f"information word must have length k={code.k}, got {info.shape[0]}")
    return (info @ code.generator) & 1


def syndrome(code: LinearCode, word) -> np.ndarray:
    """word @ H^T over GF(2); zero exactly for codewords."""
    word = as_bit_vector(word)
    if word.shape[0] != code.n:
        raise ValueError(f"word must have length n={code.n}, got {word.shape[0]}")
    return (code.parity_check @ word) & 1


_DISTANCE_ENUM_LIMIT = 20


def min_distance_bruteforce(code: LinearCode) -> int:
    """Exact minimum distance by enumerating all nonzero codewords (k <= 20)."""
    if code.k > _DISTANCE_ENUM_LIMIT:
        raise UnsupportedSizeError(
            f"brute-force distance needs k <= {_DISTANCE_ENUM_LIMIT}, got k={code.k}"
        )
    best = code.n + 1
    gen = code.generator.astype(np.int64)
    chunk = 1 << 14
    for lo in range(1, 1 << code.k, chunk):
        hi = min(lo + chunk, 1 << code.k)
        ints = np.arange(lo, hi, dtype=np.int64)
        info = (ints[:, None] >> np.arange(code.k)) & 1
        words = (info @ gen) & 1
        best = min(best, int(words.sum(axis=1).min()))
    return best


# ---------------------------------------------------------------------------
# Code-definition files


def save_code_file(code: LinearCode, path: str | Path) -> None:
    """Write a cyclic code's defining data as a small text file."""
    if code.gen_poly is None:
        raise ValueError("only cyclic codes (with a generator polynomial) can be saved")
    bits = "".join(str(b) for b in poly_to_bits(code.gen_poly))
    text = f"name={code.name}\nn={code.n}\nk={code.k}\nd={code.d}\ng={bits}\n"
    Path(path).write_text(text)


def _parse_code_text(text: str, origin: str) -> LinearCode:
    fields: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise CodeConstructionError(f"{origin}:{lineno}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        fields[key.strip()] = value.strip()
    missing = [key for key in ("name", "n", "k", "d", "g") if key not in fields]
    if missing:
        raise CodeConstructionError(f"{origin}: missing fields {missing}")
    try:
        n, k, d = int(fields["n"]), int(fields["k"]), int(fields["d"])
    except ValueError as exc:
        raise CodeConstructionError(f"{origin}: non-integer n/k/d") from exc
    gbits = fields["g"]
    if not gbits or set(gbits) - {"0", "1"}:
        raise CodeConstructionError(f"{origin}: g must be a nonempty binary string")
    g = bits_to_poly(int(b) for b in gbits)
    if poly_degree(g) != n - k:
        raise CodeConstructionError(f"{origin}: deg(g)={poly_degree(g)} but n-k={n - k}")
    xn1 = (1 << n) | 1
    if not poly_divides(g, xn1):
        raise CodeConstructionError(f"{origin}: g does not divide x^{n}+1")
    return make_cyclic_code(fields["name"], n, g, d)


def load_code_file(path: str | Path) -> LinearCode:
    """Load and re-verify a cyclic code from a code-definition file.

    Format, one ``key=value`` per line: name, n, k, d, and g as a binary
    string with the lowest-degree coefficient first.
    """
    path = Path(path)
    return _parse_code_text(path.read_text(), str(path))


# ---------------------------------------------------------------------------
# Built-in registry

BUILTIN_CODE_NAMES = (
    "hamming7_4",
    "rep3_1",
    "bch15_7",
    "bch63_51",
    "bch127_113",
    "rs15_7_binimg",
    "qr71_36",
)


@lru_cache(maxsize=None)
def get_code(name: str) -> LinearCode:
    """Construct (and cache) a built-in code by registry name."""
    if name == "hamming7_4":
        code = build_bch(GF2m(3), 7, 1)
        return LinearCode("hamming7_4", 7, 4, 3, code.generator, code.parity_check, code.gen_poly)
    if name == "rep3_1":
        return make_cyclic_code("rep3_1", 3, 0b111, 3)
    if name == "bch15_7":
        return build_bch(GF2m(4), 15, 2)
    if name == "bch63_51":
        return build_bch(GF2m(6), 63, 2)
    if name == "bch127_113":
        return build_bch(GF2m(7), 127, 2)
    if name == "rs15_7_binimg":
        return build_rs_binary_image(GF2m(4), 15, 7)
    if name == "qr71_36":
        asset = importlib.resources.files("eccga.assets").joinpath("qr71_36.code")
        return _parse_code_text(asset.read_text(), "qr71_36.code")
    raise KeyError(f"unknown code {name!r}; built-ins: {', '.join(BUILTIN_CODE_NAMES)}")


def resolve_code(name_or_path: str) -> LinearCode:
    """Registry name or path to a code-definition file."""
    if name_or_path in BUILTIN_CODE_NAMES:
        return get_code(name_or_path)
    p = Path(name_or_path)
    if p.exists():
        return load_code_file(p)
    raise KeyError(f"unknown code {name_or_path!r} (not a registry name or an existing file)")


def describe(code: LinearCode) -> str:
    lines = [
        f"name: {code.name}",
        f"n: {code.n}",
        f"k: {code.k}",
        f"d: {code.d} (design)",
        f"t: {code.t}",
        f"rate: {code.rate:.4f}",
    ]
    if code.gen_poly is not None:
        lines.append(f"g: {poly_str(code.gen_poly)}")
    if code.k <= _DISTANCE_ENUM_LIMIT:
        lines.append(f"min distance (brute force): {min_distance_bruteforce(code)}")
    return "\n".join(lines)
