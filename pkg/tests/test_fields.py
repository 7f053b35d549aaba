import pytest

from eccga.errors import CodeConstructionError
from eccga.fields import (
    GF2m,
    bits_to_poly,
    poly_degree,
    poly_divides,
    poly_divmod,
    poly_mul,
    poly_str,
    poly_to_bits,
)


class TestPolyHelpers:
    def test_mul_known_product(self):
        # (x^4+x+1)(x^4+x^3+x^2+x+1) = x^8+x^7+x^6+x^4+1
        assert poly_mul(0b10011, 0b11111) == 0b111010001

    def test_divmod_roundtrip(self):
        a, b = 0b110101101, 0b1011
        q, r = poly_divmod(a, b)
        assert poly_mul(q, b) ^ r == a
        assert poly_degree(r) < poly_degree(b)

    def test_divides(self):
        assert poly_divides(0b1011, (1 << 7) | 1)  # x^3+x+1 | x^7+1
        assert not poly_divides(0b111, (1 << 7) | 1)

    def test_bits_roundtrip(self):
        p = 0b101101
        assert bits_to_poly(poly_to_bits(p)) == p

    def test_poly_str(self):
        assert poly_str(0b111010001) == "x^8+x^7+x^6+x^4+1"
        assert poly_str(0) == "0"
        assert poly_str(0b11) == "x+1"


class TestGF2m:
    def test_gf16_log_table(self):
        f = GF2m(4)
        # 15 nonzero elements, each with a distinct logarithm
        logs = {int(f.log[x]) for x in range(1, 16)}
        assert logs == set(range(15))

    def test_gf16_alpha_relations(self):
        f = GF2m(4)
        assert f.alpha_pow(4) == f.alpha_pow(1) ^ 1  # alpha^4 = alpha + 1
        assert f.alpha_pow(15) == 1

    def test_antilog_log_roundtrip(self):
        f = GF2m(6)
        for x in range(1, 64):
            assert f.exp[f.log[x]] == x

    def test_reducible_poly_rejected(self):
        # x^4 + x^2 + 1 = (x^2+x+1)^2
        with pytest.raises(CodeConstructionError):
            GF2m(4, 0b10101)

    def test_irreducible_but_not_primitive_rejected(self):
        # x^4+x^3+x^2+x+1 is irreducible but x has order 5, not 15
        with pytest.raises(CodeConstructionError):
            GF2m(4, 0b11111)

    def test_mul_agrees_with_pow(self):
        f = GF2m(5)
        a = f.alpha_pow(7)
        assert f.mul(a, a) == f.alpha_pow(14)
        assert f.pow(a, 3) == f.alpha_pow(21)

    def test_inverse(self):
        f = GF2m(4)
        for x in range(1, 16):
            assert f.mul(x, f.inv(x)) == 1

    def test_large_field_tableless(self):
        f = GF2m(35)
        assert f.exp is None
        a = f.alpha_pow(1)
        assert f.element_order(a) == f.order
        # element of order 71 exists since 71 | 2^35 - 1
        b = f.pow(a, f.order // 71)
        assert b != 1
        assert f.element_order(b) == 71

    def test_minimal_polynomial_gf16(self):
        f = GF2m(4)
        assert f.minimal_polynomial(f.alpha_pow(1)) == 0b10011  # x^4+x+1
        assert f.minimal_polynomial(f.alpha_pow(3)) == 0b11111  # x^4+x^3+x^2+x+1

    def test_unsupported_degree(self):
        with pytest.raises(CodeConstructionError):
            GF2m(1)
        with pytest.raises(CodeConstructionError):
            GF2m(36)

    def test_no_default_poly(self):
        with pytest.raises(CodeConstructionError):
            GF2m(20)
