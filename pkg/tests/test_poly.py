import pytest
import sympy
from hypothesis import given, settings, strategies as st

from cubiccf.gf import GF2, GF4, GF8, FieldMismatch
from cubiccf.poly import Poly, content_normalize, gcd, parse_digits
from oracles import digits_to_list, list_to_digits, padd, pdivmod, pmul


def polys(spec, max_len=12):
    return st.lists(st.integers(0, spec.size - 1), max_size=max_len).map(
        lambda cs: Poly.from_coeffs(cs, spec))


def as_list(p):
    return digits_to_list(p.digits())


@pytest.mark.parametrize("spec", [GF2, GF4, GF8])
def test_ring_ops_match_list_oracle(spec):
    @settings(max_examples=150)
    @given(polys(spec), polys(spec))
    def check(a, b):
        k = spec.k
        assert as_list(a + b) == padd(as_list(a), as_list(b))
        assert as_list(a * b) == pmul(as_list(a), as_list(b), k)
        if b:
            q, r = divmod(a, b)
            oq, orr = pdivmod(as_list(a), as_list(b), k)
            assert as_list(q) == oq and as_list(r) == orr
            assert q * b + r == a
            assert r.deg < b.deg

    check()


@given(st.integers(0, 2**40), st.integers(1, 2**40))
def test_gf2_arithmetic_matches_sympy(a, b):
    x = sympy.Symbol("x")

    def sp(v):
        return sympy.Poly([int(ch) for ch in reversed(bin(v)[2:])][::-1], x, modulus=2)

    pa, pb = Poly(a, GF2), Poly(b, GF2)

    def back(p):
        cs = [int(c) % 2 for c in p.all_coeffs()]
        return Poly.from_coeffs(list(reversed(cs)), GF2)

    assert back(sp(a) * sp(b)) == pa * pb
    q, r = sympy.div(sp(a), sp(b))
    assert (back(q), back(r)) == divmod(pa, pb)
    g = sympy.gcd(sp(a), sp(b))
    assert back(g) == gcd(pa, pb)


@pytest.mark.parametrize("spec", [GF2, GF4, GF8])
def test_squaring_law(spec):
    @given(polys(spec, 20))
    def check(a):
        assert a.square() == a * a
        assert (a + Poly.x(spec)).square() == a.square() + Poly.x(spec).square()

    check()


@pytest.mark.parametrize("spec", [GF4, GF8])
def test_frobenius_is_a_ring_map(spec):
    @given(polys(spec), polys(spec))
    def check(a, b):
        assert (a * b).frobenius() == a.frobenius() * b.frobenius()
        assert (a + b).frobenius() == a.frobenius() + b.frobenius()

    check()


def test_gcd_is_monic_and_divides():
    a = Poly.from_digits("3121", GF4) * Poly.from_digits("21", GF4)
    b = Poly.from_digits("21", GF4) * Poly.from_digits("011", GF4)
    g = gcd(a, b)
    assert g.lc == GF4.one
    assert (a % g).is_zero() and (b % g).is_zero()
    assert g == Poly.from_digits("21", GF4).monic()
    with pytest.raises(ValueError):
        gcd(Poly(0, GF4), Poly(0, GF4))


def test_digits_notation():
    p = Poly.from_digits("13", GF8)
    assert p.coeff(0) == GF8.one and p.coeff(1) == GF8(3)
    assert Poly.from_digits("004", GF8) == Poly.monomial(4, 2, GF8)
    assert Poly(0, GF4).digits() == "0"
    assert Poly(0, GF4).deg == float("-inf")
    assert parse_digits("101") == Poly(0b101, GF2)
    assert list_to_digits(as_list(Poly.from_digits("7320", GF8))) == "732"


def test_substitution_and_folding():
    x = Poly.x(GF4)
    p = Poly.from_digits("203", GF4)          # t + (1+t) x^2
    assert p.subst_x_plus_1() == p.compose(x + 1)
    assert p.subst_x_plus_1().subst_x_plus_1() == p
    assert p.fold() == Poly.from_digits("101", GF2)
    assert Poly.from_digits("301", GF4).fold() == Poly.from_digits("101")


def test_field_mismatch_is_an_error():
    with pytest.raises(FieldMismatch):
        Poly.from_digits("12", GF4) + Poly.from_digits("12", GF8)
    with pytest.raises(ValueError):
        Poly.from_digits("14", GF4)


def test_content_normalize():
    t = Poly.constant(2, GF4)
    x = Poly.x(GF4)
    g = x + 1
    m = (t * x * g, x * x * g, t * g, Poly(0, GF4))
    norm = content_normalize(m)
    assert norm == (t * x, x * x, t, Poly(0, GF4))
    # scalar units are left alone: only a monic common factor is removed
    assert content_normalize((t * x, t)) == (t * x, t)
