"""Dense polynomials in x over GF(2), GF(4) or GF(8).

A Poly wraps a bit-packed int (see ``_packed``).  Text form is the digit
string of coefficients in ascending powers of x, so ``"13"`` over GF(8) is
1 + (1+t)x and ``"004"`` is t**2 x**2.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from ._packed import NEG_INF, arith
from .gf import GF2, FieldElem, FieldMismatch, FieldSpec


class Poly:
    __slots__ = ("value", "field")

    def __init__(self, value: int = 0, field: FieldSpec = GF2):
        self.value = value
        self.field = field

    # construction -----------------------------------------------------
    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int | FieldElem], field: FieldSpec | None = None) -> Poly:
        coeffs = list(coeffs)
        if field is None:
            field = next((c.spec for c in coeffs if isinstance(c, FieldElem)), GF2)
        digits = []
        for c in coeffs:
            if isinstance(c, FieldElem):
                if c.spec != field:
                    c = c.embed(field)
                digits.append(c.bits)
            else:
                if not 0 <= c < field.size:
                    raise ValueError(f"coefficient {c} out of range for {field!r}")
                digits.append(c)
        return cls(arith(field).from_coeffs(digits), field)

    @classmethod
    def from_digits(cls, text: str, field: FieldSpec = GF2) -> Poly:
        text = text.strip()
        if not text or not text.isdigit():
            raise ValueError(f"invalid digit string {text!r}")
        return cls.from_coeffs([int(ch) for ch in text], field)

    @classmethod
    def x(cls, field: FieldSpec = GF2) -> Poly:
        return cls(1 << arith(field).s, field)

    @classmethod
    def constant(cls, c: int | FieldElem, field: FieldSpec = GF2) -> Poly:
        return cls.from_coeffs([c], field)

    @classmethod
    def monomial(cls, c: int, n: int, field: FieldSpec = GF2) -> Poly:
        return cls(c << (arith(field).s * n), field)

    # inspection -------------------------------------------------------
    @property
    def deg(self):
        """Degree; the zero polynomial has degree -inf."""
        return arith(self.field).deg(self.value)

    @property
    def coeffs(self) -> list[FieldElem]:
        return [FieldElem(c, self.field) for c in arith(self.field).to_coeffs(self.value)]

    def coeff(self, i: int) -> FieldElem:
        return FieldElem(arith(self.field).coeff(self.value, i), self.field)

    @property
    def lc(self) -> FieldElem:
        if not self.value:
            return self.field.zero
        return FieldElem(arith(self.field).lc(self.value), self.field)

    def digits(self) -> str:
        cs = arith(self.field).to_coeffs(self.value)
        return "".join(map(str, cs)) if cs else "0"

    def is_zero(self) -> bool:
        return not self.value

    def __bool__(self):
        return bool(self.value)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.value == other.value and self.field == other.field
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field))

    def __repr__(self):
        return f"Poly({self.digits()!r}, {self.field!r})"

    def __str__(self):
        return self.digits()

    # arithmetic -------------------------------------------------------
    def _other(self, other) -> int:
        if isinstance(other, Poly):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other.value
        if isinstance(other, FieldElem):
            return other.embed(self.field).bits
        if isinstance(other, int) and other in (0, 1):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return Poly(self.value ^ o, self.field)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return Poly(arith(self.field).mul(self.value, o), self.field)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        r, b = Poly(1, self.field), self
        while n:
            if n & 1:
                r = r * b
            b = b.square()
            n >>= 1
        return r

    def __divmod__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        q, r = arith(self.field).divmod(self.value, o)
        return Poly(q, self.field), Poly(r, self.field)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def square(self) -> Poly:
        """Square using the characteristic-2 law: sum c_i^2 x^(2i)."""
        a = arith(self.field)
        sq = [a.mul_table[c][c] for c in range(a.q)]
        out = []
        for c in a.to_coeffs(self.value):
            out.extend((sq[c], 0))
        return Poly(a.from_coeffs(out), self.field)

    def monic(self) -> Poly:
        return Poly(arith(self.field).monic(self.value), self.field)

    def scale(self, c: FieldElem | int) -> Poly:
        c = c.embed(self.field).bits if isinstance(c, FieldElem) else c
        return Poly(arith(self.field).smul(self.value, c), self.field)

    def frobenius(self) -> Poly:
        return Poly(arith(self.field).frobenius(self.value), self.field)

    def compose(self, p: Poly) -> Poly:
        """self(p(x)) by Horner's rule."""
        r = Poly(0, self.field)
        for c in reversed(self.coeffs):
            r = r * p + c
        return r

    def subst_x_plus_1(self) -> Poly:
        return self.compose(Poly.x(self.field) + 1)

    def embed(self, field: FieldSpec) -> Poly:
        if field == self.field:
            return self
        if self.field != GF2:
            raise FieldMismatch(f"cannot embed {self.field!r} into {field!r}")
        return Poly(arith(field).spread_gf2(self.value), field)

    def to_gf2(self) -> Poly:
        """Reinterpret a polynomial whose coefficients all lie in GF(2)."""
        a = arith(self.field)
        if not a.is_gf2(self.value):
            raise ValueError(f"{self.digits()} has coefficients outside GF(2)")
        return Poly.from_coeffs(a.to_coeffs(self.value), GF2)

    def fold(self) -> Poly:
        """Replace every nonzero coefficient by 1, giving a GF(2) polynomial."""
        return Poly(arith(self.field).fold(self.value), GF2)


ZERO = Poly(0, GF2)
ONE = Poly(1, GF2)
X = Poly(2, GF2)


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; gcd(0, 0) raises."""
    if a.field != b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")
    if not a and not b:
        raise ValueError("gcd of zero polynomials")
    return Poly(arith(a.field).gcd(a.value, b.value), a.field)


def content_normalize(m: Sequence[Poly]) -> tuple[Poly, ...]:
    """Divide a tuple of polynomials by their common monic gcd."""
    nonzero = [p for p in m if p]
    if not nonzero:
        raise ValueError("all-zero input")
    g = nonzero[0]
    for p in nonzero[1:]:
        g = gcd(g, p)
    g = g.monic()
    if g.deg == 0:
        return tuple(m)
    return tuple(p // g for p in m)


def p_digits(p: Poly) -> str:
    return p.digits()


def parse_digits(text: str, field: FieldSpec = GF2) -> Poly:
    return Poly.from_digits(text, field)


__all__ = ["NEG_INF", "Poly", "ZERO", "ONE", "X", "gcd", "content_normalize", "p_digits", "parse_digits"]
