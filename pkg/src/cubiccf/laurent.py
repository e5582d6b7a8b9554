"""Truncated Laurent series in 1/x and cubic equations.

A series is stored packed: ``value`` holds the coefficients at degrees
``floor``, ``floor + 1``, ...  For an inexact series every coefficient at a
degree below ``floor`` is unknown; an exact series is a Laurent polynomial.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from ._packed import arith
from .gf import GF2, FieldElem, FieldMismatch, FieldSpec
from .poly import Poly

DEFAULT_PRECISION = 512


class PrecisionError(ArithmeticError):
    """A result would carry no known coefficient."""


class LaurentSeries:
    __slots__ = ("value", "floor", "field", "exact")

    def __init__(self, value: int, floor: int, field: FieldSpec = GF2, exact: bool = False):
        self.value = value
        self.floor = floor
        self.field = field
        self.exact = exact
        if exact and value:
            self._strip()

    def _strip(self):
        s = arith(self.field).s
        v = self.value
        low = (v & -v).bit_length() - 1
        n = low // s
        if n:
            self.value = v >> (s * n)
            self.floor += n

    # construction -----------------------------------------------------
    @classmethod
    def from_coeffs(cls, lead_deg: int, coeffs: Sequence[int | FieldElem], field: FieldSpec = GF2,
                    precision: int | None = None) -> LaurentSeries:
        """coeffs are listed from degree lead_deg downward; precision=None means exact."""
        digits = [c.embed(field).bits if isinstance(c, FieldElem) else int(c) for c in coeffs]
        if precision is None:
            n = len(digits)
        else:
            n = precision
            digits = (digits + [0] * n)[:n]
        floor = lead_deg - n + 1
        v = arith(field).from_coeffs(reversed(digits))
        return cls(v, floor, field, exact=precision is None)

    @classmethod
    def from_poly(cls, p: Poly) -> LaurentSeries:
        return cls(p.value, 0, p.field, exact=True)

    @classmethod
    def monomial(cls, c: int, e: int, field: FieldSpec = GF2) -> LaurentSeries:
        return cls(c, e, field, exact=True)

    # inspection -------------------------------------------------------
    @property
    def lead_deg(self):
        if not self.value:
            return None
        return self.floor + (self.value.bit_length() - 1) // arith(self.field).s

    @property
    def deg(self):
        """Degree of the leading term; -inf for an exact zero."""
        if not self.value:
            return -math.inf if self.exact else None
        return self.lead_deg

    @property
    def precision(self):
        if self.exact:
            return math.inf
        if not self.value:
            return 0
        return self.lead_deg - self.floor + 1

    @property
    def coeffs(self) -> list[FieldElem]:
        """Known coefficients from lead_deg downward."""
        a = arith(self.field)
        if not self.value:
            return []
        cs = a.to_coeffs(self.value)
        return [FieldElem(c, self.field) for c in reversed(cs)]

    def coefficient(self, e: int) -> FieldElem:
        if e < self.floor:
            if self.exact:
                return self.field.zero
            raise PrecisionError(f"coefficient at degree {e} is beyond the known precision")
        return FieldElem(arith(self.field).coeff(self.value, e - self.floor), self.field)

    def is_zero(self) -> bool:
        return not self.value

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        if self.field != other.field or self.exact != other.exact:
            return False
        if self.exact:
            return self.value == other.value and (not self.value or self.floor == other.floor)
        return self.floor == other.floor and self.value == other.value

    def __hash__(self):
        return hash((self.value, self.floor, self.field, self.exact))

    def agrees_with(self, other: LaurentSeries) -> bool:
        """True when the two series agree on every coefficient both know."""
        fl = max(self.floor if not self.exact else -math.inf, other.floor if not other.exact else -math.inf)
        if fl == -math.inf:
            return self == other
        return _truncate(self, fl).value == _truncate(other, fl).value

    def __repr__(self):
        return f"LaurentSeries({self.text(8)}, {self.field!r})"

    def text(self, max_terms: int | None = None) -> str:
        """Debug form ``2@0 + 1@-1 + ...`` (digit@degree, descending)."""
        a = arith(self.field)
        terms = []
        for i, c in reversed(list(enumerate(a.to_coeffs(self.value)))):
            if c:
                terms.append(f"{c}@{self.floor + i}")
                if max_terms is not None and len(terms) >= max_terms:
                    terms.append("…")
                    break
        body = " + ".join(terms) if terms else "0"
        if not self.exact and (max_terms is None or len(terms) <= max_terms):
            body += f" + O(x^{self.floor - 1})"
        return body

    # arithmetic -------------------------------------------------------
    def _coerce(self, other) -> LaurentSeries:
        if isinstance(other, LaurentSeries):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other
        if isinstance(other, Poly):
            return LaurentSeries.from_poly(other.embed(self.field))
        if isinstance(other, FieldElem):
            return LaurentSeries(other.embed(self.field).bits, 0, self.field, exact=True)
        if isinstance(other, int) and other in (0, 1):
            return LaurentSeries(other, 0, self.field, exact=True)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        s = arith(self.field).s
        base = min(self.floor, o.floor)
        v = (self.value << (s * (self.floor - base))) ^ (o.value << (s * (o.floor - base)))
        if self.exact and o.exact:
            return LaurentSeries(v, base, self.field, exact=True)
        known = max(x.floor for x in (self, o) if not x.exact)
        return LaurentSeries(v >> (s * (known - base)), known, self.field)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def _lead_bound(self):
        """Largest degree the true series can have."""
        if self.value:
            return self.lead_deg
        return self.floor - 1

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a = arith(self.field)
        v = a.mul(self.value, o.value)
        floor = self.floor + o.floor
        if self.exact and o.exact:
            return LaurentSeries(v, floor, self.field, exact=True)
        bounds = []
        if not self.exact:
            bounds.append(self.floor + o._lead_bound() if o.value or not o.exact else -math.inf)
        if not o.exact:
            bounds.append(o.floor + self._lead_bound() if self.value or not self.exact else -math.inf)
        known = max(bounds)
        if known == -math.inf:
            return LaurentSeries(0, 0, self.field, exact=True)
        r = _truncate(LaurentSeries(v, floor, self.field), known)
        if not r.value:
            raise PrecisionError("product has no known coefficient")
        return r

    __rmul__ = __mul__

    def square(self) -> LaurentSeries:
        return self * self

    def reciprocal(self, precision: int | None = None) -> LaurentSeries:
        """1/self; an inexact input keeps its own coefficient count."""
        if not self.value:
            raise ZeroDivisionError("reciprocal of an (apparently) zero series")
        a = arith(self.field)
        s = a.s
        lead = self.lead_deg
        d = lead - self.floor
        if self.exact and d == 0:
            c = a.inv_table[self.value]
            return LaurentSeries(c, -lead, self.field, exact=True)
        n = precision if precision is not None else (self.precision if not self.exact else DEFAULT_PRECISION)
        if not self.exact and precision is not None:
            n = min(n, self.precision)
        # 1/A = x^(-(d+n-1)) * (x^(d+n-1) div A) + O(x^(-d-n)); then shift by x^(-floor)
        q, _ = a.divmod(1 << (s * (d + n - 1)), self.value)
        return LaurentSeries(q, -(d + n - 1) - self.floor, self.field)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.reciprocal()

    def integral_part(self) -> Poly:
        """Sum of the terms of non-negative degree."""
        if self.value and self.lead_deg < 0:
            return Poly(0, self.field)
        if self.floor > 0 and not self.exact:
            raise PrecisionError("precision does not reach degree 0")
        s = arith(self.field).s
        if self.floor >= 0:
            return Poly(self.value << (s * self.floor), self.field)
        return Poly(self.value >> (s * -self.floor), self.field)

    def frobenius(self) -> LaurentSeries:
        a = arith(self.field)
        return LaurentSeries(a.frobenius(self.value), self.floor, self.field, self.exact)

    def truncate(self, floor: int) -> LaurentSeries:
        return _truncate(self, floor)

    def embed(self, field: FieldSpec) -> LaurentSeries:
        if field == self.field:
            return self
        if self.field != GF2:
            raise FieldMismatch(f"cannot embed {self.field!r} into {field!r}")
        return LaurentSeries(arith(field).spread_gf2(self.value), self.floor, field, self.exact)

    def to_gf2(self) -> LaurentSeries:
        """Reinterpret a series whose coefficients all lie in GF(2)."""
        a = arith(self.field)
        if not a.is_gf2(self.value):
            raise ValueError("series has coefficients outside GF(2)")
        v = 0
        for i, c in enumerate(a.to_coeffs(self.value)):
            if c:
                v |= 1 << i
        return LaurentSeries(v, self.floor, GF2, self.exact)

    def has_gf2_coeffs(self) -> bool:
        return arith(self.field).is_gf2(self.value)

    def subst_x_plus_1(self) -> LaurentSeries:
        """u(x+1), written again as a series in 1/x."""
        a = arith(self.field)
        s = a.s
        poly_part = self.integral_part() if (self.floor <= 0 or self.exact) else None
        if poly_part is None:
            raise PrecisionError("precision does not reach degree 0")
        head = LaurentSeries.from_poly(poly_part.subst_x_plus_1())
        if self.floor >= 0:
            return head if self.exact else _truncate(head, self.floor)
        # fractional part F(z) = sum_{k>=1} c_{-k} z^k with z = 1/x; u(x+1) uses w = z/(1+z)
        m = -self.floor
        frac = self.value & ((1 << (s * m)) - 1)
        coeffs = a.to_coeffs(frac)  # coeffs[i] is the coefficient at degree floor + i = -(m - i)
        coeffs += [0] * (m - len(coeffs))
        # Horner in powers of z; acc is a packed power series in z with slot i = z^i, truncated at z^m
        acc = 0
        for kk in range(m, 0, -1):
            acc ^= coeffs[m - kk]
            acc = _div_one_plus_z(acc << s, s, m + 1)
        cs = a.to_coeffs(acc)
        cs += [0] * (m + 1 - len(cs))
        rev = 0
        for i in range(m + 1):
            rev |= cs[m - i] << (s * i)
        frac_series = LaurentSeries(rev, -m, self.field)
        return _truncate(head + frac_series, self.floor)


def _div_one_plus_z(v: int, s: int, nslots: int) -> int:
    """Power series v(z) / (1 + z) modulo z^nslots: prefix XOR over slots."""
    mask = (1 << (s * nslots)) - 1
    sh = s
    while sh < s * nslots:
        v = (v ^ (v << sh)) & mask
        sh <<= 1
    return v


def _truncate(u: LaurentSeries, floor) -> LaurentSeries:
    """Forget every coefficient below ``floor``."""
    if floor == -math.inf or floor <= u.floor:
        return u
    s = arith(u.field).s
    return LaurentSeries(u.value >> (s * (floor - u.floor)), floor, u.field)


@dataclass(frozen=True)
class Cubic:
    """a0 + a1*y + a2*y**2 + a3*y**3 = 0 with polynomial coefficients.

    a3 = 0 is representable (the survey enumerates such tuples) but every
    operation that needs a genuine cubic rejects it.
    """

    a0: Poly
    a1: Poly
    a2: Poly
    a3: Poly

    def __post_init__(self):
        fs = {p.field for p in self.coeffs}
        if len(fs) != 1:
            raise FieldMismatch("coefficients live in different fields")

    @property
    def coeffs(self) -> tuple[Poly, Poly, Poly, Poly]:
        return (self.a0, self.a1, self.a2, self.a3)

    @property
    def field(self) -> FieldSpec:
        return self.a0.field

    @property
    def is_cubic(self) -> bool:
        return bool(self.a3)

    def require_cubic(self):
        if not self.a3:
            raise ValueError(f"{self} has a3 = 0 and is not a cubic")

    @property
    def max_deg(self) -> int:
        return max(max(p.deg, 0) for p in self.coeffs)

    @classmethod
    def from_digits(cls, a0: str, a1: str, a2: str, a3: str, field: FieldSpec = GF2) -> Cubic:
        return cls(*(Poly.from_digits(d, field) for d in (a0, a1, a2, a3)))

    @classmethod
    def parse(cls, text: str, field: FieldSpec = GF2) -> Cubic:
        """Parse ``"01,1,0,01"`` (a0..a3 digit strings) or a case name A/B/C."""
        named = NAMED_CUBICS.get(text.strip().upper())
        if named is not None:
            return named if field == GF2 else named.over(field)
        parts = [p for p in text.replace(";", ",").replace(" ", ",").split(",") if p]
        if len(parts) != 4:
            raise ValueError(f"expected four digit strings a0,a1,a2,a3, got {text!r}")
        return cls.from_digits(*parts, field=field)

    def digits(self) -> str:
        return ",".join(p.digits() for p in self.coeffs)

    @property
    def key(self) -> tuple[int, int, int, int]:
        """Canonical integer encoding used for ordering and orbit representatives."""
        return tuple(p.value for p in self.coeffs)

    def over(self, field: FieldSpec) -> Cubic:
        return Cubic(*(p.embed(field) for p in self.coeffs))

    def evaluate(self, u: LaurentSeries) -> LaurentSeries:
        """a0 + a1 u + a2 u^2 + a3 u^3 by Horner's rule."""
        f = u.field
        c = [LaurentSeries.from_poly(p.embed(f)) for p in self.coeffs]
        return ((c[3] * u + c[2]) * u + c[1]) * u + c[0]

    def flip(self) -> Cubic:
        """y -> 1/y."""
        return Cubic(self.a3, self.a2, self.a1, self.a0)

    def shift_y(self) -> Cubic:
        """y -> y + 1."""
        a0, a1, a2, a3 = self.coeffs
        return Cubic(a0 + a1 + a2 + a3, a1 + a3, a2 + a3, a3)

    def shift_x(self) -> Cubic:
        """x -> x + 1."""
        return Cubic(*(p.subst_x_plus_1() for p in self.coeffs))

    def __str__(self):
        return self.digits()


CASE_A = Cubic.from_digits("01", "1", "0", "01")    # x + y + x y^3
CASE_B = Cubic.from_digits("01", "01", "0", "11")   # x + x y + (1+x) y^3
CASE_C = Cubic.from_digits("01", "11", "0", "01")   # x + (1+x) y + x y^3
THREE_GF2_ROOTS = Cubic.from_digits("1", "001", "101", "01")  # 1 + x^2 y + (1+x^2) y^2 + x y^3

NAMED_CUBICS = {"A": CASE_A, "B": CASE_B, "C": CASE_C, "D": THREE_GF2_ROOTS}
