"""Bit-packed polynomial kernel over GF(2^k).

The coefficient of x**i lives in bits [s*i, s*i + k) of a Python int, where
s = 2k - 1.  With that spacing a carry-less product of two packed ints never
lets one coefficient's product spill into the next slot, so polynomial
multiplication is a single carry-less multiply followed by a slot-parallel
reduction modulo the field polynomial.  Addition is XOR.
"""
from __future__ import annotations

from .gf import GF2, GF4, GF8, FieldSpec, tables

NEG_INF = float("-inf")


def clmul(a: int, b: int) -> int:
    """Carry-less product of two non-negative ints."""
    if a.bit_count() > b.bit_count():
        a, b = b, a
    r = 0
    while a:
        low = a & -a
        r ^= b * low
        a ^= low
    return r


class Arith:
    """Packed polynomial operations for one coefficient field."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.k = k = spec.k
        self.s = 2 * k - 1
        self.q = spec.size
        self.mul_table, self.inv_table = tables(spec)
        self._nslots = 0
        self._grow(1024)
        if k == 1:
            self.reduce = _identity
            self.mul = clmul
            self.smul = self._smul_gf2
        elif k == 2:
            self.reduce = self._reduce4
        else:
            self.reduce = self._reduce8

    def _grow(self, nslots: int):
        n = max(nslots, 2 * self._nslots)
        s = self.s
        ones = 0
        # built by doubling: ones for n slots
        block, width = 1, 1
        while width < n:
            block |= block << (s * width)
            width *= 2
        ones = block & ((1 << (s * n)) - 1)
        self.ones = ones
        self.low = ones * ((1 << self.k) - 1)
        self._nslots = n
        self._limit_bits = s * n

    def ensure(self, v: int):
        if v.bit_length() > self._limit_bits:
            self._grow(v.bit_length() // self.s + 1)

    def _reduce4(self, v: int) -> int:
        # t^2 = t + 1
        if v.bit_length() > self._limit_bits:
            self.ensure(v)
        h = (v >> 2) & self.ones
        return (v & self.low) ^ h ^ (h << 1)

    def _reduce8(self, v: int) -> int:
        # t^3 = t + 1, t^4 = t^2 + t
        if v.bit_length() > self._limit_bits:
            self.ensure(v)
        ones = self.ones
        h3 = (v >> 3) & ones
        h4 = (v >> 4) & ones
        return (v & self.low) ^ h3 ^ (h3 << 1) ^ (h4 << 1) ^ (h4 << 2)

    def mul(self, a: int, b: int) -> int:
        return self.reduce(clmul(a, b))

    def smul(self, a: int, c: int) -> int:
        """Multiply packed polynomial a by the field constant c."""
        if c == 1:
            return a
        if not c:
            return 0
        r = a if c & 1 else 0
        if c & 2:
            r ^= a << 1
        if c & 4:
            r ^= a << 2
        return self.reduce(r)

    @staticmethod
    def _smul_gf2(a: int, c: int) -> int:
        return a if c else 0

    def square(self, a: int) -> int:
        return self.mul(a, a)

    def deg(self, a: int):
        return (a.bit_length() - 1) // self.s if a else NEG_INF

    def lc(self, a: int) -> int:
        return a >> (self.s * ((a.bit_length() - 1) // self.s))

    def coeff(self, a: int, i: int) -> int:
        return (a >> (self.s * i)) & (self.q - 1)

    def divmod(self, a: int, b: int) -> tuple[int, int]:
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        s = self.s
        db = (b.bit_length() - 1) // s
        if self.k == 1:
            q = 0
            bl = b.bit_length()
            while a.bit_length() >= bl:
                sh = a.bit_length() - bl
                q ^= 1 << sh
                a ^= b << sh
            return q, a
        mt = self.mul_table
        inv = self.inv_table[b >> (s * db)]
        mults = {}
        q = 0
        while a:
            da = (a.bit_length() - 1) // s
            if da < db:
                break
            sh = s * (da - db)
            c = mt[a >> (s * da)][inv]
            q ^= c << sh
            m = mults.get(c)
            if m is None:
                m = mults[c] = self.smul(b, c)
            a ^= m << sh
        return q, a

    def monic(self, a: int) -> int:
        if not a:
            return 0
        return self.smul(a, self.inv_table[self.lc(a)])

    def gcd(self, a: int, b: int) -> int:
        while b:
            a, b = b, self.divmod(a, b)[1]
        return self.monic(a)

    def from_coeffs(self, digits) -> int:
        v = 0
        s = self.s
        for i, d in enumerate(digits):
            v |= int(d) << (s * i)
        return v

    def to_coeffs(self, a: int) -> list[int]:
        if not a:
            return []
        n = (a.bit_length() - 1) // self.s + 1
        m = self.q - 1
        s = self.s
        return [(a >> (s * i)) & m for i in range(n)]

    def frobenius(self, a: int) -> int:
        """Square every coefficient (x itself is untouched)."""
        sq = [self.mul_table[c][c] for c in range(self.q)]
        return self.from_coeffs(sq[c] for c in self.to_coeffs(a))

    def spread_gf2(self, a: int) -> int:
        """Embed a GF(2)-packed int into this field's packing."""
        if self.k == 1:
            return a
        s = self.s
        v = 0
        i = 0
        while a:
            if a & 1:
                v |= 1 << (s * i)
            a >>= 1
            i += 1
        return v

    def is_gf2(self, a: int) -> bool:
        self.ensure(a)
        return not (a & ~self.ones)

    def fold(self, a: int) -> int:
        """Packed GF(2) int with bit i set where coefficient i is nonzero."""
        v = 0
        for i, c in enumerate(self.to_coeffs(a)):
            if c:
                v |= 1 << i
        return v


def _identity(v: int) -> int:
    return v


_ARITH: dict[FieldSpec, Arith] = {}


def arith(spec: FieldSpec) -> Arith:
    a = _ARITH.get(spec)
    if a is None:
        a = _ARITH[spec] = Arith(spec)
    return a


for _f in (GF2, GF4, GF8):
    arith(_f)
