"""Arithmetic in GF(2), GF(4) and GF(8).

Elements are stored as small integers whose bits are the coefficients of
1, t, t**2.  The integer value is also the element's *digit*: GF(8) elements
0, 1, t, 1+t, t**2, 1+t**2, t+t**2, 1+t+t**2 are written 0..7.

GF(4) uses t**2 = t + 1 and GF(8) uses t**3 = t + 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


class FieldMismatch(ValueError):
    """Raised when elements of different fields are combined."""


@dataclass(frozen=True)
class FieldSpec:
    k: int
    modulus: int

    def __post_init__(self):
        if self.k not in (1, 2, 3):
            raise ValueError(f"unsupported extension degree {self.k}")
        if self.modulus.bit_length() != self.k + 1:
            raise ValueError("modulus degree must equal k")

    @property
    def size(self) -> int:
        return 1 << self.k

    @property
    def name(self) -> str:
        return f"gf{self.size}"

    def __repr__(self):
        return f"GF({self.size})"

    def __call__(self, digit: int) -> FieldElem:
        return from_digit(digit, self)

    def elements(self) -> list[FieldElem]:
        return [FieldElem(d, self) for d in range(self.size)]

    @property
    def zero(self) -> FieldElem:
        return FieldElem(0, self)

    @property
    def one(self) -> FieldElem:
        return FieldElem(1, self)

    @property
    def t(self) -> FieldElem:
        """The generator t (equal to 1 in GF(2))."""
        return FieldElem(2 if self.k > 1 else 1, self)


GF2 = FieldSpec(1, 0b11)
GF4 = FieldSpec(2, 0b111)
GF8 = FieldSpec(3, 0b1011)

FIELDS = {"gf2": GF2, "gf4": GF4, "gf8": GF8}


def field_by_name(name: str) -> FieldSpec:
    try:
        return FIELDS[name.lower().replace("(", "").replace(")", "")]
    except KeyError:
        raise ValueError(f"unknown field {name!r}; expected gf2, gf4 or gf8") from None


def raw_mul(a: int, b: int, spec: FieldSpec) -> int:
    """Multiply two raw bit-vectors modulo the field polynomial."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> spec.k:
            a ^= spec.modulus
    return r


@lru_cache(maxsize=None)
def tables(spec: FieldSpec) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    """Multiplication table and inverse table (inverse of 0 is stored as 0)."""
    n = spec.size
    mul = tuple(tuple(raw_mul(a, b, spec) for b in range(n)) for a in range(n))
    inv = [0] * n
    for a in range(1, n):
        for b in range(1, n):
            if mul[a][b] == 1:
                inv[a] = b
    return mul, tuple(inv)


@dataclass(frozen=True)
class FieldElem:
    bits: int
    spec: FieldSpec

    def __post_init__(self):
        if not 0 <= self.bits < self.spec.size:
            raise ValueError(f"{self.bits} is not an element of {self.spec!r}")

    def _check(self, other: FieldElem):
        if not isinstance(other, FieldElem):
            return NotImplemented
        if other.spec != self.spec:
            raise FieldMismatch(f"{self.spec!r} vs {other.spec!r}")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return FieldElem(self.bits ^ other.bits, self.spec)

    __sub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return FieldElem(tables(self.spec)[0][self.bits][other.bits], self.spec)

    def inverse(self) -> FieldElem:
        if not self.bits:
            raise ZeroDivisionError("zero has no inverse")
        return FieldElem(tables(self.spec)[1][self.bits], self.spec)

    def __truediv__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        r, b = self.spec.one, self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def frobenius(self) -> FieldElem:
        """a -> a**2."""
        return self * self

    def embed(self, spec: FieldSpec) -> FieldElem:
        """Embed a GF(2) element into a larger field (identity on bit 0)."""
        if self.spec == spec:
            return self
        if self.spec != GF2:
            raise FieldMismatch(f"cannot embed {self.spec!r} into {spec!r}")
        return FieldElem(self.bits, spec)

    @property
    def digit(self) -> int:
        return self.bits

    def __bool__(self):
        return bool(self.bits)

    def __int__(self):
        return self.bits

    def __repr__(self):
        return str(self.bits)


def from_digit(d: int | str, spec: FieldSpec) -> FieldElem:
    d = int(d)
    if not 0 <= d < spec.size:
        raise ValueError(f"digit {d} out of range for {spec!r}")
    return FieldElem(d, spec)


def to_digit(a: FieldElem) -> int:
    return a.bits
