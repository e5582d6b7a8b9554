"""Conjectured quotient structures for the three representative cubics.

Case A (GF(4) root with leading term t) has a closed recursive description in
terms of nine letters.  Case B (GF(8)) is driven by a bijection between
quadruples and 16-tuples of degree-1 quotients.  Case C has no known
generator, so only statistics and the tabulated first 1000 quotients are
provided.
"""
from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .engine import run_expansion
from .gf import GF2, GF4, GF8
from .laurent import CASE_A, CASE_B, CASE_C, Cubic
from .poly import Poly

FIXTURE_ENV = "CUBICCF_FIXTURES"
FIXTURE_SHA256 = {
    "table1.txt": "713e64ec494048a597dcd712e57dc4613c88031ddd3caa3e0b9de0124f208ece",
    "table2.txt": "2711fa9445f83bee0ff2705002b8d5112a69f6526dbfc47010d10ba4a83c886b",
}


class FixtureError(RuntimeError):
    """A fixture file is missing or does not match its pinned checksum."""


class PatternFalsified(AssertionError):
    """Engine data contradicts a conjectured pattern."""


def fixture_path(name: str) -> Path:
    override = os.environ.get(FIXTURE_ENV)
    if override:
        return Path(override) / name
    return Path(str(resources.files("cubiccf") / "data" / name))


def read_fixture(name: str, verify: bool = True) -> str:
    path = fixture_path(name)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise FixtureError(f"missing fixture {path}") from exc
    want = FIXTURE_SHA256.get(name)
    if verify and want and hashlib.sha256(raw).hexdigest() != want:
        raise FixtureError(f"checksum mismatch for {path}")
    return raw.decode()


# --- Case A ---------------------------------------------------------------

CASE_A_LETTERS = {
    "a": "2",    # t
    "b": "02",   # t x
    "c": "21",   # t + x
    "d": "301",  # (1+t) + x^2
    "e": "01",   # x
    "f": "001",  # x^2
    "g": "32",   # (1+t) + t x
    "h": "003",  # (1+t) x^2
    "i": "203",  # t + (1+t) x^2
}


def letter_poly(ch: str) -> Poly:
    return Poly.from_digits(CASE_A_LETTERS[ch], GF4)


def _alternating(first: str, second: str, length: int) -> str:
    return (first + second) * (length // 2) + (first if length % 2 else "")


def short_length(n: int) -> int:
    return (8 * 4**n - 5) // 3


def long_length(n: int) -> int:
    return (16 * 4**n - 7) // 3


def case_a_strings(kind: str, n: int) -> str:
    """The alternating runs x_n = hbh..hbh, y_n = efe..efe, u_n = fef..fef, v_n = bhb..bhb."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if kind == "x":
        return _alternating("h", "b", short_length(n))
    if kind == "y":
        return _alternating("e", "f", long_length(n))
    if kind == "u":
        return _alternating("f", "e", short_length(n))
    if kind == "v":
        return _alternating("b", "h", long_length(n))
    raise ValueError(f"unknown run kind {kind!r}")


def _rev(s: str) -> str:
    return s[::-1]


@lru_cache(maxsize=None)
def case_a_block(n: int) -> str:
    """Block A_n of the Case A quotient stream."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return "cdefcb"
    if n == 2:
        return "ghg"
    if n == 4:
        return "gibhbig"
    if n % 4 == 1:
        return "eg" + case_a_strings("x", (n - 1) // 4) + "ge"
    if n % 4 == 3:
        return "cd" + case_a_strings("y", (n - 3) // 4) + "dc"
    h = head_block(n)
    if n % 4 == 0:
        return h + "gi" + case_a_strings("v", (n - 8) // 4) + "ig" + _rev(h)
    return h + "bc" + case_a_strings("u", (n - 6) // 4) + "cb" + _rev(h)


@lru_cache(maxsize=None)
def palindrome_block(n: int) -> str:
    """P_n = A_0 ... A_{2n-2} A_{2n-1} A_{2n-2} ... r(A_0), with P_0 = A_3 and P_{-1} = cfc."""
    if n == -1:
        return "cfc"
    if n == 0:
        return case_a_block(3)
    if n < -1:
        raise ValueError("n must be >= -1")
    left = "".join(case_a_block(k) for k in range(2 * n - 1))
    return left + case_a_block(2 * n - 1) + _rev(left)


@lru_cache(maxsize=None)
def head_block(n: int) -> str:
    """The prefix h_n used by the even blocks A_n, n >= 6."""
    if n < 6 or n % 2:
        raise ValueError("h_n is defined for even n >= 6")
    if n == 6:
        return "gibhge"
    prev = head_block(n - 2)
    tail = palindrome_block((n - 10) // 2)
    if n % 4 == 0:
        return prev + "bc" + case_a_strings("u", (n - 8) // 4) + "cb" + tail
    return prev + "gi" + case_a_strings("v", (n - 10) // 4) + "ig" + tail


def case_a_letter_stream(n: int) -> str:
    """First n letters: a, b, then A_0, A_1, ..."""
    if n < 1:
        raise ValueError("n must be >= 1")
    parts = ["ab"]
    size = 2
    k = 0
    while size < n:
        blk = case_a_block(k)
        parts.append(blk)
        size += len(blk)
        k += 1
    return "".join(parts)[:n]


def case_a_generate(n: int) -> list[Poly]:
    table = {ch: letter_poly(ch) for ch in CASE_A_LETTERS}
    return [table[ch] for ch in case_a_letter_stream(n)]


def letters_of(pqs) -> str:
    """Inverse of the letter table; raises PatternFalsified on a foreign quotient."""
    back = {letter_poly(ch): ch for ch in CASE_A_LETTERS}
    out = []
    for k, p in enumerate(pqs):
        try:
            out.append(back[p])
        except KeyError:
            raise PatternFalsified(f"quotient {k} ({p.digits()}) is not a Case A letter") from None
    return "".join(out)


def fold_to_gf2(pqs) -> list[Poly]:
    """Replace every nonzero coefficient of every quotient by 1."""
    return [p.fold() for p in pqs]


def case_a_engine(n: int, **kw):
    return run_expansion(CASE_A, "t", n, GF4, **kw)


# --- Case B ---------------------------------------------------------------

CASE_B_SEED = ("2", "13", "13", "01")
CASE_B_NEXT = ("33", "11", "73", "04", "53", "23", "41", "07", "11", "77", "21", "05")


@dataclass
class CaseBTable:
    """Quadruple -> 16-tuple map, tokens in digit notation."""

    rows: dict[tuple[str, ...], tuple[str, ...]]

    def __len__(self):
        return len(self.rows)

    def __eq__(self, other):
        return isinstance(other, CaseBTable) and self.rows == other.rows

    def is_bijection(self) -> bool:
        return len(set(self.rows.values())) == len(self.rows)

    def lines(self) -> list[str]:
        return [" ".join(q) + "   " + " ".join(s) for q, s in sorted(self.rows.items())]


def load_case_b_table() -> CaseBTable:
    rows = {}
    for line in read_fixture("table1.txt").splitlines():
        toks = line.split()
        if not toks:
            continue
        if len(toks) != 20:
            raise FixtureError(f"table1 row has {len(toks)} tokens")
        quad, big = tuple(toks[:4]), tuple(toks[4:])
        if quad in rows:
            raise FixtureError(f"duplicate quadruple {quad}")
        rows[quad] = big
    return CaseBTable(rows)


def case_b_generate(n: int, table: CaseBTable | None = None) -> list[Poly]:
    """Quotients from the seeds and the bijection: quadruple k (at 4+4k) yields 16-tuple k (at 16+16k)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    table = table or load_case_b_table()
    toks = list(CASE_B_SEED + CASE_B_NEXT)
    k = 0
    while len(toks) < n:
        quad = tuple(toks[4 + 4 * k: 8 + 4 * k])
        try:
            toks.extend(table.rows[quad])
        except KeyError:
            raise PatternFalsified(f"quadruple {quad} at index {4 + 4 * k} is not in the table") from None
        k += 1
    return [Poly.from_digits(d, GF8) for d in toks[:n]]


def case_b_engine(n: int, **kw):
    return run_expansion(CASE_B, "2", n, GF8, **kw)


def derive_case_b_table(digits: list[str]) -> CaseBTable:
    """Pair quadruple k with 16-tuple k across a quotient stream, checking single-valuedness."""
    rows: dict[tuple[str, ...], tuple[str, ...]] = {}
    k = 0
    while 32 + 16 * k <= len(digits):
        quad = tuple(digits[4 + 4 * k: 8 + 4 * k])
        big = tuple(digits[16 + 16 * k: 32 + 16 * k])
        seen = rows.setdefault(quad, big)
        if seen != big:
            raise PatternFalsified(f"quadruple {quad} maps to two different 16-tuples")
        k += 1
    table = CaseBTable(rows)
    if not table.is_bijection():
        raise PatternFalsified("derived quadruple map is not injective")
    return table


def case_b_derive_table(n: int = 10**5) -> CaseBTable:
    return derive_case_b_table(case_b_engine(n, detect=False).digits())


# --- Case C ---------------------------------------------------------------

def load_case_c_table() -> list[str]:
    rows = [line.split() for line in read_fixture("table2.txt").splitlines() if line.strip()]
    if len(rows) != 50 or any(len(r) != 20 for r in rows):
        raise FixtureError("table2 must be 50 rows of 20 tokens")
    return [t for r in rows for t in r]


def case_c_engine(n: int, **kw):
    return run_expansion(CASE_C, "2", n, GF8, **kw)


def case_c_expected_alphabet() -> set[Poly]:
    """All 56 degree-1 polynomials over GF(8) together with their squares."""
    lin = [Poly.from_coeffs([c0, c1], GF8) for c0 in GF8.elements() for c1 in GF8.elements() if c1]
    return set(lin) | {p.square() for p in lin}


def alternating_runs(pqs) -> list[tuple[int, int]]:
    """Maximal runs (start, length) whose degrees alternate between 1 and 2."""
    runs = []
    start = 0
    for k in range(1, len(pqs) + 1):
        ok = k < len(pqs) and {pqs[k].deg, pqs[k - 1].deg} == {1, 2}
        if not ok:
            if k - start >= 2:
                runs.append((start, k - start))
            start = k
    return runs


def palindrome_scan(pqs, min_len: int = 2) -> list[tuple[float, int]]:
    """Maximal palindromic runs as (center, length), center being a (half-)index.

    Manacher's algorithm over exact polynomial equality.
    """
    seq = list(pqs)
    n = len(seq)
    if n == 0:
        return []
    marks = [None]
    for p in seq:
        marks += [p, None]
    m = len(marks)
    rad = [0] * m
    center = right = 0
    for k in range(m):
        if k < right:
            rad[k] = min(right - k, rad[2 * center - k])
        while k - rad[k] - 1 >= 0 and k + rad[k] + 1 < m and marks[k - rad[k] - 1] == marks[k + rad[k] + 1]:
            rad[k] += 1
        if k + rad[k] > right:
            center, right = k, k + rad[k]
    out = []
    for k in range(m):
        length = rad[k]
        if length >= min_len and length > 0:
            out.append(((k - 1) / 2, length))
    return out


@dataclass
class CaseCStats:
    n: int
    alphabet: set
    expected_alphabet: set
    longest_alternating: int
    longest_palindrome: int
    pair_growth: list
    pair_count: int

    @property
    def alphabet_matches(self) -> bool:
        return self.alphabet == self.expected_alphabet


def case_c_stats(n: int = 10**4, rep=None) -> CaseCStats:
    if n < 1000:
        raise ValueError("n must be >= 1000")
    rep = rep or case_c_engine(n, detect=False)
    pqs = rep.pqs[:n]
    runs = alternating_runs(pqs)
    pals = palindrome_scan(pqs, 2)
    return CaseCStats(
        n=n,
        alphabet=set(pqs[1:]),
        expected_alphabet=case_c_expected_alphabet(),
        longest_alternating=max((r[1] for r in runs), default=0),
        longest_palindrome=max((p[1] for p in pals), default=0),
        pair_growth=list(rep.pairs.growth),
        pair_count=rep.pair_count,
    )
