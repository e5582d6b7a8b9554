"""Laurent-series roots of cubics and the classical continued fraction.

Roots are found by Newton-polygon branch enumeration: each step reads the
polygon of g(y) = f(approx + y), picks an edge whose slope is an integer
below the previous term's degree, solves the edge polynomial for the next
coefficient and Taylor-shifts g.  Once a branch is isolated (its edge root is
simple) every further term is -b0/b1 at degree deg(b0) - deg(b1).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from ._packed import arith
from .gf import GF2, GF4, GF8, FieldSpec
from .laurent import DEFAULT_PRECISION, Cubic, LaurentSeries, PrecisionError
from .poly import Poly


class SeriesExhausted(ArithmeticError):
    """The truncated series looks rational: its expansion ended inside the certified range."""


class _NeedPrecision(Exception):
    pass


# -- Newton polygon ----------------------------------------------------------

def _edge_roots(lcs: dict[int, int], a) -> list[tuple[int, int]]:
    """Nonzero roots c of sum lcs[k] c^k with their multiplicities."""
    mt = a.mul_table
    deg = max(lcs)
    poly = [lcs.get(k, 0) for k in range(deg + 1)]
    out = []
    for c in range(1, a.q):
        mult = 0
        p = poly
        while len(p) > 1:
            # synthetic division by (z + c)
            quo = [0] * (len(p) - 1)
            acc = 0
            for k in range(len(p) - 1, 0, -1):
                acc = mt[acc][c] ^ p[k] if k != len(p) - 1 else p[k]
                quo[k - 1] = acc
            rem = mt[acc][c] ^ p[0]
            if rem:
                break
            mult += 1
            p = quo
        if mult:
            out.append((c, mult))
    return out


@dataclass
class _Branch:
    b: list[int]
    base: int               # degree of slot 0 of every b[i]
    exact: bool             # no coefficient has been dropped yet
    terms: list[tuple[int, int]]
    e_prev: float
    mult: int
    target: int | None = None
    b3_multiples: tuple | None = None


def _degs(br: _Branch, s: int):
    out = []
    for v in br.b:
        out.append(br.base + (v.bit_length() - 1) // s if v else None)
    return out


def _mono(v: int, c: int, e: int, a) -> int:
    v = a.smul(v, c)
    sh = a.s * e
    return v << sh if sh >= 0 else v >> -sh


def _shift(v: int, sh: int) -> int:
    return v << sh if sh >= 0 else v >> -sh


def _apply(br: _Branch, c: int, v: int, a):
    b0, b1, b2, b3 = br.b
    mt = a.mul_table
    c2 = mt[c][c]
    c3 = mt[c2][c]
    # b3 never changes between window resizes, so its scalar multiples are cached
    cache = br.b3_multiples
    if cache is None or cache[0] is not b3:
        cache = br.b3_multiples = (b3, [a.smul(b3, k) for k in range(a.q)])
    m3 = cache[1]
    s = a.s
    nb0 = b0 ^ _mono(b1, c, v, a) ^ _mono(b2, c2, 2 * v, a) ^ _shift(m3[c3], s * 3 * v)
    nb1 = b1 ^ _shift(m3[c2], s * 2 * v)
    nb2 = b2 ^ _shift(m3[c], s * v)
    br.b = [nb0, nb1, nb2, b3]
    if v < 0:
        br.exact = False
    br.terms.append((v, c))
    br.e_prev = v


def _start_target(br: _Branch, v: int, precision: int, margin: int, a):
    """Fix the branch's precision window once its leading degree is known."""
    br.target = v - precision + 1
    low = min(br.target - margin, br.base)
    sh = a.s * (br.base - low)
    br.b = [x << sh for x in br.b]
    br.base = low


def _candidates(br: _Branch, a):
    """Integer-slope edges with slope below e_prev -> {slope: edge indices}."""
    d = _degs(br, a.s)
    if not br.exact:
        for k in range(br.mult + 1):
            if d[k] is None:
                raise _NeedPrecision
    pts = [(i, di) for i, di in enumerate(d) if di is not None]
    cands = {}
    for (i, di), (j, dj) in itertools.combinations(pts, 2):
        num, den = di - dj, j - i
        if num % den:
            continue
        v = num // den
        if v >= br.e_prev or v in cands:
            continue
        m = di + i * v
        if any(dk + k * v > m for k, dk in pts):
            continue
        cands[v] = [k for k, dk in pts if dk + k * v == m]
    return cands, d


def _refine_simple(br: _Branch, a) -> bool:
    """Advance an isolated branch to its target; returns True for an exact root."""
    s = a.s
    inv = a.inv_table
    mt = a.mul_table
    target = br.target
    while True:
        b0, b1 = br.b[0], br.b[1]
        if not b0:
            if br.exact:
                return True
            if not b1:
                raise _NeedPrecision
            d1 = br.base + (b1.bit_length() - 1) // s
            if br.base - 1 - d1 < target:
                return False
            raise _NeedPrecision
        if not b1:
            raise _NeedPrecision
        d0 = br.base + (b0.bit_length() - 1) // s
        d1 = br.base + (b1.bit_length() - 1) // s
        v = d0 - d1
        if v < target:
            return False
        if v >= br.e_prev:
            raise _NeedPrecision
        c = mt[b0 >> (s * (d0 - br.base))][inv[b1 >> (s * (d1 - br.base))]]
        _apply(br, c, v, a)


def _branch_roots(coeffs: list[int], a, precision: int, margin: int):
    root_branch = _Branch(b=list(coeffs), base=0, exact=True, terms=[], e_prev=math.inf, mult=3)
    done = []
    stack = [root_branch]
    while stack:
        br = stack.pop()
        if br.mult == 1 and br.target is not None:
            exact = _refine_simple(br, a)
            done.append((br, exact))
            continue
        if br.exact and br.b[0] == 0:
            # approx itself is an exact root; remaining roots come from g(y)/y
            done.append((_Branch(list(br.b), br.base, True, list(br.terms), br.e_prev, 1, br.target), True))
            br.mult -= 1
            br.b = [br.b[1], br.b[2], br.b[3], 0]
            if br.mult == 0:
                continue
            # roots of the quotient are the remaining cluster members; shift back after
            sub = _solve_deflated(br, a, precision, margin)
            done.extend(sub)
            continue
        cands, _ = _candidates(br, a)
        spawned = 0
        for v, edge in sorted(cands.items(), reverse=True):
            if br.target is not None and v < br.target:
                continue
            lcs = {k: a.lc(br.b[k]) for k in edge}
            for c, mult in _edge_roots(lcs, a):
                child = _Branch(list(br.b), br.base, br.exact, list(br.terms), br.e_prev, mult, br.target)
                if child.target is None:
                    _start_target(child, v, precision, margin, a)
                _apply(child, c, v, a)
                stack.append(child)
                spawned += mult
        if br.target is not None:
            below = [v for v in cands if v < br.target]
            if below:
                raise _NeedPrecision
    return done


def _solve_deflated(br: _Branch, a, precision: int, margin: int):
    """Roots of a cluster after removing an exact root y = 0 (reducible cubics only)."""
    b = br.b
    # b now holds the coefficients of a quadratic (b[3] == 0); reuse the general step
    sub = _Branch(list(b), br.base, br.exact, list(br.terms), br.e_prev, br.mult, br.target)
    out = []
    stack = [sub]
    while stack:
        cur = stack.pop()
        if cur.mult == 1 and cur.target is not None:
            out.append((cur, _refine_simple(cur, a)))
            continue
        cands, _ = _candidates(cur, a)
        for v, edge in sorted(cands.items(), reverse=True):
            if cur.target is not None and v < cur.target:
                continue
            lcs = {k: a.lc(cur.b[k]) for k in edge}
            for c, mult in _edge_roots(lcs, a):
                child = _Branch(list(cur.b), cur.base, cur.exact, list(cur.terms), cur.e_prev, mult, cur.target)
                if child.target is None:
                    _start_target(child, v, precision, margin, a)
                _apply(child, c, v, a)
                stack.append(child)
    return out


def _to_series(br: _Branch, exact: bool, field: FieldSpec, precision: int) -> LaurentSeries:
    a = arith(field)
    if not br.terms:
        return LaurentSeries(0, 0, field, exact=True)
    target = br.target
    v = 0
    for e, c in br.terms:
        if e >= target:
            v |= c << (a.s * (e - target))
    return LaurentSeries(v, target, field, exact=exact)


def _root_key(u: LaurentSeries):
    if not u.value:
        return (math.inf, ())
    return (-u.lead_deg, tuple(c.bits for c in u.coeffs))


def newton_polygon_roots(cubic: Cubic, field: FieldSpec, precision: int = DEFAULT_PRECISION) -> list[LaurentSeries]:
    """Every Laurent-series root of ``cubic`` with coefficients in ``field``.

    Roots are returned to ``precision`` known coefficients, ordered by leading
    degree (descending) and then by coefficient digits read from the top.
    Branches that need fractional exponents are dropped.
    """
    if precision < 1:
        raise ValueError("precision must be positive")
    cubic.require_cubic()
    a = arith(field)
    coeffs = [p.embed(field).value for p in cubic.coeffs]
    margin = 32 + 8 * cubic.max_deg
    for _ in range(8):
        try:
            found = _branch_roots(coeffs, a, precision, margin)
        except _NeedPrecision:
            margin *= 2
            continue
        roots = [_to_series(br, exact, field, precision) for br, exact in found]
        return sorted(roots, key=_root_key)
    raise PrecisionError("could not separate the roots; working precision exhausted")


# -- classical continued fraction -------------------------------------------

def classical_cf(u: LaurentSeries, max_terms: int, guard: int = 1) -> tuple[list[Poly], int]:
    """Partial quotients of ``u`` and how many of them are certified.

    The truncated series is the rational function A / x^M, so its expansion is
    Euclid's algorithm.  Quotient p_n is certified while
    2 deg(b_n) + deg(p_{n+1}) < -floor + 1 - guard, which keeps the
    truncation error below the accuracy of the n-th convergent.
    """
    a = arith(u.field)
    s = a.s
    field = u.field
    if u.floor > 0:
        if u.exact:
            return [Poly(u.value << (s * u.floor), field)], 1
        raise PrecisionError("precision does not reach degree 0")
    m = -u.floor
    r0, r1 = u.value, 1 << (s * m)
    qs: list[int] = []
    while r1 and len(qs) <= max_terms:
        q, r = a.divmod(r0, r1)
        qs.append(q)
        r0, r1 = r1, r
    terminated = not r1
    pqs = [Poly(q, field) for q in qs]
    if u.exact:
        return pqs[:max_terms], min(len(pqs), max_terms)
    bound = m + 1 - guard
    certified = 0
    degb = 0
    for n in range(len(qs) - 1):
        if n > 0:
            degb += a.deg(qs[n])
        if 2 * degb + a.deg(qs[n + 1]) < bound:
            certified = n + 1
        else:
            break
    if terminated and certified == len(qs) - 1:
        last_degb = sum(a.deg(q) for q in qs[1:])
        if 2 * last_degb + 1 < bound:
            err = SeriesExhausted("expansion terminated inside the certified range")
            err.pqs, err.certified = pqs[:max_terms], min(len(qs) - 1, max_terms)
            raise err
    return pqs[:max_terms], min(certified, max_terms)


@dataclass(frozen=True)
class Convergent:
    a: Poly
    b: Poly
    accuracy: int | None


def convergents(pqs: Sequence[Poly]) -> list[Convergent]:
    """c_n = a_n / b_n by the three-term recurrence."""
    if not pqs:
        raise ValueError("need at least one partial quotient")
    field = pqs[0].field
    one, zero = Poly(1, field), Poly(0, field)
    a_prev, a_cur = one, pqs[0]
    b_prev, b_cur = zero, one
    out = []
    for n, p in enumerate(pqs):
        if n > 0:
            a_prev, a_cur = a_cur, p * a_cur + a_prev
            b_prev, b_cur = b_cur, p * b_cur + b_prev
        acc = pqs[n + 1].deg if n + 1 < len(pqs) else None
        out.append(Convergent(a_cur, b_cur, acc))
    return out


# -- irreducibility ---------------------------------------------------------

def _monic_divisors(p: Poly) -> list[Poly]:
    field = p.field
    a = arith(field)
    d = p.deg
    out = []
    for n in range(d + 1):
        for tail in itertools.product(range(a.q), repeat=n):
            cand = Poly(a.from_coeffs(list(tail) + [1]), field)
            if not (p % cand):
                out.append(cand)
    return out


def has_rational_root(cubic: Cubic, field: FieldSpec) -> bool:
    """True when the cubic has a root p/q in field(x)."""
    c = cubic.over(field)
    a0, a1, a2, a3 = c.coeffs
    if not a0:
        return True
    scalars = [Poly(k, field) for k in range(1, field.size)]
    dens = _monic_divisors(a3)
    nums = [d * k for d in _monic_divisors(a0) for k in scalars]
    for q in dens:
        q2 = q * q
        q3 = q2 * q
        for p in nums:
            p2 = p * p
            if not (a0 * q3 + a1 * p * q2 + a2 * p2 * q + a3 * p2 * p):
                return True
    return False


def irreducible_over_closure(cubic: Cubic) -> bool:
    """No root in GF(2^m)(x), m <= 3; enough because Frobenius permutes at most three roots."""
    if cubic.field != GF2:
        raise ValueError("irreducibility over the closure is defined here for GF(2) cubics")
    if not cubic.is_cubic:
        return False
    return not (has_rational_root(cubic, GF4) or has_rational_root(cubic, GF8))
