"""Linear-time continued-fraction expansion of cubic Laurent series in characteristic 2.

The engine keeps a matrix (Q, R; S, T) with u_i = (Q u_j^2 + R) / (S u_j^2 + T).
Reading a known quotient p_j is a column step, emitting p_i = Q div S is a row
step.  Both steps have determinant 1 in characteristic 2, so QT + RS never
changes and its degree is the height of u.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterator

from ._packed import NEG_INF, Arith, arith
from .gf import GF2, FieldSpec
from .laurent import DEFAULT_PRECISION, Cubic, LaurentSeries
from .poly import Poly, content_normalize
from .roots import SeriesExhausted, classical_cf, newton_polygon_roots

log = logging.getLogger(__name__)

PROBABLE_THRESHOLD = 10**6
BOOTSTRAP_LADDER = (8, 16, 32, 64)

PROBABLE_BOUNDED = "probable_bounded"
UNBOUNDED = "unbounded"
RATIONAL = "rational"
INCONCLUSIVE = "inconclusive"


class EngineError(RuntimeError):
    pass


class EngineStall(EngineError):
    """Production and consumption both blocked after the largest bootstrap."""


class EngineMismatch(EngineError):
    """A produced quotient disagrees with an independently known one."""


class RationalSeries(ValueError):
    """QT - RS vanishes: the series would be rational."""


@dataclass(frozen=True)
class MRState:
    Q: Poly
    R: Poly
    S: Poly
    T: Poly
    i: int = 0
    j: int = 0
    ht: int = 0
    lemma1_armed: bool = False

    @property
    def det(self) -> Poly:
        return self.Q * self.T + self.R * self.S

    @property
    def field(self) -> FieldSpec:
        return self.Q.field

    def key(self) -> tuple[int, int, int, int]:
        return (self.Q.value, self.R.value, self.S.value, self.T.value)


def flt_from_cubic(c: Cubic, field: FieldSpec | None = None) -> MRState:
    """In characteristic 2 the cubic reads u (a3 u^2 + a1) = a2 u^2 + a0."""
    c.require_cubic()
    field = field or c.field
    a0, a1, a2, a3 = (p.embed(field) for p in c.coeffs)
    if not a1 and not a3:
        raise RationalSeries("a1 and a3 both vanish")
    Q, R, S, T = content_normalize((a2, a0, a3, a1))
    D = Q * T + R * S
    if not D:
        raise RationalSeries("QT - RS = 0")
    return MRState(Q, R, S, T, 0, 0, D.deg)


def consume_step(s: MRState, p: Poly) -> MRState:
    """Read p_j: u_i = ((Q p^2 + R) u_{j+1}^2 + Q) / ((S p^2 + T) u_{j+1}^2 + S)."""
    p2 = p * p
    return MRState(s.Q * p2 + s.R, s.Q, s.S * p2 + s.T, s.S, s.i, s.j + 1, s.ht, s.lemma1_armed)


def production_guard(deg_s, deg_t, deg_uj: int, ht: int) -> bool:
    """deg(S u_j^2) > deg(T) and deg(S (S u_j^2 + T)) > ht."""
    e = deg_s + 2 * deg_uj
    return e > deg_t and deg_s + e > ht


def printed_guard(deg_s, deg_t, deg_uj: int, ht: int) -> bool:
    """The alternative reading with 2 deg(S) + 2 deg(T) in the second test."""
    return deg_s + 2 * deg_uj > deg_t and 2 * deg_s + 2 * deg_t > ht


def try_produce(s: MRState, deg_uj: int) -> tuple[Poly, MRState] | None:
    """Emit p_i = Q div S when the guard proves it, then take the row step."""
    if not s.S:
        return None
    if not production_guard(s.S.deg, s.T.deg, deg_uj, s.ht):
        return None
    p = s.Q // s.S
    armed = s.lemma1_armed or (s.i >= s.j > 0)
    return p, MRState(s.S, s.T, s.Q + p * s.S, s.R + p * s.T, s.i + 1, s.j, s.ht, armed)


def canonical_state(Q: Poly, R: Poly, S: Poly, T: Poly) -> tuple[int, int, int, int]:
    """Content-free, with the first nonzero of (Q, S, R, T) made monic."""
    Q, R, S, T = content_normalize((Q, R, S, T))
    lead = next(p for p in (Q, S, R, T) if p)
    c = lead.lc.inverse()
    return tuple(p.scale(c).value for p in (Q, R, S, T))


def detect_unbounded(degrees, ht: int, armed_index: int | None) -> tuple[int, int] | None:
    """First quotient p_k with k > armed_index and degree > ht, as (k, degree)."""
    if armed_index is None:
        return None
    for k in range(armed_index + 1, len(degrees)):
        if degrees[k] > ht:
            return k, degrees[k]
    return None


class AutomatonLog:
    """Distinct (state, input) pairs seen at consume steps.

    Column and row steps are unimodular, so the content of (Q, R, S, T) is the
    same at every step and the determinant is fixed; once the initial matrix is
    content-normalized every visited state is already canonical and the raw
    tuple serves as the key.
    """

    def __init__(self):
        # key -> [visits, outputs that followed the first visit]
        self.pairs: dict[tuple, list] = {}
        self.growth: list[tuple[int, int]] = []

    def __len__(self):
        return len(self.pairs)

    @property
    def pair_count(self) -> int:
        return len(self.pairs)

    def record(self, state: tuple[int, int, int, int], inp: int, outputs: list[int]):
        key = state + (inp,)
        rec = self.pairs.get(key)
        if rec is None:
            self.pairs[key] = [1, list(outputs)]
        else:
            rec[0] += 1

    def states(self) -> set[tuple[int, int, int, int]]:
        return {k[:4] for k in self.pairs}

    def inputs(self) -> set[int]:
        return {k[4] for k in self.pairs}

    def outputs_per_input(self) -> dict[int, int]:
        """How many times each output count occurs across recorded pairs."""
        hist: dict[int, int] = {}
        for _, outs in self.pairs.values():
            hist[len(outs)] = hist.get(len(outs), 0) + 1
        return hist


@dataclass
class ExpansionReport:
    field: FieldSpec
    values: list[int]
    status: str
    ht: int
    pairs: AutomatonLog
    produced_count: int
    consumed_count: int
    witness: tuple[int, int] | None = None
    bootstrap: int = 0
    guard_disagreements: int = 0
    armed_index: int | None = None
    cubic: Cubic | None = None
    root: LaurentSeries | None = None

    def __len__(self):
        return len(self.values)

    @property
    def pqs(self) -> list[Poly]:
        f = self.field
        return [Poly(v, f) for v in self.values]

    def digits(self) -> list[str]:
        return [Poly(v, self.field).digits() for v in self.values]

    @property
    def pair_count(self) -> int:
        return self.pairs.pair_count

    def degrees(self) -> list:
        a = arith(self.field)
        return [a.deg(v) for v in self.values]

    def rate(self) -> float:
        return self.produced_count / self.consumed_count if self.consumed_count else float("inf")


class _Stall(Exception):
    pass


def _engine(Q: int, R: int, S: int, T: int, ht: int, known: list[int], n: int, a: Arith,
            detect: bool, pairs: AutomatonLog | None, sink: Callable[[int, int], None] | None):
    """Core loop on packed ints.  Returns (i, j, witness, armed_index, disagreements)."""
    s = a.s
    mul = a.mul
    pdivmod = a.divmod
    pairs_dict = pairs.pairs if pairs is not None else None
    growth = pairs.growth if pairs is not None else None
    i = j = 0
    armed = None
    witness = None
    disagree = 0
    outputs = None
    low = -(1 << 30)
    while i < n:
        # degree of u_j
        nk = len(known)
        if j >= nk:
            raise _Stall
        pj = known[j]
        if pj:
            du = (pj.bit_length() - 1) // s
        elif j + 1 < nk and known[j + 1]:
            du = -((known[j + 1].bit_length() - 1) // s)
        else:
            raise _Stall
        # produce while the guard holds
        while S and i < n:
            dS = (S.bit_length() - 1) // s
            dT = (T.bit_length() - 1) // s if T else low
            e = dS + 2 * du
            ok = e > dT and dS + e > ht
            if e > dT and ok != (2 * dS + 2 * dT > ht):
                disagree += 1
            if not ok:
                break
            p = pdivmod(Q, S)[0]
            if i < len(known):
                if known[i] != p:
                    raise EngineMismatch(f"produced quotient {i} disagrees with the known value")
            else:
                known.append(p)
                if sink is not None:
                    sink(i, p)
                if armed is not None and detect and (p.bit_length() - 1) // s > ht:
                    witness = (i, (p.bit_length() - 1) // s)
            if armed is None and i >= j > 0:
                armed = i
                if detect:
                    for k in range(i + 1, len(known)):
                        d = (known[k].bit_length() - 1) // s
                        if d > ht:
                            witness = (k, d)
                            break
            if outputs is not None:
                outputs.append(p)
            Q, R, S, T = S, T, Q ^ mul(p, S), R ^ mul(p, T)
            i += 1
            if witness is not None:
                return i, j, witness, armed, disagree
        if i >= n:
            break
        # consume p_j
        if pairs_dict is not None:
            key = (Q, R, S, T, pj)
            rec = pairs_dict.get(key)
            if rec is None:
                outputs = []
                pairs_dict[key] = [1, outputs]
                growth.append((j, len(pairs_dict)))
            else:
                rec[0] += 1
                outputs = None
        p2 = mul(pj, pj)
        Q, R, S, T = mul(Q, p2) ^ R, Q, mul(S, p2) ^ T, S
        j += 1
    return i, j, witness, armed, disagree


def select_root(c: Cubic, field: FieldSpec, root=0, precision: int = DEFAULT_PRECISION) -> LaurentSeries:
    """Pick a root by index, by leading-coefficient digit ("2" or "t"), or pass one through."""
    if isinstance(root, LaurentSeries):
        return root
    roots = newton_polygon_roots(c, field, precision)
    if not roots:
        raise ValueError(f"no Laurent series root of {c} over {field!r}")
    if isinstance(root, int):
        if not 0 <= root < len(roots):
            raise ValueError(f"root index {root} out of range ({len(roots)} roots)")
        return roots[root]
    lead = {"t": 2, "1+t": 3, "t2": 4, "t^2": 4}.get(str(root).lower().replace(" ", ""), None)
    if lead is None:
        lead = int(root)
    for r in roots:
        if r.value and r.coeffs[0].bits == lead:
            return r
    raise ValueError(f"no root of {c} over {field!r} with leading coefficient {root}")


def _bootstrap(u: LaurentSeries, c: Cubic, field: FieldSpec, count: int, precision: int, root) -> tuple[list[int], LaurentSeries]:
    """``count`` certified classical quotients, raising precision as needed."""
    while True:
        try:
            pqs, cert = classical_cf(u, count + 1)
        except SeriesExhausted as exc:
            # a truncation is always rational; only an exact rational root counts.
            # Otherwise the next quotient lies beyond the precision and the earlier ones stand.
            if _solves_exactly(c, u):
                raise
            pqs, cert = exc.pqs, exc.certified
        if cert >= count or precision >= 1 << 14:
            if cert == 0:
                raise EngineError("bootstrap could not certify any quotient")
            return [p.value for p in pqs[:min(cert, count)]], u
        precision *= 2
        log.debug("bootstrap precision raised to %d", precision)
        u = _reroot(u, c, field, precision, root)


def _solves_exactly(c: Cubic, u: LaurentSeries) -> bool:
    """True when the rational function fitting the known part of ``u`` is a root of ``c``."""
    if u.exact:
        return True
    a = arith(u.field)
    m = -u.floor
    if m < 0:
        return False
    r0, r1 = u.value, 1 << (a.s * m)
    num_prev, num = 1, 0
    den_prev, den = 0, 1
    while r1:
        q, r = a.divmod(r0, r1)
        num_prev, num = num, a.mul(q, num) ^ num_prev
        den_prev, den = den, a.mul(q, den) ^ den_prev
        r0, r1 = r1, r
    # num/den is the last convergent; test den^3 f(num/den) = 0
    a0, a1, a2, a3 = (cf.embed(u.field).value for cf in c.coeffs)
    n2, d2 = a.mul(num, num), a.mul(den, den)
    total = (a.mul(a0, a.mul(d2, den)) ^ a.mul(a1, a.mul(num, d2))
             ^ a.mul(a2, a.mul(n2, den)) ^ a.mul(a3, a.mul(n2, num)))
    return total == 0


def _reroot(u: LaurentSeries, c: Cubic, field: FieldSpec, precision: int, root) -> LaurentSeries:
    for r in newton_polygon_roots(c, field, precision):
        if r.agrees_with(u):
            return r
    if isinstance(root, LaurentSeries):
        raise EngineError("explicit root cannot be refined; supply more precision")
    raise EngineError("could not re-identify the root at higher precision")


def run_expansion(c: Cubic, root=0, n: int = 1000, field: FieldSpec | None = None, *,
                  detect: bool = True, probable_threshold: int = PROBABLE_THRESHOLD,
                  precision: int = DEFAULT_PRECISION, bootstrap: int | None = None,
                  log_pairs: bool = True, sink: Callable[[int, Poly], None] | None = None) -> ExpansionReport:
    """Expand a root of ``c`` with the fast engine.

    ``root`` is an index into :func:`newton_polygon_roots`, a leading-coefficient
    digit, or an explicit series (which must satisfy ``c``).  Stops after ``n``
    quotients or at the first unboundedness witness when ``detect`` is set.
    ``sink(i, p)`` sees every quotient exactly once, in order.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if field is None:
        field = root.field if isinstance(root, LaurentSeries) else c.field
    a = arith(field)
    state = flt_from_cubic(c, field)
    u = select_root(c, field, root, precision)
    ladder = [bootstrap] if bootstrap else list(BOOTSTRAP_LADDER)
    if u.exact:
        # an exact root is a rational function with a finite expansion
        pqs, _ = classical_cf(u, n)
        values = [p.value for p in pqs]
        if sink is not None:
            for k, p in enumerate(pqs):
                sink(k, p)
        return ExpansionReport(field, values, RATIONAL, state.ht, AutomatonLog(), len(values), 0, cubic=c, root=u)

    emitted = 0

    def emit(i: int, p: int):
        nonlocal emitted
        if sink is not None and emitted <= i < n:
            sink(i, Poly(p, field))
            emitted = i + 1

    last_err = None
    for count in ladder:
        try:
            known, u = _bootstrap(u, c, field, count, precision, root)
        except SeriesExhausted:
            return ExpansionReport(field, [], RATIONAL, state.ht, AutomatonLog(), 0, 0, cubic=c, root=u)
        for k, p in enumerate(known):
            emit(k, p)
        nboot = len(known)
        pairs = AutomatonLog() if log_pairs else None
        try:
            i, j, witness, armed, disagree = _engine(
                state.Q.value, state.R.value, state.S.value, state.T.value, state.ht,
                known, n, a, detect, pairs, emit if sink is not None else None)
        except _Stall:
            last_err = f"stalled with bootstrap {count}"
            log.debug(last_err)
            continue
        if witness is not None:
            status = UNBOUNDED
            values = known[:witness[0] + 1]
        else:
            values = known[:n]
            status = PROBABLE_BOUNDED if i >= probable_threshold else INCONCLUSIVE
        if disagree:
            log.debug("guard readings disagreed %d times", disagree)
        return ExpansionReport(field, values, status, state.ht, pairs if pairs is not None else AutomatonLog(),
                               i, j, witness, nboot, disagree, armed, c, u)
    raise EngineStall(f"engine stalled after bootstrap ladder {ladder}: {last_err}")


def iter_quotients(c: Cubic, root=0, field: FieldSpec | None = None, n: int = 1000, **kw) -> Iterator[Poly]:
    """Convenience wrapper returning the quotient stream of :func:`run_expansion`."""
    rep = run_expansion(c, root, n, field, **kw)
    yield from rep.pqs


@dataclass
class TransitionTable:
    """Look-up table (state at cycle start, input) -> (outputs, next state).

    Built after the fact from a finished expansion; ``replay`` then regenerates
    the quotient stream with table look-ups only.
    """

    start: tuple[int, int, int, int]
    seed: list[int]
    table: dict[tuple, tuple[tuple[int, ...], tuple[int, int, int, int]]]

    def __len__(self):
        return len(self.table)

    def replay(self, n: int) -> list[int]:
        state, values, j = self.start, [], 0
        while len(values) < n:
            inp = values[j] if j < len(values) else self.seed[j] if j < len(self.seed) else None
            hit = None if inp is None else self.table.get(state + (inp,))
            if hit is None:
                break
            values.extend(hit[0])
            state = hit[1]
            j += 1
        return values[:n]


def transition_table(rep: ExpansionReport) -> TransitionTable:
    """Re-walk a report's quotient stream, recording every cycle as a table entry."""
    if rep.cubic is None or not rep.values:
        raise ValueError("report carries no cubic or no quotients")
    a = arith(rep.field)
    s = a.s
    st = flt_from_cubic(rep.cubic, rep.field)
    Q, R, S, T = st.Q.value, st.R.value, st.S.value, st.T.value
    known = rep.values
    seed = known[:rep.bootstrap]
    start = (Q, R, S, T)
    table: dict = {}
    i = j = 0
    while j + 1 < len(known) and i < len(known):
        pj = known[j]
        du = (pj.bit_length() - 1) // s if pj else -((known[j + 1].bit_length() - 1) // s)
        key = (Q, R, S, T, pj)
        outs = []
        while S and i < len(known):
            dS = (S.bit_length() - 1) // s
            dT = (T.bit_length() - 1) // s if T else -(1 << 30)
            if not production_guard(dS, dT, du, st.ht):
                break
            p = a.divmod(Q, S)[0]
            outs.append(p)
            Q, R, S, T = S, T, Q ^ a.mul(p, S), R ^ a.mul(p, T)
            i += 1
        if i >= len(known):
            break  # the cycle may have been cut short by the end of the stream
        p2 = a.mul(pj, pj)
        Q, R, S, T = a.mul(Q, p2) ^ R, Q, a.mul(S, p2) ^ T, S
        entry = (tuple(outs), (Q, R, S, T))
        if table.setdefault(key, entry) != entry:
            raise EngineError("transition table is not single-valued")
        j += 1
    return TransitionTable(start, list(seed), table)

