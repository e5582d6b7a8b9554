"""Survey of cubics with low-degree GF(2)[x] coefficients.

Enumerates coefficient tuples, keeps the cubics irreducible over the algebraic
closure of GF(2), expands every Laurent root with the unboundedness detector
on, and groups the survivors under the twelve substitutions generated by
x -> x+1, y -> y+1 and y -> 1/y.
"""
from __future__ import annotations

import itertools
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

from .engine import PROBABLE_BOUNDED, UNBOUNDED, ExpansionReport, run_expansion, select_root
from .gf import GF2, GF4, GF8, FieldSpec
from .laurent import Cubic, LaurentSeries
from .poly import Poly
from .roots import irreducible_over_closure, newton_polygon_roots

log = logging.getLogger(__name__)

CI_THRESHOLD = 10**4

# y-part of a substitution as a Moebius matrix (a, b, c, d): y -> (a y + b) / (c y + d)
_GENERATORS = {
    "X": (1, (1, 0, 0, 1)),
    "Y": (0, (1, 1, 0, 1)),
    "I": (0, (0, 1, 1, 0)),
}


def _matmul(m, n):
    a, b, c, d = m
    e, f, g, h = n
    return ((a * e + b * g) & 1, (a * f + b * h) & 1, (c * e + d * g) & 1, (c * f + d * h) & 1)


@dataclass(frozen=True)
class Substitution:
    """A word in the generators X (x -> x+1), Y (y -> y+1), I (y -> 1/y)."""

    word: str

    @property
    def signature(self) -> tuple[int, tuple[int, int, int, int]]:
        xbit, mat = 0, (1, 0, 0, 1)
        for g in self.word:
            gx, gm = _GENERATORS[g]
            xbit ^= gx
            mat = _matmul(mat, gm)
        return xbit, mat

    def __mul__(self, other: Substitution) -> Substitution:
        return Substitution(self.word + other.word)

    def __repr__(self):
        return f"Substitution({self.word or 'id'!r})"


def substitution_group() -> list[Substitution]:
    """The twelve distinct substitutions, as shortest words (breadth-first)."""
    seen = {Substitution("").signature: Substitution("")}
    frontier = [Substitution("")]
    while frontier:
        nxt = []
        for s in frontier:
            for g in "XYI":
                t = s * Substitution(g)
                sig = t.signature
                if sig not in seen:
                    seen[sig] = t
                    nxt.append(t)
        frontier = nxt
    return sorted(seen.values(), key=lambda s: (len(s.word), s.word))


def apply_substitution(c: Cubic, s: Substitution) -> Cubic:
    for g in s.word:
        if g == "X":
            c = c.shift_x()
        elif g == "Y":
            c = c.shift_y()
        else:
            c = c.flip()
    return c


def enumerate_cubics(max_deg: int = 1) -> list[Cubic]:
    """Every coefficient tuple (a0, a1, a2, a3) over GF(2)[x] with degrees <= max_deg.

    Tuples with a3 = 0 are included, matching the 4**4 = 256 count for
    max_deg = 1; they are never irreducible cubics.
    """
    if max_deg < 0:
        raise ValueError("max_deg must be >= 0")
    polys = [Poly(v, GF2) for v in range(1 << (max_deg + 1))]
    return [Cubic(*t) for t in itertools.product(polys, repeat=4)]


def orbit_partition(cs: list[Cubic]) -> dict[Cubic, int]:
    """Map each cubic to an orbit id; ids follow the least key in each orbit."""
    group = substitution_group()
    members = {c.key: c for c in cs}
    parent = {k: k for k in members}

    def find(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    for k, c in members.items():
        for s in group:
            img = apply_substitution(c, s).key
            if img in members:
                ra, rb = find(k), find(img)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    roots = sorted({find(k) for k in members})
    ids = {r: n for n, r in enumerate(roots)}
    return {c: ids[find(k)] for k, c in members.items()}


def orbit_representatives(orbits: dict[Cubic, int]) -> dict[int, Cubic]:
    reps: dict[int, Cubic] = {}
    for c, oid in orbits.items():
        if oid not in reps or c.key < reps[oid].key:
            reps[oid] = c
    return reps


def orbit_of(c: Cubic) -> set[tuple]:
    return {apply_substitution(c, s).key for s in substitution_group()}


@dataclass
class RootResult:
    field: FieldSpec
    lead: str
    status: str
    ht: int
    pairs: int
    quotients: int
    witness: tuple[int, int] | None = None
    late_alphabet: int = 0

    @property
    def bounded(self) -> bool:
        return self.status == PROBABLE_BOUNDED


@dataclass
class SurveyRecord:
    cubic: Cubic
    irreducible: bool
    orbit_id: int | None = None
    roots: list[RootResult] = dc_field(default_factory=list)

    @property
    def has_bounded_root(self) -> bool:
        return any(r.bounded for r in self.roots)

    def status_multiset(self) -> Counter:
        return Counter((r.field.name, r.status) for r in self.roots)

    def gf2_roots(self) -> list[RootResult]:
        return [r for r in self.roots if r.field == GF2]


def classified_roots(c: Cubic, precision: int = 512) -> list[tuple[FieldSpec, LaurentSeries]]:
    """All Laurent roots of a GF(2) cubic, each in its smallest coefficient field."""
    out = []
    for r in newton_polygon_roots(c, GF4, precision):
        out.append((GF2, r.to_gf2()) if r.has_gf2_coeffs() else (GF4, r))
    for r in newton_polygon_roots(c, GF8, precision):
        if not r.has_gf2_coeffs():
            out.append((GF8, r))
    return out


def late_alphabet(rep: ExpansionReport) -> set[int]:
    """Quotients seen in the second half of a run: a proxy for those occurring infinitely often."""
    return set(rep.values[len(rep.values) // 2:])


def classify_equation(c: Cubic, n: int = CI_THRESHOLD, threshold: int | None = None) -> SurveyRecord:
    """Expand every Laurent root of an irreducible cubic with the detector active."""
    threshold = n if threshold is None else threshold
    rec = SurveyRecord(c, True)
    for fld, u in classified_roots(c):
        rep = run_expansion(c, u, n, fld, detect=True, probable_threshold=threshold)
        rec.roots.append(RootResult(fld, u.coeffs[0].__repr__() + f"@{u.lead_deg}", rep.status, rep.ht,
                                    rep.pair_count, len(rep.values), rep.witness, len(late_alphabet(rep))))
    return rec


def _classify_task(args):
    key, n, threshold = args
    c = Cubic(*(Poly(v, GF2) for v in key))
    return classify_equation(c, n, threshold)


@dataclass
class SurveyReport:
    max_deg: int
    threshold: int
    total: int
    records: list[SurveyRecord]

    @property
    def irreducible(self) -> list[SurveyRecord]:
        return [r for r in self.records if r.irreducible]

    @property
    def winners(self) -> list[SurveyRecord]:
        return [r for r in self.records if r.has_bounded_root]

    @property
    def orbit_count(self) -> int:
        return len({r.orbit_id for r in self.winners})

    def orbit_sizes(self) -> list[int]:
        return sorted(Counter(r.orbit_id for r in self.winners).values())

    def three_gf2_root_counts(self) -> Counter:
        """For cubics with three GF(2) roots: how many of those roots look bounded."""
        cnt = Counter()
        for r in self.irreducible:
            g = r.gf2_roots()
            if len(g) == 3:
                cnt[sum(x.bounded for x in g)] += 1
        return cnt

    def footer(self) -> str:
        return (f"{self.total} total, {len(self.irreducible)} irreducible, "
                f"{len(self.winners)} probable-bounded, {self.orbit_count} orbits")


def survey(max_deg: int = 1, threshold: int = CI_THRESHOLD, workers: int = 1) -> SurveyReport:
    """Run the full funnel; records come back sorted by cubic key regardless of scheduling."""
    cubics = enumerate_cubics(max_deg)
    irreducible = [c for c in cubics if irreducible_over_closure(c)]
    tasks = [(c.key, threshold, threshold) for c in irreducible]
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            done = list(ex.map(_classify_task, tasks))
    else:
        done = [_classify_task(t) for t in tasks]
    by_key = {r.cubic.key: r for r in done}
    records = []
    for c in sorted(cubics, key=lambda c: c.key):
        records.append(by_key.get(c.key) or SurveyRecord(c, False))
    winners = [r.cubic for r in records if r.has_bounded_root]
    orbits = orbit_partition(winners)
    for r in records:
        if r.cubic in orbits:
            r.orbit_id = orbits[r.cubic]
    return SurveyReport(max_deg, threshold, len(cubics), records)


def boundedness_transport_check(c: Cubic, root=0, n: int = CI_THRESHOLD, field: FieldSpec | None = None) -> bool:
    """u, 1/u, 1+u and u(x+1) must share one detector status."""
    return len(set(transport_statuses(c, root, n, field).values())) == 1


def transport_statuses(c: Cubic, root=0, n: int = CI_THRESHOLD, field: FieldSpec | None = None) -> dict[str, str]:
    field = field or (root.field if isinstance(root, LaurentSeries) else c.field)
    u = select_root(c, field, root)
    runs = {
        "u": (c, u),
        "1/u": (c.flip(), u.reciprocal()),
        "1+u": (c.shift_y(), u + 1),
        "u(x+1)": (c.shift_x(), u.subst_x_plus_1()),
    }
    out = {}
    for name, (cc, uu) in runs.items():
        rep = run_expansion(cc, uu, n, field, detect=True, probable_threshold=n)
        out[name] = rep.status
    return out
