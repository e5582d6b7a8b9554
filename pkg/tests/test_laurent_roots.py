import pytest
from hypothesis import given, settings, strategies as st

from cubiccf.gf import GF2, GF4, GF8
from cubiccf.laurent import CASE_A, CASE_B, CASE_C, THREE_GF2_ROOTS, Cubic, LaurentSeries, PrecisionError
from cubiccf.poly import Poly
from cubiccf.roots import (SeriesExhausted, classical_cf, convergents, has_rational_root,
                           irreducible_over_closure, newton_polygon_roots)
from cubiccf.survey import enumerate_cubics
from oracles import digits_to_list, eval_cubic_series, series_inv, series_mul, stable_cf


def digits_of(u):
    return [c.bits for c in u.coeffs]


def series(spec, n=24):
    return st.tuples(st.integers(-4, 4), st.integers(1, spec.size - 1),
                     st.lists(st.integers(0, spec.size - 1), min_size=n - 1, max_size=n - 1)).map(
        lambda t: LaurentSeries.from_coeffs(t[0], [t[1]] + t[2], spec, precision=n))


@pytest.mark.parametrize("spec", [GF2, GF4, GF8])
def test_series_product_and_reciprocal_match_oracle(spec):
    @settings(max_examples=60)
    @given(series(spec), series(spec))
    def check(a, b):
        n = 24
        e, c = series_mul((a.lead_deg, digits_of(a)), (b.lead_deg, digits_of(b)), n, spec.k)
        prod = a * b
        assert prod.lead_deg == e
        assert digits_of(prod)[:n] == c[:len(digits_of(prod))]
        e, c = series_inv((a.lead_deg, digits_of(a)), n, spec.k)
        r = a.reciprocal()
        assert r.lead_deg == e
        assert digits_of(r) == c[:len(digits_of(r))]

    check()


def test_series_text_and_precision():
    u = LaurentSeries.from_coeffs(0, [2, 1, 0, 3], GF4, precision=4)
    assert u.precision == 4
    assert u.text().startswith("2@0 + 1@-1 + 3@-3")
    assert u.text().endswith("O(x^-4)")
    with pytest.raises(PrecisionError):
        u.coefficient(-5)
    assert u.integral_part() == Poly.constant(2, GF4)


def _check_root(c, u, k):
    n = len(u.coeffs)
    bad, trusted, _ = eval_cubic_series([digits_to_list(p.digits()) for p in c.coeffs],
                                        u.lead_deg, digits_of(u), n, k)
    assert not bad, f"residual of {c} at exponents {sorted(bad)[-3:]} (trusted above {trusted})"


@pytest.mark.parametrize("spec", [GF4, GF8])
def test_every_survey_root_satisfies_its_cubic(spec):
    for c in enumerate_cubics(1):
        if not irreducible_over_closure(c):
            continue
        for u in newton_polygon_roots(c, spec, 64):
            _check_root(c, u, spec.k)


def test_root_counts_for_the_named_cubics():
    assert len(newton_polygon_roots(CASE_A, GF2)) == 1
    assert len(newton_polygon_roots(CASE_A, GF4)) == 3
    assert newton_polygon_roots(CASE_B, GF4) == []
    for case in (CASE_B, CASE_C):
        roots = newton_polygon_roots(case, GF8)
        assert len(roots) == 3
        # the three roots form one Frobenius orbit
        conj = {r.frobenius() for r in roots}
        assert conj == set(roots)
    assert len(newton_polygon_roots(THREE_GF2_ROOTS, GF2)) == 3


def test_roots_are_sorted_and_reproducible():
    a = newton_polygon_roots(CASE_C, GF8, 128)
    b = newton_polygon_roots(CASE_C, GF8, 128)
    assert a == b
    assert [r.coeffs[0].bits for r in a] == sorted(r.coeffs[0].bits for r in a)


def test_precision_refines_consistently():
    lo = newton_polygon_roots(CASE_B, GF8, 64)
    hi = newton_polygon_roots(CASE_B, GF8, 512)
    for r_lo, r_hi in zip(lo, hi):
        assert r_hi.agrees_with(r_lo)


@pytest.mark.parametrize("case,spec", [(CASE_A, GF2), (CASE_A, GF4), (CASE_B, GF8), (CASE_C, GF8)])
def test_classical_cf_matches_independent_expansion(case, spec):
    u_hi = newton_polygon_roots(case, spec, 400)[0]

    def at(p):
        return u_hi.lead_deg, digits_of(u_hi)[:p]

    oracle = stable_cf(at, 40, spec.k, precisions=(200, 400))
    u = newton_polygon_roots(case, spec, 200)[0]
    pqs, cert = classical_cf(u, 40)
    assert cert > 20
    got = [digits_to_list(p.digits()) for p in pqs[:cert]]
    m = min(len(got), len(oracle))
    assert m > 20
    assert got[:m] == oracle[:m]


def test_convergent_accuracy_is_next_quotient_degree():
    u = newton_polygon_roots(CASE_C, GF8, 512)[0]
    pqs, cert = classical_cf(u, 40)
    convs = convergents(pqs[:cert])
    for n, cv in enumerate(convs[:-1]):
        err = u - LaurentSeries.from_poly(cv.a) / LaurentSeries.from_poly(cv.b)
        assert err.lead_deg == -pqs[n + 1].deg - 2 * cv.b.deg
        assert cv.accuracy == pqs[n + 1].deg


def test_exact_rational_series_terminates():
    # 1/(x+1) = x^-1 + x^-2 + ... is rational; its expansion is [0, x+1]
    u = LaurentSeries.from_poly(Poly.from_digits("1")) / LaurentSeries.from_poly(Poly.from_digits("11"))
    pqs, cert = classical_cf(u.truncate(-200), 10)
    assert [p.digits() for p in pqs[:2]] == ["0", "11"]
    with pytest.raises(SeriesExhausted):
        classical_cf(LaurentSeries.from_coeffs(-1, [1], GF2, precision=300), 10)


def test_irreducibility_count_and_rational_roots():
    cubics = enumerate_cubics(1)
    assert len(cubics) == 256
    assert sum(irreducible_over_closure(c) for c in cubics) == 96
    # (y + x)(y^2 + y + 1)
    reducible = Cubic.from_digits("01", "11", "11", "1")
    assert has_rational_root(reducible, GF2)
    assert not irreducible_over_closure(reducible)
    assert irreducible_over_closure(CASE_A)
    assert not any(irreducible_over_closure(c) for c in enumerate_cubics(0))


def test_cubic_transforms():
    assert CASE_A.flip() == Cubic.from_digits("01", "0", "1", "01")
    for c in (CASE_A, CASE_B, CASE_C):
        assert c.flip().flip() == c
        assert c.shift_y().shift_y() == c
        assert c.shift_x().shift_x() == c
        assert c.shift_x().max_deg == c.max_deg == c.shift_y().max_deg


@pytest.mark.parametrize("case,spec", [(CASE_A, GF4), (CASE_B, GF8)])
def test_transformed_roots_solve_transformed_cubics(case, spec):
    u = newton_polygon_roots(case, spec, 200)[1]
    _check_root(case.flip(), u.reciprocal(), spec.k)
    _check_root(case.shift_y(), u + 1, spec.k)
    _check_root(case.shift_x(), u.subst_x_plus_1(), spec.k)


def test_gf2_detection_on_long_values():
    from cubiccf._packed import Arith
    fresh = Arith(GF4)
    v = fresh.spread_gf2((1 << 5000) | 1)
    assert fresh.is_gf2(v)
    assert not fresh.is_gf2(v | (2 << (3 * 4000)))
