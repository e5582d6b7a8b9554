import pytest
from hypothesis import given, settings, strategies as st

from cubiccf.engine import (INCONCLUSIVE, PROBABLE_BOUNDED, RATIONAL, UNBOUNDED, EngineError, RationalSeries,
                            canonical_state, consume_step, detect_unbounded, flt_from_cubic, printed_guard,
                            production_guard, run_expansion, select_root, transition_table, try_produce)
from cubiccf.gf import GF2, GF4, GF8
from cubiccf.laurent import CASE_A, CASE_B, CASE_C, Cubic
from cubiccf.poly import Poly
from cubiccf.roots import classical_cf, newton_polygon_roots


def test_initial_matrix_and_height():
    s = flt_from_cubic(CASE_A)
    # x + y + x y^3: u (x u^2 + 1) = 0 u^2 + x
    assert (s.Q.digits(), s.R.digits(), s.S.digits(), s.T.digits()) == ("0", "01", "01", "1")
    assert s.ht == s.det.deg == 2
    with pytest.raises(RationalSeries):
        flt_from_cubic(Cubic.from_digits("0", "0", "1", "1"))


def test_consume_keeps_the_determinant():
    s = flt_from_cubic(CASE_C, GF8)
    d = s.det
    for digits in ("2", "17", "52", "35", "206"):
        s = consume_step(s, Poly.from_digits(digits, GF8))
        assert s.det == d


def test_guard_readings():
    # deg S = 1, deg T = 0, deg u_j = 1, ht = 2
    assert production_guard(1, 0, 1, 2)
    assert not production_guard(0, 2, 1, 2)        # S u_j^2 does not dominate T
    assert not production_guard(0, 0, 1, 2)        # 0 + 2 is not > 2
    # the alternative reading accepts a case the derivation rejects
    assert printed_guard(1, 2, 1, 4) and not production_guard(1, 2, 1, 4)


def _reference_expansion(c, field, root, n):
    """Same algorithm driven through the Poly-level step functions."""
    u = select_root(c, field, root)
    boot, cert = classical_cf(u, 9)
    known = list(boot[:cert])
    s = flt_from_cubic(c, field)
    out = []
    while len(out) < n:
        pj = known[s.j]
        while True:
            step = try_produce(s, pj.deg)
            if step is None:
                break
            p, s = step
            out.append(p)
            if len(known) < len(out):
                known.append(p)
            assert known[len(out) - 1] == p
        s = consume_step(s, pj)
        assert s.det.deg == s.ht
    return out[:n]


@pytest.mark.parametrize("case,field,root", [(CASE_A, GF2, 0), (CASE_A, GF4, "t"), (CASE_B, GF8, "2"),
                                             (CASE_C, GF8, "2")])
def test_packed_loop_matches_poly_level_steps(case, field, root):
    ref = _reference_expansion(case, field, root, 1500)
    rep = run_expansion(case, root, 1500, field)
    assert rep.pqs == ref


@pytest.mark.parametrize("case,field", [(CASE_A, GF4), (CASE_B, GF8), (CASE_C, GF8)])
def test_engine_agrees_with_certified_classical_quotients(case, field):
    for k, u in enumerate(newton_polygon_roots(case, field, 2048)):
        pqs, cert = classical_cf(u, 400)
        rep = run_expansion(case, k, cert, field)
        assert rep.pqs[:cert] == pqs[:cert]


def test_sink_sees_each_quotient_once_in_order():
    seen = []
    rep = run_expansion(CASE_B, "2", 3000, GF8, sink=lambda i, p: seen.append((i, p)))
    assert [i for i, _ in seen] == list(range(3000))
    assert [p for _, p in seen] == rep.pqs


def test_statuses():
    assert run_expansion(CASE_A, 0, 2000, probable_threshold=1000).status == PROBABLE_BOUNDED
    assert run_expansion(CASE_A, 0, 500, probable_threshold=1000).status == INCONCLUSIVE
    rep = run_expansion(Cubic.parse("1,0,01,1"), 0, 10**4)
    assert rep.status == UNBOUNDED
    k, d = rep.witness
    assert d > rep.ht and k > rep.armed_index
    assert len(rep.values) == k + 1


def test_rational_root_is_reported():
    # (y + x)(y^2 + y + 1): the root y = x has the expansion [x]
    c = Cubic.from_digits("01", "11", "11", "1")
    rep = run_expansion(c, 0, 50)
    assert rep.status == RATIONAL
    assert [p.digits() for p in rep.pqs] == ["01"]


def test_detector_helper():
    assert detect_unbounded([0, 1, 1, 5], 2, None) is None
    assert detect_unbounded([0, 1, 1, 5], 2, 1) == (3, 5)
    assert detect_unbounded([0, 5, 1, 1], 2, 1) is None


def test_production_rate_is_about_two():
    for case, field, root in ((CASE_A, GF2, 0), (CASE_B, GF8, "2")):
        rep = run_expansion(case, root, 10**4, field)
        assert 1.8 <= rep.rate() <= 2.2


def test_case_b_inputs_each_produce_two_outputs():
    rep = run_expansion(CASE_B, "2", 10**4, GF8)
    hist = rep.pairs.outputs_per_input()
    late = [outs for key, (count, outs) in rep.pairs.pairs.items() if count > 1]
    assert all(len(o) == 2 for o in late)
    assert hist[2] >= len(rep.pairs) - 10


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.integers(0, 200))
def test_canonical_state_is_scale_invariant(c, seed):
    rep = run_expansion(CASE_C, "2", 300, GF8)
    states = sorted(rep.pairs.states())
    Q, R, S, T = (Poly(v, GF8) for v in states[seed % len(states)])
    scalar = GF8(c + 1 if c < 7 else 7)
    scaled = canonical_state(*(p.scale(scalar) for p in (Q, R, S, T)))
    assert scaled == canonical_state(Q, R, S, T)


@pytest.mark.parametrize("case,field,root", [(CASE_A, GF4, "t"), (CASE_B, GF8, "2")])
def test_raw_keys_count_like_canonical_keys(case, field, root):
    rep = run_expansion(case, root, 2 * 10**4, field)
    canon = {canonical_state(*(Poly(v, field) for v in k[:4])) + (k[4],) for k in rep.pairs.pairs}
    assert len(canon) == rep.pair_count


def test_lookup_table_replay_reproduces_stream():
    for case, field, root in ((CASE_A, GF4, "t"), (CASE_C, GF8, "2")):
        rep = run_expansion(case, root, 2 * 10**4, field)
        table = transition_table(rep)
        replayed = table.replay(2 * 10**4)
        # only the final, truncated cycle is missing from the table
        assert len(replayed) > 2 * 10**4 - 10
        assert replayed == rep.values[:len(replayed)]


def test_determinism():
    a = run_expansion(CASE_C, "2", 5000, GF8)
    b = run_expansion(CASE_C, "2", 5000, GF8)
    assert a.values == b.values and a.pair_count == b.pair_count


def test_root_selection_errors():
    with pytest.raises(ValueError):
        run_expansion(CASE_A, 7, 10)
    with pytest.raises(ValueError):
        run_expansion(CASE_B, 0, 10, GF4)
    with pytest.raises(ValueError):
        run_expansion(CASE_A, 0, 0)
