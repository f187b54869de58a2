
import pytest
from hypothesis import given, settings, strategies as st

from fqmenon.budget import BudgetExceeded
from fqmenon.chars import characters, conductor, primitive_lift
from fqmenon.gf import ff_make
from fqmenon.identity import (
    PreconditionError,
    GcdSumInstance,
    count_coprime_progression,
    estimate_cost,
    g_count,
    h0_compute,
    make_instance,
    n_l_count,
    n_l_recursion_check,
    n_l_recursion_rhs,
    primitive_progression_sum,
    gcd_sum_lhs,
    gcd_sum_lhs_naive,
    gcd_sum_rhs,
    verify_gcd_sum,
    weighted_sum_brute,
    weighted_sum_check,
    weighted_sum_closed,
)
from fqmenon.multfunc import euler_phi
from fqmenon.polyring import Poly, residues, units
from fqmenon.scalar import exact_equal

from conftest import P


def one(f):
    return Poly.const(f, 1)


def test_coprime_progression_examples(F2, F3):
    h = P(F3, "T^2+T")
    for q in units(h):
        assert count_coprime_progression(h, one(F3), q) == euler_phi(h)
        assert count_coprime_progression(h, h, q) == 1
    assert count_coprime_progression(P(F2, "T^2"), P(F2, "T"), one(F2)) == 2
    assert count_coprime_progression(P(F2, "T^2"), P(F2, "T"), one(F2), "closed") == 2
    with pytest.raises(PreconditionError):
        count_coprime_progression(P(F2, "T^2"), P(F2, "T+1"), one(F2))
    with pytest.raises(PreconditionError):
        count_coprime_progression(P(F2, "T^2"), P(F2, "T"), P(F2, "T"))


def test_g_count_examples(F2, F3):
    h = P(F2, "T^2")
    assert g_count(h, P(F2, "T"), h, one(F2), one(F2)) == 1
    assert g_count(h, P(F2, "T"), h, one(F2), one(F2), "closed") == 1
    h3 = P(F3, "T^2")
    assert g_count(h3, P(F3, "T"), h3, one(F3), P(F3, "2")) == 0
    assert g_count(h3, one(F3), one(F3), Poly(F3, ()), Poly(F3, ()), "closed") == euler_phi(h3)
    with pytest.raises(PreconditionError):
        g_count(h3, P(F3, "T+1"), one(F3), one(F3), one(F3))


def test_g_count_three_paths_agree(F3):
    h = P(F3, "T^3+T^2")
    from fqmenon.polyring import divisors

    for d in divisors(h):
        for m in divisors(h):
            for q in list(residues(h))[::5]:
                for s in list(residues(h))[::7]:
                    b = g_count(h, d, m, q, s)
                    assert b == g_count(h, d, m, q, s, "closed") == g_count(h, d, m, q, s, "local")


def test_primitive_progression_examples(F3):
    triv = primitive_lift(characters(P(F3, "T"))[0])
    assert primitive_progression_sum(triv, one(F3), P(F3, "2")) == 1
    psi = characters(P(F3, "T"))[1]
    assert exact_equal(primitive_progression_sum(psi, one(F3), one(F3)), 0)
    assert exact_equal(primitive_progression_sum(psi, P(F3, "T"), P(F3, "2")), -1)
    assert primitive_progression_sum(psi, P(F3, "T"), P(F3, "2"), "closed") == -1
    with pytest.raises(PreconditionError):
        primitive_progression_sum(psi, P(F3, "T+1"), one(F3))


def test_n_l_examples(F2, F3):
    t = P(F3, "T")
    for u in residues(t):
        assert n_l_count(t, t, one(F3), one(F3), one(F3), u, 1) == 1
    h = P(F3, "T^2+T")
    assert n_l_count(h, P(F3, "T"), P(F3, "T"), one(F3), one(F3), one(F3), 2) == 0
    h2 = P(F2, "T^2")
    assert n_l_recursion_check(h2, P(F2, "T"), one(F2), one(F2), one(F2), one(F2), 2)
    assert n_l_recursion_rhs(h2, one(F2), one(F2), one(F2), one(F2), one(F2), 2) == euler_phi(h2) * 2
    with pytest.raises(PreconditionError):
        n_l_recursion_check(h, P(F3, "T"), P(F3, "T"), one(F3), one(F3), one(F3), 2)


def test_n_l_single_matches_g_count(F3):
    h = P(F3, "T^2+2*T")
    from fqmenon.polyring import divisors

    for d in divisors(h):
        for m in divisors(h):
            for s in units(h):
                for u in residues(d) if d.deg > 0 else [one(F3)]:
                    assert n_l_count(h, m, one(F3), d, s, u, 1) == g_count(h, d, m, u, s, "closed")


def test_weighted_sum_examples(F2, F3):
    h = P(F3, "T^2+T")
    chi = [c for c in characters(h) if conductor(c) == P(F3, "T")][0]
    # conductor T does not divide M = T+1
    assert weighted_sum_closed(h, P(F3, "T+1"), one(F3), 2, chi, one(F3)) == 0
    assert exact_equal(weighted_sum_brute(h, P(F3, "T+1"), one(F3), 2, chi, one(F3)), 0)
    triv = characters(h)[0]
    for l in (2, 3):
        assert weighted_sum_check(h, h, one(F3), l, triv, P(F3, "2"))
    t3 = P(F2, "T^3")
    for chi in characters(t3):
        if conductor(chi).deg >= 2:
            assert weighted_sum_closed(t3, t3, one(F2), 2, chi, one(F2)) == 0
            assert exact_equal(weighted_sum_brute(t3, t3, one(F2), 2, chi, one(F2)), 0)


def test_h0_examples(F2):
    h = P(F2, "T^3+T^2")
    assert h0_compute(h, one(F2)) == one(F2)
    assert h0_compute(h, P(F2, "T")) == P(F2, "T^2")
    assert h0_compute(h, h) == h
    with pytest.raises(PreconditionError):
        h0_compute(h, P(F2, "T^2+1"))


def _inst(f, h, l=1, s=0, chi=0, ws=(), S=None, F="abs", mode="auto"):
    return make_instance(f, h, l, s, chi, list(ws), S if S is not None else one(f), F, mode)


def test_menon_analogue_examples(F2):
    for text, val in (("T", 2), ("T^2", 6)):
        inst = _inst(F2, P(F2, text))
        assert gcd_sum_lhs(inst) == val == gcd_sum_rhs(inst)
        rep = verify_gcd_sum(inst)
        assert rep.passed and rep.mode == "exact"


def test_w_zero_condition_vacuous(F3):
    h = P(F3, "T^2+1")
    inst = _inst(F3, h, l=2, s=1, ws=[Poly(F3, ())], F="tau")
    assert verify_gcd_sum(inst).passed


def test_nonsquarefree_conductor_vanishes(F2):
    h = P(F2, "T^3")
    for i, chi in enumerate(characters(h)):
        if conductor(chi).deg >= 2:
            for l in (2, 3):
                inst = _inst(F2, h, l=l, chi=i, s=1, ws=[P(F2, "T")], F="phi")
                assert gcd_sum_rhs(inst) == 0
                assert exact_equal(gcd_sum_lhs(inst), 0)


def test_fault_injection(F2):
    inst = _inst(F2, P(F2, "T^2"))
    assert not verify_gcd_sum(inst, rhs_override=7).passed
    assert verify_gcd_sum(inst, rhs_override=6).passed


def test_float_mode_with_real_exponent(F3):
    inst = _inst(F3, P(F3, "T^2+T"), l=2, s=1, chi=1, ws=[P(F3, "T")], F="abs_s:0.5")
    rep = verify_gcd_sum(inst)
    assert rep.mode == "float" and rep.passed
    with pytest.raises(PreconditionError):
        verify_gcd_sum(_inst(F3, P(F3, "T"), F="abs_s:0.5", mode="exact"))


def test_complex_character_exact(F3):
    h = P(F3, "T^2")
    chis = characters(h)
    i = [k for k, c in enumerate(chis) if c.order == 6][0]
    inst = _inst(F3, h, l=2, s=1, chi=i, ws=[one(F3)], S=P(F3, "T+1"), F="one", mode="exact")
    rep = verify_gcd_sum(inst)
    assert rep.passed and rep.mode == "exact"


def test_estimate_cost_examples():
    f2, f3 = ff_make(2), ff_make(3)
    assert estimate_cost(_inst(f2, P(f2, "T^2"), l=2, s=1, ws=[one(f2)])) == 64
    assert estimate_cost(_inst(f3, P(f3, "T"))) == 3
    assert estimate_cost(_inst(f2, P(f2, "T^4"), l=3, s=2, ws=[one(f2), one(f2)])) == 2**20


def test_budget_guard(F3):
    inst = _inst(F3, P(F3, "T^3"), l=3, s=2, ws=[one(F3), one(F3)])
    with pytest.raises(BudgetExceeded):
        gcd_sum_lhs(inst, budget=10**6)


def test_instance_preconditions(F2, F3):
    h = P(F3, "T^2")
    with pytest.raises(PreconditionError):
        _inst(F3, h, S=P(F3, "T"))
    with pytest.raises(PreconditionError):
        GcdSumInstance(F3, h, 1, 1, 0, (P(F3, "T^2"),), one(F3), "abs")
    with pytest.raises(PreconditionError):
        _inst(F3, h, l=0)
    with pytest.raises(PreconditionError):
        _inst(F3, h, chi=99)
    with pytest.raises(KeyError):
        _inst(F3, h, F="zeta")


def test_report_record_shape(F2):
    rec = verify_gcd_sum(_inst(F2, P(F2, "T^2"))).to_record(timing=False)
    assert rec["lhs"] == [6.0, 0.0] and rec["lhs_exact"] == "6" and rec["elapsed_ms"] == 0
    assert set(rec) >= {"lhs", "rhs", "abs_diff", "pass", "terms", "elapsed_ms", "mode"}


SMALL = [(ff_make(2), "T^2+T"), (ff_make(2), "T^2"), (ff_make(3), "T"), (ff_make(3), "T^2+1"), (ff_make(2, 2), "T"), (ff_make(5), "T+1")]


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(SMALL), st.integers(1, 2), st.integers(0, 1), st.integers(0, 10**6),
       st.sampled_from(["one", "abs", "tau", "mu", "phi", "indicator_unit", "abs_s:-1"]))
def test_vectorized_lhs_matches_term_loop(case, l, s, seed, fname):
    f, text = case
    h = P(f, text)
    res = list(residues(h))
    us = list(units(h))
    chi = seed % euler_phi(h)
    ws = [res[(seed // 7 + i) % len(res)] for i in range(s)]
    inst = _inst(f, h, l=l, s=s, chi=chi, ws=ws, S=us[seed % len(us)], F=fname)
    assert exact_equal(gcd_sum_lhs(inst), gcd_sum_lhs_naive(inst))
    assert exact_equal(gcd_sum_lhs(inst), gcd_sum_rhs(inst))
