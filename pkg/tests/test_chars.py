import numpy as np
import pytest

from fqmenon.chars import (
    AdditiveCharacter,
    additive_char_eval,
    additive_character,
    additive_sum_over_multiples,
    all_additive_characters,
    char_eval,
    characters,
    conductor,
    induced_moduli,
    is_primitive,
    primitive_lift,
    trivial_character,
    unit_group,
)
from fqmenon.gf import ff_make
from fqmenon.multfunc import euler_phi
from fqmenon.polyring import Poly, PolyError, divisors, monic_polys, units
from fqmenon.residue import ring_of
from fqmenon.scalar import CycloSum, RootOfUnity, exact_equal

from conftest import P


def grid():
    for f, maxdeg in ((ff_make(2), 3), (ff_make(3), 2), (ff_make(2, 2), 2)):
        for d in range(1, maxdeg + 1):
            yield from monic_polys(f, d)


def test_unit_group_examples(F2, F3):
    g = unit_group(P(F3, "T"))
    assert g.orders == [2] and g.generator_polys() == [P(F3, "2")]
    g = unit_group(P(F2, "T^2"))
    assert g.orders == [2] and g.generator_polys() == [P(F2, "T+1")]
    assert unit_group(P(F2, "T^2+T")).orders == []


def test_unit_group_structure():
    for h in grid():
        g = unit_group(h)
        assert int(np.prod(g.orders)) == euler_phi(h)
        assert len(g.dlog) == euler_phi(h)


def test_character_examples(F3):
    h = P(F3, "T")
    chis = characters(h)
    assert len(chis) == 2 and chis[0].is_trivial()
    assert char_eval(chis[1], P(F3, "2")) == -1
    assert char_eval(chis[1], Poly(F3, ())) == 0
    assert conductor(chis[1]) == h and conductor(chis[0]) == P(F3, "1")


def test_conductor_t_squared(F2):
    h = P(F2, "T^2")
    chi = [c for c in characters(h) if c(P(F2, "T+1")) == -1][0]
    assert conductor(chi) == h
    assert induced_moduli(chi) == [h]


def test_lift_recovers_character_mod_t(F3):
    h = P(F3, "T^2+T")
    chi = [c for c in characters(h) if c(P(F3, "2")) == -1 and conductor(c) == P(F3, "T")][0]
    psi = primitive_lift(chi)
    assert psi.modulus == P(F3, "T") and psi(P(F3, "2")) == -1
    triv = primitive_lift(trivial_character(h))
    assert triv.modulus == P(F3, "1") and triv(P(F3, "T")) == 1


def test_orthogonality_both_ways():
    for h in grid():
        ring = ring_of(h)
        chis = characters(h)
        phi = euler_phi(h)
        assert len(chis) == phi
        e = chis[0].group.exponent
        for chi in chis:
            ks = chi.value_exponents[ring.unit_indices]
            total = CycloSum(e, np.bincount(ks, minlength=e).tolist())
            assert exact_equal(total, phi if chi.is_trivial() else 0)
        one = int(ring.index(Poly.const(h.field, 1)))
        for a in ring.unit_indices:
            ks = [int(c.value_exponents[a]) for c in chis]
            total = CycloSum(e, np.bincount(ks, minlength=e).tolist())
            assert exact_equal(total, phi if a == one else 0)


def test_conductor_and_lift_properties():
    for h in grid():
        for chi in characters(h):
            d = conductor(chi)
            assert all(d.divides(m) for m in induced_moduli(chi))
            psi = primitive_lift(chi)
            assert is_primitive(psi)
            for u in units(h):
                assert chi(u) == psi(u)


def test_additive_examples(F2):
    t, t2 = P(F2, "T"), P(F2, "T^2")
    lam = additive_character(t, P(F2, "1"))
    assert additive_char_eval(lam, P(F2, "1")) == -1
    assert additive_character(t2, P(F2, "1"))(t) == -1
    zero = additive_character(t2, Poly(F2, ()))
    assert all(zero(b) == 1 for b in ring_of(t2).polys)
    assert [[int(l.value_exponents[i]) for i in range(2)] for l in all_additive_characters(t)] == [[0, 0], [0, 1]]
    with pytest.raises(PolyError):
        AdditiveCharacter(t, t2)


def test_additive_sum_examples(F2):
    t2 = P(F2, "T^2")
    lam = additive_character(t2, P(F2, "1"))
    assert additive_sum_over_multiples(lam, P(F2, "T")) == 0
    assert exact_equal(additive_sum_over_multiples(lam, P(F2, "T"), "brute"), 0)
    assert additive_sum_over_multiples(lam, t2) == 1
    zero = additive_character(t2, Poly(F2, ()))
    assert additive_sum_over_multiples(zero, P(F2, "T")) == 2


def additive_grid():
    for f in (ff_make(2), ff_make(3), ff_make(2, 2), ff_make(5), ff_make(7), ff_make(3, 2)):
        for d in range(1, 7):
            if f.q**d > 64:
                break
            yield from monic_polys(f, d)


def test_additive_characters_distinct_and_additive():
    for h in additive_grid():
        ring = ring_of(h)
        tables = [l.value_exponents for l in all_additive_characters(h)]
        assert len({t.tobytes() for t in tables}) == ring.size
        p = h.field.p
        for t in tables:
            assert np.array_equal((t[:, None] + t[None, :]) % p, t[ring.add])


def test_additive_sum_closed_form():
    for h in additive_grid():
        if ring_of(h).size > 27:
            continue
        for lam in all_additive_characters(h):
            for m in divisors(h):
                assert exact_equal(additive_sum_over_multiples(lam, m, "brute"), additive_sum_over_multiples(lam, m))


def test_root_of_unity_arithmetic():
    z = RootOfUnity(6, 1)
    assert z * z * z == -1
    assert (z * z.conjugate()) == 1
    assert abs(complex(RootOfUnity(4, 1)) - 1j) < 1e-15
    assert CycloSum(3, [1, 1, 1]).is_zero()
