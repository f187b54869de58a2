import itertools

import pytest
from hypothesis import given, strategies as st

from fqmenon.gf import FieldError, FieldParseError, ff_make, fp_is_irreducible, parse_field

SMALL_FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (2, 4), (2, 5), (3, 3), (5, 2), (2, 6)]


def test_prime_field_elements(F2):
    assert [e.code for e in F2.elements()] == [0, 1]
    assert F2.q == 2


def test_f4_from_conway_quadratic(F4):
    a = F4.gen
    assert a * a == a + F4.one


def test_reducible_modulus_rejected():
    with pytest.raises(FieldError):
        ff_make(2, 2, [1, 0, 1])


@pytest.mark.parametrize("p", [0, 1, 4, 9, 15])
def test_non_prime_rejected(p):
    with pytest.raises(FieldError):
        ff_make(p)


def test_non_monic_modulus_rejected():
    with pytest.raises(FieldError):
        ff_make(3, 2, [1, 0, 2])


def test_small_examples(F2, F3):
    assert F3(2).inverse() == F3(2)
    assert F2(1) + F2(1) == F2.zero
    assert F2(1).trace() == F2(1)


def test_trace_f4(F4):
    a = F4.gen
    assert a.trace() == F4(1)
    assert F4.one.trace() == F4.zero


def test_parse_field():
    f = parse_field("p=2,n=2,mod=[1,1,1]")
    assert (f.p, f.n, f.q) == (2, 2, 4)
    assert parse_field("p=5").q == 5
    assert str(f) == "p=2,n=2,mod=[1,1,1]"
    with pytest.raises(FieldParseError):
        parse_field("q=5")


@pytest.mark.parametrize("p,n", [pf for pf in SMALL_FIELDS if pf[0] ** pf[1] <= 64])
def test_field_axioms_exhaustive(p, n):
    f = ff_make(p, n)
    els = list(f.elements())
    zero, one = f.zero, f.one
    for a, b in itertools.product(els, repeat=2):
        assert a + b == b + a
        assert a * b == b * a
        assert (a - b) + b == a
    for a, b, c in itertools.islice(itertools.product(els, repeat=3), 4000):
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
    for a in els:
        assert a + zero == a and a * one == a
        if a != zero:
            assert a * a.inverse() == one
            assert a ** (f.q - 1) == one


@pytest.mark.parametrize("p,n", SMALL_FIELDS)
def test_trace_linear_and_frobenius_invariant(p, n):
    f = ff_make(p, n)
    els = list(f.elements())[:64]
    for a in els:
        t = a.trace()
        assert t.code < p
        assert (a**p).trace() == t
    for a, b in zip(els, els[1:] + els[:1]):
        assert (a + b).trace() == a.trace() + b.trace()
    # the trace map is onto the prime subfield
    assert {a.trace().code for a in f.elements()} == set(range(p))


@pytest.mark.parametrize("p,n", SMALL_FIELDS)
def test_default_modulus_irreducible(p, n):
    f = ff_make(p, n)
    assert fp_is_irreducible(list(f.modulus), p)
    assert len(set(f.elements())) == f.q


def test_cross_field_operations_rejected(F2, F3):
    with pytest.raises(FieldError):
        F2(1) + F3(1)


@given(st.integers(0, 63), st.integers(0, 63), st.integers(0, 63))
def test_f64_ring_laws(x, y, z):
    f = ff_make(2, 6)
    a, b, c = f.from_code(x), f.from_code(y), f.from_code(z)
    assert a * (b + c) == a * b + a * c
    assert (a + b) + c == a + (b + c)
