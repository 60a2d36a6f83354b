import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import all_sections
from wittforge import polyarith as P
from wittforge.exceptions import NotInvertibleError, RingParseError, UnsupportedRingError
from wittforge.rings import (
    GF,
    QQ,
    ZZ,
    ExtensionField,
    IntegersMod,
    PolynomialRing,
    QuotientRing,
    _dot,
    bezout_section,
    is_irreducible_over_prime_field,
    is_prime,
    prime_power,
    ring_parse,
)

DESCRIPTORS = ["Z", "Q", "Z/6", "Z/4", "GF(7)", "GF(4)", "GF(9)", "Z[x]", "GF(7)[x]/(x^2+1)", "Z/4[x]/(x^2)"]


@pytest.mark.parametrize(
    "text, canonical",
    [
        ("Z", "Z"),
        ("Q", "Q"),
        ("Z/6", "Z/6"),
        ("GF(7)", "GF(7)"),
        ("GF(4)", "GF(4)"),
        ("Z[x]", "Z[x]"),
        ("GF(7)[x]", "GF(7)[x]"),
        ("GF(17)[x]/(x^8-3)", "GF(17)[x]/(x^8+14)"),
        ("Z/4[x]/(x^2)", "Z/4[x]/(x^2)"),
        (" GF(7) [x] ", "GF(7)[x]"),
    ],
)
def test_parse_descriptor_roundtrip(text, canonical):
    R = ring_parse(text)
    assert R.descriptor == canonical
    assert ring_parse(R.descriptor) == R


@pytest.mark.parametrize("bad", ["", "R", "Z/x", "GF(6)", "GF(abc)", "Z/0", "Z[x]/(2*x+1)"])
def test_parse_rejects(bad):
    with pytest.raises(RingParseError):
        ring_parse(bad)


def test_primes_and_powers():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert prime_power(8) == (2, 3)
    assert prime_power(49) == (7, 2)
    assert prime_power(12) is None


@pytest.mark.parametrize("descriptor", DESCRIPTORS)
def test_ring_axioms_random(descriptor):
    R = ring_parse(descriptor)
    rng = random.Random(descriptor)
    for _ in range(200):
        a, b, c = (R.random_element(rng) for _ in range(3))
        assert R.add(R.add(a, b), c) == R.add(a, R.add(b, c))
        assert R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c))
        assert R.mul(a, b) == R.mul(b, a)
        assert R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c))
        assert R.sub(a, a) == R.zero
        assert R.mul(a, R.one) == a


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16, 25, 27])
def test_finite_fields_every_nonzero_is_unit(q):
    F = GF(q)
    elts = F.elements()
    assert len(elts) == q == F.cardinality
    for x in elts:
        if F.is_zero(x):
            assert not F.is_unit(x)
        else:
            assert F.mul(x, F.inv(x)) == F.one


def test_gf4_structure():
    F = GF(4)
    assert isinstance(F, ExtensionField)
    assert F.modulus == (1, 1, 1)
    g = F.parse("g")
    # g^2 = g + 1 and g has order 3
    assert F.mul(g, g) == F.parse("g+1")
    assert F.pow(g, 3) == F.one
    assert F.characteristic == 2


def test_extension_modulus_is_irreducible():
    for q in (4, 8, 9, 25, 27):
        F = GF(q)
        assert is_irreducible_over_prime_field(F.base, F.modulus)


@pytest.mark.parametrize(
    "R, text, expected",
    [
        (ZZ, "-12", -12),
        (QQ, "3/6", Fraction(1, 2)),
        (IntegersMod(6), "-1", 5),
        (GF(7), "10", 3),
        (PolynomialRing(ZZ), "x^2-3*x+2", (2, -3, 1)),
        (ring_parse("GF(7)[x]/(x^2+1)"), "x^3", (0, 6)),
    ],
)
def test_parse_elements(R, text, expected):
    assert R.parse(text) == expected
    assert R.parse(R.format(R.parse(text))) == expected


def test_element_wrapper_operators():
    R = GF(7)
    a = R(3)
    assert a * 5 == 1
    assert a.inverse() == 5
    assert (a + 4) == 0
    assert 2 - a == 6
    assert a ** 6 == 1
    assert str(-a) == "4"
    with pytest.raises(RingParseError):
        a + GF(5)(1)


def test_units_in_non_fields():
    Z6 = IntegersMod(6)
    assert [x for x in range(6) if Z6.is_unit(x)] == [1, 5]
    with pytest.raises(NotInvertibleError):
        Z6.inv(2)
    assert ZZ.is_unit(-1) and not ZZ.is_unit(2)
    Z4x = PolynomialRing(IntegersMod(4))
    u = Z4x.parse("2*x+1")
    assert Z4x.is_unit(u)
    assert Z4x.mul(u, Z4x.inv(u)) == Z4x.one
    assert not Z4x.is_unit(Z4x.parse("x+1"))


def test_quotient_ring_inverse():
    R = ring_parse("GF(7)[x]/(x^2)")
    u = R.parse("x+1")
    assert R.inv(u) == R.parse("6*x+1")
    assert not R.is_unit(R.parse("x"))
    S = ring_parse("Z/8[x]/(x^2+1)")
    v = S.parse("2*x+1")
    assert S.mul(v, S.inv(v)) == S.one


def test_quotient_ring_requires_monic_modulus():
    with pytest.raises(RingParseError):
        QuotientRing(ZZ, (1, 2))


@pytest.mark.parametrize(
    "descriptor, a, expected",
    [
        ("Z", (2, 3), (-1, 1)),
        ("Z", (2, 4), None),
        ("Z", (1, 0, 0), (1, 0, 0)),
        ("Z/6", (2, 3), (5, 1)),
        ("Z/9", (4, 6), (4, 5)),
    ],
)
def test_bezout_section_examples(descriptor, a, expected):
    R = ring_parse(descriptor)
    b = bezout_section(a, R)
    assert b == expected
    if b is not None:
        assert _dot(R, a, b) == R.one


@pytest.mark.parametrize("descriptor", ["Z/4", "Z/6", "Z/9", "GF(2)", "GF(3)", "GF(4)", "GF(3)[x]/(x^2)"])
def test_bezout_section_agrees_with_brute_force(descriptor):
    R = ring_parse(descriptor)
    for a in [(x, y) for x in R.elements() for y in R.elements()]:
        b = bezout_section(a, R)
        sections = all_sections(R, a)
        assert (b is None) == (not sections)
        if b is not None:
            assert b in sections


def test_bezout_section_polynomials_over_field():
    R = ring_parse("GF(5)[x]")
    a = (R.parse("x^2+2"), R.parse("x+3"))
    b = bezout_section(a, R)
    assert _dot(R, a, b) == R.one
    assert bezout_section((R(R.parse("x")), R(R.parse("x^2")))) is None
    with pytest.raises(RingParseError):
        bezout_section((1, 2))


def test_bezout_section_unsupported():
    with pytest.raises(UnsupportedRingError):
        bezout_section((ring_parse("Z[x]").parse("x"),), ring_parse("Z[x]"))


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(-10**6, 10**6), min_size=1, max_size=5))
def test_bezout_section_integers_property(a):
    b = bezout_section(a, ZZ)
    if b is None:
        assert math.gcd(*a) != 1
    else:
        assert sum(x * y for x, y in zip(a, b)) == 1


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 60), st.lists(st.integers(0, 10**4), min_size=1, max_size=4))
def test_bezout_section_residue_property(n, a):
    R = IntegersMod(n)
    a = tuple(x % n for x in a)
    b = bezout_section(a, R)
    if b is not None:
        assert _dot(R, a, b) == R.one


def test_polynomial_gcd_and_xgcd():
    F = GF(7)
    f = P.mul(F, (1, 1), (2, 1))  # (x+1)(x+2)
    g = P.mul(F, (1, 1), (3, 1))  # (x+1)(x+3)
    d, s, t = P.xgcd(F, f, g)
    assert d == (1, 1)
    assert P.add(F, P.mul(F, s, f), P.mul(F, t, g)) == d


def test_polynomial_format_parse():
    R = ring_parse("GF(4)[x]")
    f = R.parse("(g+1)*x^2+g*x+1")
    assert R.format(f) == "(g+1)*x^2+g*x+1"
    assert PolynomialRing(ZZ).format(()) == "0"
