import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from leavitt.rings import (QQ, ZZ, RingElem, RingMismatchError, RingSpec, add,
                           is_unit, mul, zmod)


def test_add_examples():
    assert add(ZZ.element(2), ZZ.element(3)) == ZZ.element(5)
    assert add(zmod(6).element(4), zmod(6).element(5)) == zmod(6).element(3)
    assert add(QQ.element(Fraction(1, 2)), QQ.element(Fraction(1, 3))) == QQ.element(Fraction(5, 6))


def test_mul_examples():
    assert mul(zmod(6).element(2), zmod(6).element(3)) == zmod(6).element(0)
    x = ZZ.element(123456789123456789123456789)
    assert mul(ZZ.element(1), x) == x
    assert mul(QQ.element(Fraction(2, 3)), QQ.element(Fraction(3, 2))) == QQ.element(1)


def test_is_unit_examples():
    assert is_unit(ZZ.element(1)) and is_unit(ZZ.element(-1))
    assert not is_unit(ZZ.element(2))
    assert is_unit(zmod(6).element(5))
    assert is_unit(QQ.element(Fraction(7, 3)))
    assert not is_unit(QQ.element(0))


def test_mismatch_raises():
    with pytest.raises(RingMismatchError):
        add(ZZ.element(1), zmod(5).element(1))


@pytest.mark.parametrize("text,spec", [("z", ZZ), ("q", QQ), ("zmod:7", zmod(7)), (" ZMOD:12 ", zmod(12))])
def test_parse(text, spec):
    assert RingSpec.parse(text) == spec
    assert RingSpec.parse(str(spec)) == spec


@pytest.mark.parametrize("bad", ["zmod:1", "zmod:x", "r", "zmod:0", ""])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        RingSpec.parse(bad)


def test_residues_and_fractions_are_normalized():
    assert zmod(5).element(-1).value == 4
    v = QQ.element(Fraction(-4, -6)).value
    assert (v.numerator, v.denominator) == (2, 3)
    assert zmod(5).normalize(Fraction(1, 2)) == 3


@pytest.mark.parametrize("n", range(2, 31))
def test_unit_iff_coprime_exhaustive(n):
    R = zmod(n)
    for x in range(n):
        assert is_unit(R.element(x)) == (math.gcd(x, n) == 1)


ints = st.integers(-10**30, 10**30)
rings = st.sampled_from([ZZ, QQ, zmod(2), zmod(4), zmod(6), zmod(97)])


@given(rings, ints, ints, ints)
def test_ring_axioms(R, a, b, c):
    x, y, z = R.element(a), R.element(b), R.element(c)
    zero, one = R.element(0), R.element(1)
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x + y == y + x and x * y == y * x
    assert x * (y + z) == x * y + x * z
    assert x + zero == x and x * one == x and x * zero == zero
    assert x - x == zero


@given(st.fractions(), st.fractions())
def test_rationals_exact(p, q):
    assert (QQ.element(p) * QQ.element(q)).value == p * q


def test_elements_are_hashable_and_immutable():
    x = ZZ.element(3)
    assert {x: 1}[ZZ.element(3)] == 1
    with pytest.raises(AttributeError):
        x.value = 4
    assert isinstance(x, RingElem)
