import itertools
from fractions import Fraction

import pytest

from ararank.fields import QQ, Field4, PrimeField, is_prime, parse_field


def test_is_prime_matches_trial_division():
    def slow(n):
        return n >= 2 and all(n % d for d in range(2, n))

    assert [n for n in range(200) if is_prime(n)] == [n for n in range(200) if slow(n)]


@pytest.mark.parametrize("p", [0, 1, 4, 9, 65536, 65537])
def test_prime_field_rejects_bad_modulus(p):
    with pytest.raises(ValueError):
        PrimeField(p)


def test_prime_field_arithmetic():
    F = PrimeField(7)
    assert F.add(5, 4) == 2
    assert F.mul(3, 5) == 1
    assert F.inv(3) == 5
    assert F.from_fraction(1, 2) == 4
    assert F.neg(0) == 0
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


def test_rationals_are_exact():
    assert QQ.add(Fraction(1, 3), Fraction(1, 6)) == Fraction(1, 2)
    assert QQ.from_fraction(2, 4) == Fraction(1, 2)
    assert QQ.format(Fraction(-3, 4)) == "-3/4"


def test_field4_axioms_exhaustive():
    F = Field4()
    els = list(F.elements())
    assert len(els) == 4
    zero, one = F.zero(), F.one()
    for a, b, c in itertools.product(els, repeat=3):
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    for a, b in itertools.product(els, repeat=2):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
    for a in els:
        assert F.add(a, zero) == a and F.mul(a, one) == a
        assert F.add(a, F.neg(a)) == zero
        assert F.add(a, a) == zero  # characteristic 2
        if a != zero:
            assert F.mul(a, F.inv(a)) == one


def test_field4_primitive_element_generates_units():
    F = Field4()
    w = F.PRIMITIVE
    powers = {F.pow(w, k) for k in range(3)}
    assert powers == {e for e in F.elements() if e != F.zero()}
    # w^2 = w + 1, and w is neither 0 nor 1
    assert F.mul(w, w) == F.add(w, F.one())
    assert w not in (F.zero(), F.one())
    assert [F.format(e) for e in F.elements()] == ["0", "1", "w", "w+1"]


@pytest.mark.parametrize("text,expected", [("QQ", QQ), ("GF(5)", PrimeField(5)), ("GF4", Field4())])
def test_parse_field(text, expected):
    assert parse_field(text) == expected


@pytest.mark.parametrize("text", ["GF(6)", "GF(8)", "RR", ""])
def test_parse_field_rejects(text):
    with pytest.raises(ValueError):
        parse_field(text)
