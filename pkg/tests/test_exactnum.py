from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from formalnf.exactnum import (
    I,
    ONE,
    ZERO,
    GaussianRational,
    as_gaussian,
    conjugate,
    field_arith,
    parse_gaussian,
    parse_rational,
    rational_to_str,
    sqrt_if_exact,
)

from helpers import gaussians, rationals


def test_rational_sum():
    assert field_arith(Fraction(1, 2), Fraction(1, 3), "add") == Fraction(5, 6)


def test_gaussian_norm():
    assert field_arith(GaussianRational(1, 2), GaussianRational(1, -2), "mul") == 5


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        field_arith(ONE, ZERO, "div")
    with pytest.raises(ValueError):
        field_arith(ONE, ONE, "pow")


def test_conjugate_examples():
    assert conjugate(GaussianRational(3, 4)) == GaussianRational(3, -4)
    assert conjugate(7) == 7
    assert I * I == -1


@pytest.mark.parametrize("q, root", [
    (Fraction(9, 4), GaussianRational(Fraction(3, 2))),
    (-4, GaussianRational(0, 2)),
    (2, None),
    (Fraction(-1, 9), GaussianRational(0, Fraction(1, 3))),
    (0, ZERO),
])
def test_sqrt_if_exact(q, root):
    assert sqrt_if_exact(q) == root


def test_canonical_representation():
    a = GaussianRational(Fraction(2, 4), Fraction(-6, 8))
    b = GaussianRational(Fraction(1, 2), Fraction(-3, 4))
    assert a == b and hash(a) == hash(b) and repr(a) == repr(b)
    assert a.re.denominator == 2 and a.im == Fraction(-3, 4)


def test_mixed_operands():
    x = GaussianRational(1, 1)
    assert x + 1 == GaussianRational(2, 1)
    assert 1 - x == GaussianRational(0, -1)
    assert x * Fraction(1, 2) == GaussianRational(Fraction(1, 2), Fraction(1, 2))
    assert 2 / x == GaussianRational(1, -1)
    assert x ** -2 == GaussianRational(0, Fraction(-1, 2))
    assert x == GaussianRational(1, 1) and x != 1


@pytest.mark.parametrize("text, value", [
    ("3", GaussianRational(3)),
    ("-1/2", GaussianRational(Fraction(-1, 2))),
    ("2i", GaussianRational(0, 2)),
    ("-i", GaussianRational(0, -1)),
    ("1/2-3/4i", GaussianRational(Fraction(1, 2), Fraction(-3, 4))),
    ("-5+i", GaussianRational(-5, 1)),
])
def test_parse_gaussian(text, value):
    assert parse_gaussian(text) == value
    assert parse_gaussian(str(value)) == value


@pytest.mark.parametrize("bad", ["0.5", "1e3", "1/0", "", "abc", "1//2"])
def test_parse_rational_rejects(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_json_round_trip():
    x = GaussianRational(Fraction(-7, 3), 5)
    assert x.to_json() == {"re": "-7/3", "im": "5"}
    assert GaussianRational.from_json(x.to_json()) == x
    assert GaussianRational.from_json({"re": "4"}) == 4
    with pytest.raises(ValueError):
        GaussianRational.from_json({"re": "1", "imag": "2"})
    assert rational_to_str(Fraction(6, -4)) == "-3/2"


@given(gaussians, gaussians, gaussians)
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x and x * y == y * x
    assert (x + y) - y == x
    if y:
        assert (x / y) * y == x


@given(gaussians)
def test_conjugation_properties(x):
    assert conjugate(conjugate(x)) == x
    assert (x * conjugate(x)).im == 0
    assert (x * conjugate(x)).re == x.norm()


@given(rationals)
def test_sqrt_squares_back(q):
    r = sqrt_if_exact(q)
    if r is not None:
        assert r * r == q
    sq = sqrt_if_exact(q * q)
    assert sq == abs(q)
    assert sqrt_if_exact(-q * q) == GaussianRational(0, abs(q))


@given(gaussians)
def test_equal_values_share_representation(x):
    y = as_gaussian(x.re) + as_gaussian(x.im) * I
    assert y == x and hash(y) == hash(x) and str(y) == str(x)


@given(st.integers(), st.integers(1, 10**12))
def test_rational_string_round_trip(p, q):
    assert parse_rational(rational_to_str(Fraction(p, q))) == Fraction(p, q)
