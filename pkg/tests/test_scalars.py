from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from artifact.scalars import (
    IncompatibleFieldError,
    Surd,
    display,
    format_scalar,
    make_surd,
    parse_scalar,
    scalar_sign,
    sqrt_exact,
    to_float,
)


def test_rational_addition():
    assert Fraction(1, 2) + Fraction(1, 3) == Fraction(5, 6)


def test_conjugate_product_is_rational():
    x = make_surd(3, -1, 7, 2)
    y = make_surd(3, 1, 7, 2)
    assert x * y == Fraction(1, 2)
    assert isinstance(x * y, Fraction)


def test_perfect_square_radicand_collapses():
    assert make_surd(6, 1, 36, 3) == 4
    assert make_surd(6, -1, 36, 3) == 0


def test_normal_form():
    x = make_surd(4, 2, 12, 2)  # (4 + 4 sqrt 3)/2 = 2 + 2 sqrt 3
    assert (x.p, x.q, x.d, x.r) == (2, 2, 3, 1)
    y = make_surd(2, 2, 3, -4)
    assert y.r > 0 and (y.p, y.q) == (-1, -1)
    assert make_surd(5, 0, 7, 10) == Fraction(1, 2)


def test_negative_radicand_rejected():
    with pytest.raises(ValueError):
        make_surd(1, 1, -3)


@pytest.mark.parametrize(
    "x, expected",
    [(make_surd(4, -1, 15), 1), (Fraction(6 - 6, 3), 0), (Fraction(-11, 8), -1), (make_surd(-4, 1, 15), -1)],
)
def test_sign(x, expected):
    assert scalar_sign(x) == expected


def test_float_sign_uses_tolerance():
    assert scalar_sign(mpmath.mpf("1e-12"), 1e-10) == 0
    assert scalar_sign(mpmath.mpf("-1e-8"), 1e-10) == -1


def test_to_float_values():
    assert to_float(Fraction(21, 512), 128) == mpmath.mpf("0.041015625")
    with mpmath.workprec(256):
        assert abs(to_float(make_surd(0, 1, 15)) - mpmath.sqrt(15)) < mpmath.mpf(2) ** -250
    assert mpmath.nstr(to_float(make_surd(3, -1, 7, 2)), 6) == "0.177124"
    with pytest.raises(ValueError):
        to_float(Fraction(1), 32)


def test_mixed_fields_raise():
    with pytest.raises(IncompatibleFieldError):
        make_surd(0, 1, 2) + make_surd(0, 1, 3)
    with pytest.raises(IncompatibleFieldError):
        make_surd(0, 1, 2) * mpmath.mpf(2)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        make_surd(1, 1, 2) / 0
    with pytest.raises(ZeroDivisionError):
        make_surd(1, 1, 2, 0)


def test_surd_constructor_is_private():
    with pytest.raises(TypeError):
        Surd(1, 1, 2)


def test_sqrt_exact():
    assert sqrt_exact(4) == 2
    assert sqrt_exact(Fraction(9, 4)) == Fraction(3, 2)
    r = sqrt_exact(3)
    assert r * r == 3


@pytest.mark.parametrize(
    "text, value",
    [("5/6", Fraction(5, 6)), ("(3-1*sqrt(7))/2", make_surd(3, -1, 7, 2)), ("0.25", Fraction(1, 4)), ("-4", Fraction(-4))],
)
def test_parse(text, value):
    assert parse_scalar(text) == value


def test_parse_float_keeps_precision_tag():
    x = parse_scalar("float128:0.1")
    assert isinstance(x, mpmath.mpf)
    assert format_scalar(x, 128).startswith("float128:0.1")


@pytest.mark.parametrize("bad", ["abc", "sqrt(", "1/0x"])
def test_parse_rejects_garbage(bad):
    with pytest.raises(ValueError):
        parse_scalar(bad)


def test_display_six_digits():
    assert display(mpmath.mpf(2) / 3) == "0.666667"
    assert display(Fraction(2, 3)) == "2/3"


small = st.integers(-50, 50)
radicands = st.sampled_from([2, 3, 5, 6, 7, 15])


@st.composite
def surds(draw, d=None):
    d = draw(radicands) if d is None else d
    q = draw(small.filter(bool))
    return make_surd(draw(small), q, d, draw(st.integers(1, 20)))


@given(st.data())
def test_ring_identities_in_one_field(data):
    d = data.draw(radicands)
    x, y, z = (data.draw(surds(d)) for _ in range(3))
    assert (x + y) * z - (x * z + y * z) == 0
    assert x * (y * z) == (x * y) * z
    assert x * x.inverse() == 1
    assert (x - y) + y == x
    assert x**3 == x * x * x


@given(surds())
def test_format_parse_round_trip(x):
    assert parse_scalar(format_scalar(x)) == x


@given(surds())
def test_sign_matches_high_precision_float(x):
    v = to_float(x, 256)
    if abs(v) > mpmath.mpf(2) ** -200:
        assert scalar_sign(x) == (1 if v > 0 else -1)


@given(st.fractions(max_denominator=1000), st.fractions(max_denominator=1000).filter(bool))
def test_rational_field_axioms(a, b):
    assert (a / b) * b == a
    assert a - a == 0
