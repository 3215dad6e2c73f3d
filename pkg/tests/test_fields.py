from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cgva.fields import (FieldError, PrimeField, QQ, field_spec_string,
                         is_prime, parse_field_spec)

F7 = PrimeField(7)


def test_rationals_parse_and_format_round_trip():
    for text in ["0", "1", "-3", "3/4", "-22/7", "100000000000001/3"]:
        x = QQ.parse(text)
        assert QQ.format(x) == str(Fraction(text))
        assert QQ.parse(QQ.format(x)) == x


def test_rationals_parse_rejects_junk():
    for bad in ["", "one", "1/0", "3.x"]:
        with pytest.raises(FieldError):
            QQ.parse(bad)


def test_rationals_basic_identities():
    a = QQ.parse("3/4")
    b = QQ.parse("-2/5")
    assert a + b == QQ.parse("7/20")
    assert a * b == QQ.parse("-3/10")
    assert a / a == QQ.one
    assert a - a == QQ.zero
    assert not QQ.zero
    assert QQ.one


def test_fp_arithmetic():
    a = F7.from_int(3)
    b = F7.from_int(5)
    assert a + b == 1
    assert a - b == 5
    assert a * b == 1
    assert a / b == 2  # 3 * 5^{-1} = 3 * 3 = 9 = 2
    assert -a == 4
    assert a ** 6 == 1  # Fermat
    assert a ** -1 == 5


def test_fp_int_interop_both_sides():
    a = F7.from_int(3)
    assert 2 + a == 5
    assert 2 - a == 6
    assert 2 * a == 6
    assert 1 / a == 5
    assert a + 11 == 0  # ints reduce mod p on contact


def test_fp_from_fraction_inverts_denominator():
    assert F7.from_fraction(Fraction(1, 3)) == 5
    assert F7.parse("1/3") == 5
    assert F7.parse("-1/3") == 2
    with pytest.raises(FieldError):
        F7.from_fraction(Fraction(1, 7))


def test_fp_zero_division():
    with pytest.raises(ZeroDivisionError):
        F7.one / F7.zero
    with pytest.raises(ZeroDivisionError):
        F7.zero ** -2


def test_fp_rejects_rational_mixing():
    with pytest.raises(FieldError):
        F7.one + QQ.parse("1/2")
    with pytest.raises(FieldError):
        F7.one * Fraction(1, 3)


def test_fp_rejects_cross_field_mixing():
    with pytest.raises(FieldError):
        F7.one + PrimeField(11).one


def test_small_fields_intern_their_elements():
    # allocation-free arithmetic relies on this
    assert F7.from_int(3) is F7.from_int(10)
    assert (F7.from_int(2) + F7.from_int(5)) is F7.zero


def test_large_prime_field_skips_interning():
    p = 1048583  # above the interning cutoff
    big = PrimeField(p)
    assert big._elems is None
    a = big.from_int(123456)
    b = big.from_int(p - 1)
    assert a * b == big.from_int(-123456)
    assert (a / b) * b == a
    assert big.parse("1/2") * 2 == 1


def test_characteristic_two_is_refused():
    with pytest.raises(FieldError, match="divides by 2"):
        PrimeField(2)


def test_composite_modulus_is_refused():
    with pytest.raises(FieldError, match="not prime"):
        PrimeField(9)


def test_parse_field_spec():
    assert parse_field_spec("q") is QQ
    assert parse_field_spec("fp:7") == F7
    assert field_spec_string(QQ) == "q"
    assert field_spec_string(PrimeField(11)) == "fp:11"
    for bad in ["r", "fp:", "fp:abc", "f7"]:
        with pytest.raises(FieldError):
            parse_field_spec(bad)


def test_is_prime_agrees_with_trial_division_below_10000():
    def trial(n):
        if n < 2:
            return False
        k = 2
        while k * k <= n:
            if n % k == 0:
                return False
            k += 1
        return True

    for n in range(10000):
        assert is_prime(n) == trial(n), n


def test_is_prime_on_large_numbers():
    assert is_prime(46337)
    assert is_prime(2 ** 61 - 1)
    assert not is_prime(2 ** 61 - 2)
    assert not is_prime(341550071728321)  # strong pseudoprime to small bases


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50))
@settings(max_examples=60, deadline=None)
def test_fp_reduction_is_a_ring_map(x, y, z):
    """Reducing mod 7 commutes with + and *, after the fact or before."""
    red = F7.from_int
    assert red(x + y * z) == red(x) + red(y) * red(z)
    assert red((x + y) * z) == (red(x) + red(y)) * red(z)


@given(st.fractions(min_value=-40, max_value=40, max_denominator=12),
       st.fractions(min_value=-40, max_value=40, max_denominator=12))
@settings(max_examples=60, deadline=None)
def test_from_fraction_is_a_field_map_where_defined(qx, qy):
    if qx.denominator % 7 == 0 or qy.denominator % 7 == 0:
        return
    if (qx + qy).denominator % 7 == 0 or (qx * qy).denominator % 7 == 0:
        return
    lift = F7.from_fraction
    assert lift(qx + qy) == lift(qx) + lift(qy)
    assert lift(qx * qy) == lift(qx) * lift(qy)
