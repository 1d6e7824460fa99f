import math
import random
from fractions import Fraction

import pytest

from qhpp import exact


def test_hj_expand_known_values():
    assert exact.hj_expand(9, 1) == (9,)
    assert exact.hj_expand(36, 19) == (2, 10, 2)
    assert exact.hj_expand(9, 4) == (3, 2, 2, 2)
    assert exact.hj_expand(12, 7) == (2, 4, 2)
    assert exact.hj_expand(4, 3) == (2, 2, 2)


def test_hj_value_known_values():
    assert exact.hj_value([2]) == (2, 1)
    assert exact.hj_value([2, 2, 3, 2, 2]) == (15, 11)
    assert exact.hj_value([3, 10, 2, 2]) == (81, 28)
    assert exact.hj_value([2, 2, 12, 2, 2]) == (96, 65)


def test_hj_round_trip_exhaustive_to_200():
    for p in range(2, 201):
        for q in range(1, p):
            if math.gcd(p, q) != 1:
                continue
            cf = exact.hj_expand(p, q)
            assert all(a >= 2 for a in cf)
            assert exact.hj_value(cf) == (p, q)


def test_hj_expand_rejects_bad_input():
    with pytest.raises(ValueError):
        exact.hj_expand(4, 4)
    with pytest.raises(ValueError):
        exact.hj_expand(4, 0)
    with pytest.raises(ValueError):
        exact.hj_expand(4, 6)
    with pytest.raises(ValueError):
        exact.hj_expand(9, 6)  # gcd 3


def test_hj_value_rejects_bad_coefficients():
    with pytest.raises(ValueError):
        exact.hj_value([])
    with pytest.raises(ValueError):
        exact.hj_value([2, 1, 2])
    with pytest.raises(ValueError):
        exact.hj_value([0])


def test_is_perfect_square():
    assert exact.is_perfect_square(169)
    assert exact.is_perfect_square(1)
    assert not exact.is_perfect_square(2**5 * 3)
    squares = {n * n for n in range(1, 101)}
    for n in range(1, 10001):
        assert exact.is_perfect_square(n) == (n in squares)


def test_is_square_unit_mod_known_values():
    assert not exact.is_square_unit_mod(7, 12)
    assert not exact.is_square_unit_mod(29, 36)
    assert not exact.is_square_unit_mod(5, 9)
    for n in range(2, 60):
        assert exact.is_square_unit_mod(1, n)


def test_is_square_unit_mod_agrees_with_enumeration():
    for n in range(2, 101):
        units = [c for c in range(1, n) if math.gcd(c, n) == 1]
        squares = {u * u % n for u in units}
        for c in units:
            assert exact.is_square_unit_mod(c, n) == (c in squares)


def test_is_square_unit_mod_rejects_non_units():
    with pytest.raises(ValueError):
        exact.is_square_unit_mod(4, 12)
    with pytest.raises(ValueError):
        exact.is_square_unit_mod(0, 5)


class PairRational:
    """Independent big-integer pair arithmetic used as an oracle."""

    def __init__(self, num, den=1):
        if den == 0:
            raise ZeroDivisionError
        if den < 0:
            num, den = -num, -den
        g = math.gcd(abs(num), den)
        g = g or 1
        self.num, self.den = num // g, den // g

    def add(self, o):
        return PairRational(self.num * o.den + o.num * self.den, self.den * o.den)

    def sub(self, o):
        return PairRational(self.num * o.den - o.num * self.den, self.den * o.den)

    def mul(self, o):
        return PairRational(self.num * o.num, self.den * o.den)

    def div(self, o):
        return PairRational(self.num * o.den, self.den * o.num)


def test_rational_arithmetic_matches_pair_oracle():
    rng = random.Random(20260810)
    for _ in range(10000):
        a_num, b_num = rng.randint(-10**9, 10**9), rng.randint(-10**9, 10**9)
        a_den, b_den = rng.randint(1, 10**6), rng.randint(1, 10**6)
        a, b = Fraction(a_num, a_den), Fraction(b_num, b_den)
        oa, ob = PairRational(a_num, a_den), PairRational(b_num, b_den)
        op = rng.choice("+-*/")
        if op == "+":
            got, want = a + b, oa.add(ob)
        elif op == "-":
            got, want = a - b, oa.sub(ob)
        elif op == "*":
            got, want = a * b, oa.mul(ob)
        else:
            if b == 0:
                continue
            got, want = a / b, oa.div(ob)
        assert got.denominator > 0
        assert math.gcd(abs(got.numerator), got.denominator) == 1
        assert (got.numerator, got.denominator) == (want.num, want.den)


def test_factor_string():
    assert exact.factor_string(1) == "1"
    assert exact.factor_string(84) == "2²·3·7"
    assert exact.factor_string(169) == "13²"
    assert exact.factor_string(96) == "2⁵·3"
    assert exact.factor_string(2**10) == "2¹⁰"
    for n in range(1, 500):
        total = 1
        for prime, exp in exact.factorize(n):
            total *= prime**exp
        assert total == n
