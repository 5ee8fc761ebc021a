from __future__ import annotations

from fractions import Fraction
from math import gcd, prod

import pytest
from hypothesis import given, strategies as st

from ostrowski.errors import (
    BothZeroError,
    IndeterminateInfinityError,
    NonPositiveBaseError,
    NotPrimeError,
    ZeroInputError,
)
from ostrowski.exact_arith import (
    INF,
    NEG_INF,
    Order,
    ext_add,
    ext_mul_nonneg,
    factorize,
    gcd_bezout,
    is_prime,
    nth_primes,
    ord_p,
    parse_ext,
    pow_cmp,
    primes_upto,
    to_str,
)

from oracles import power


def brute_is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, n))


# -- extended rationals ------------------------------------------------------


def test_infinity_orders_against_rationals():
    assert NEG_INF < Fraction(-10**30) < Fraction(10**30) < INF
    assert max(Fraction(3), INF) == INF
    assert min(Fraction(3), NEG_INF) == NEG_INF
    assert -INF == NEG_INF


def test_ext_add_and_mul():
    assert ext_add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)
    assert ext_add(INF, Fraction(-7)) == INF
    with pytest.raises(IndeterminateInfinityError):
        ext_add(INF, NEG_INF)
    assert ext_mul_nonneg(Fraction(0), INF) == INF
    assert ext_mul_nonneg(Fraction(2), Fraction(3, 4)) == Fraction(3, 2)


@pytest.mark.parametrize("text, value", [("3/4", Fraction(3, 4)), ("-6/8", Fraction(-3, 4)), ("inf", INF), ("-inf", NEG_INF), ("5", Fraction(5))])
def test_parse_and_serialize(text, value):
    assert parse_ext(text) == value
    assert parse_ext(to_str(value)) == value


def test_decimal_literals_are_rejected():
    with pytest.raises(ValueError):
        parse_ext("0.5")


# -- gcd and Bezout ----------------------------------------------------------


@pytest.mark.parametrize("a, b, expected", [(240, 46, 2), (5, 0, 5), (0, -7, 7), (-12, 18, 6)])
def test_gcd_bezout_examples(a, b, expected):
    g, x, y = gcd_bezout(a, b)
    assert g == expected
    assert a * x + b * y == g


def test_gcd_bezout_coefficients_for_zero_operand():
    assert gcd_bezout(5, 0) == (5, 1, 0)


def test_gcd_of_two_zeros():
    with pytest.raises(BothZeroError):
        gcd_bezout(0, 0)


@given(st.integers(-10**40, 10**40), st.integers(-10**40, 10**40))
def test_gcd_bezout_identity(a, b):
    if a == 0 and b == 0:
        return
    g, x, y = gcd_bezout(a, b)
    assert g == gcd(a, b) > 0
    assert a * x + b * y == g


# -- primes and factorization --------------------------------------------------


def test_is_prime_matches_brute_force():
    assert [n for n in range(-5, 2000) if is_prime(n)] == [n for n in range(2000) if brute_is_prime(n)]


def test_primes_upto_and_nth():
    assert primes_upto(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert primes_upto(1) == []
    assert nth_primes(25)[-1] == 97
    assert len(primes_upto(10**5)) == 9592


@pytest.mark.parametrize("n", [2**61 - 1, 2**89 - 1, 4294967311])
def test_large_primes(n):
    assert is_prime(n)


@pytest.mark.parametrize("n", [2**64 + 1, 3215031751, 341550071728321, (2**31 - 1) * (2**61 - 1)])
def test_large_composites(n):
    assert not is_prime(n)


@pytest.mark.parametrize(
    "n, expected",
    [
        (360, [(2, 3), (3, 2), (5, 1)]),
        (-97, [(97, 1)]),
        (1, []),
        (2**64 - 1, [(3, 1), (5, 1), (17, 1), (257, 1), (641, 1), (65537, 1), (6700417, 1)]),
        (4294967311**2, [(4294967311, 2)]),
    ],
)
def test_factorize_examples(n, expected):
    assert factorize(n) == expected


def test_factorize_zero():
    with pytest.raises(ZeroInputError):
        factorize(0)


@given(st.integers(1, 10**12))
def test_factorize_reconstructs(n):
    fs = factorize(n)
    assert prod(p**e for p, e in fs) == n
    assert [p for p, _ in fs] == sorted({p for p, _ in fs})
    assert all(is_prime(p) and e >= 1 for p, e in fs)


@pytest.mark.parametrize("p, n, r", [(3, 162, 4), (5, 10, 1), (2, 7, 0), (7, -49, 2)])
def test_ord_p(p, n, r):
    assert ord_p(p, n) == r


def test_ord_p_errors():
    with pytest.raises(ZeroInputError):
        ord_p(3, 0)
    with pytest.raises(NotPrimeError):
        ord_p(4, 8)


@given(st.sampled_from([2, 3, 5, 7, 11, 97]), st.integers(1, 10**6), st.integers(0, 20))
def test_ord_p_of_product(p, m, r):
    m = m if m % p else m + 1 if (m + 1) % p else m + 2
    assert ord_p(p, m * p**r) == r


# -- exact power comparison ----------------------------------------------------


def test_pow_cmp_square_root_of_two():
    # sqrt(2) = 1.414... < 3/2; stated as Greater in one worked example, which is a slip.
    assert pow_cmp(2, Fraction(1, 2), Fraction(3, 2)) == Order.LESS


@pytest.mark.parametrize(
    "m, e, q, expected",
    [
        (4, Fraction(1, 2), 2, Order.EQUAL),
        (8, Fraction(2, 3), 4, Order.EQUAL),
        (Fraction(1, 5), Fraction(-1), 5, Order.EQUAL),
        (2, Fraction(1, 2), Fraction(141421356, 10**8), Order.GREATER),
        (7, Fraction(0), Fraction(1), Order.EQUAL),
        (1, Fraction(5, 3), Fraction(1, 2), Order.GREATER),
    ],
)
def test_pow_cmp_examples(m, e, q, expected):
    assert pow_cmp(m, e, q) == expected


def test_pow_cmp_rejects_nonpositive():
    with pytest.raises(NonPositiveBaseError):
        pow_cmp(0, Fraction(1, 2), 1)
    with pytest.raises(NonPositiveBaseError):
        pow_cmp(2, Fraction(1, 2), 0)


def test_pow_cmp_huge_exponent_uses_enclosures():
    # Cross-multiplication would need 2**40000-sized integers.
    e = Fraction(40001, 40000)
    near = Fraction(2000034657659, 10**12)  # 2**e is 2.0000346576593...
    assert pow_cmp(2, e, near) == Order.GREATER
    assert pow_cmp(2, e, near + Fraction(1, 10**12)) == Order.LESS


def test_pow_cmp_huge_exponent_exact_equality():
    e = Fraction(3, 40000)
    assert pow_cmp(Fraction(5**40000), e, 125) == Order.EQUAL


rationals = st.fractions(min_value=Fraction(1, 40), max_value=50, max_denominator=40)
exponents = st.fractions(min_value=-6, max_value=6, max_denominator=12)


@given(rationals, exponents, rationals)
def test_pow_cmp_agrees_with_integer_oracle(m, e, q):
    a, c = e.numerator, e.denominator
    base = m if a >= 0 else 1 / m
    a = abs(a)
    lhs = base.numerator**a * q.denominator**c
    rhs = q.numerator**c * base.denominator**a
    expected = Order.LESS if lhs < rhs else Order.GREATER if lhs > rhs else Order.EQUAL
    assert pow_cmp(m, e, q) == expected


@given(rationals, exponents)
def test_pow_cmp_against_decimal(m, e):
    true = power(m, e)
    q = Fraction(Fraction(true) * 10**30).limit_denominator(1) / 10**30
    order = pow_cmp(m, e, q)
    t = Fraction(true)
    if q < t - Fraction(1, 10**80):
        assert order == Order.GREATER
    elif q > t + Fraction(1, 10**80):
        assert order == Order.LESS
