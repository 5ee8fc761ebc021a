"""Exact integer/rational arithmetic and number-theoretic primitives.

Integers are Python ``int`` and rationals are ``fractions.Fraction`` (canonical
at construction, so equality is syntactic). ``ExtRational`` adds the two
infinite tokens ``INF`` and ``NEG_INF``.
"""

from __future__ import annotations

from enum import IntEnum
from fractions import Fraction
from math import gcd, isqrt
from typing import Union

from .errors import (
    BothZeroError,
    IndeterminateInfinityError,
    NonPositiveBaseError,
    NotPrimeError,
    PrecisionExhaustedError,
    ZeroInputError,
)
from .powers import exact_root, pow_interval


class Infinity:
    """One of the two infinite ExtRational tokens; totally ordered against rationals."""

    __slots__ = ("sign",)

    def __init__(self, sign: int):
        self.sign = sign

    def _key(self, other) -> tuple[int, int]:
        if isinstance(other, Infinity):
            return self.sign, other.sign
        return self.sign, 0

    def __eq__(self, other):
        return isinstance(other, Infinity) and other.sign == self.sign

    def __hash__(self):
        return hash(("Infinity", self.sign))

    def __lt__(self, other):
        a, b = self._key(other)
        return a < b

    def __le__(self, other):
        a, b = self._key(other)
        return a <= b

    def __gt__(self, other):
        a, b = self._key(other)
        return a > b

    def __ge__(self, other):
        a, b = self._key(other)
        return a >= b

    def __neg__(self):
        return NEG_INF if self.sign > 0 else INF

    def __repr__(self):
        return "INF" if self.sign > 0 else "NEG_INF"

    def __str__(self):
        return "inf" if self.sign > 0 else "-inf"


INF = Infinity(1)
NEG_INF = Infinity(-1)

ExtRational = Union[Fraction, Infinity]


def is_finite(x: ExtRational) -> bool:
    return not isinstance(x, Infinity)


def ext(x) -> ExtRational:
    """Coerce ints, Fractions, infinity tokens and serialized strings to ExtRational."""
    if isinstance(x, Infinity):
        return x
    if isinstance(x, str):
        return parse_ext(x)
    return Fraction(x)


def ext_add(a: ExtRational, b: ExtRational) -> ExtRational:
    if isinstance(a, Infinity):
        if isinstance(b, Infinity) and b.sign != a.sign:
            raise IndeterminateInfinityError("inf + -inf is undefined")
        return a
    if isinstance(b, Infinity):
        return b
    return a + b


def ext_mul_nonneg(a: ExtRational, b: ExtRational) -> ExtRational:
    """Product of non-negative extended rationals; ``0 * inf`` is ``inf`` (the sound upper bound)."""
    if isinstance(a, Infinity) or isinstance(b, Infinity):
        return INF
    return a * b


def to_str(x: ExtRational) -> str:
    """Serialize as ``"a/b"`` (lowest terms), ``"a"`` for integers, or ``"inf"``/``"-inf"``."""
    return str(x)


def parse_ext(s: str) -> ExtRational:
    t = s.strip().lower()
    if t in ("inf", "+inf"):
        return INF
    if t == "-inf":
        return NEG_INF
    if "." in t or "e" in t:
        raise ValueError(f"not a rational literal: {s!r}")
    return Fraction(t)


# -- number theory ---------------------------------------------------------


def gcd_bezout(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``g = gcd(|a|, |b|) > 0`` and ``a*x + b*y == g``."""
    if a == 0 and b == 0:
        raise BothZeroError("gcd(0, 0) has no positive value")
    old_r, r = abs(a), abs(b)
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    sa = -1 if a < 0 else 1
    sb = -1 if b < 0 else 1
    return old_r, sa * old_x, sb * old_y


# Trial division is used below this bound; above it, Miller-Rabin with the
# first twelve prime bases, which is deterministic below 3.3 * 10**24.
_TRIAL_LIMIT = 1 << 32
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_DETERMINISTIC = 3317044064679887385961981


def _trial_is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    if n % 3 == 0:
        return n == 3
    d = 5
    limit = isqrt(n)
    while d <= limit:
        if n % d == 0 or n % (d + 2) == 0:
            return False
        d += 6
    return True


def _miller_rabin(n: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int) -> bool:
    """Deterministic primality: trial division below 2**32, Miller-Rabin above.

    Beyond about 3.3e24 the Miller-Rabin answer is probabilistic only.
    """
    if n < _TRIAL_LIMIT:
        return _trial_is_prime(n)
    if any(n % p == 0 for p in _MR_BASES):
        return False
    return _miller_rabin(n)


def _pollard_brent(n: int) -> int:
    """A nontrivial factor of the odd composite ``n`` (deterministic seed sequence)."""
    for c in range(1, 1 << 20):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise PrecisionExhaustedError(f"could not split {n}")


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of ``|n|`` as ascending ``(prime, exponent)`` pairs.

    Small factors come from trial division; a large composite cofactor is
    split with Pollard-Brent.
    """
    if n == 0:
        raise ZeroInputError("0 has no prime factorization")
    n = abs(n)
    counts: dict[int, int] = {}
    for d in (2, 3):
        while n % d == 0:
            n //= d
            counts[d] = counts.get(d, 0) + 1
    d = 5
    while d * d <= n and d < 1 << 16:
        for q in (d, d + 2):
            while n % q == 0:
                n //= q
                counts[q] = counts.get(q, 0) + 1
        d += 6
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if is_prime(m):
            counts[m] = counts.get(m, 0) + 1
            continue
        f = _pollard_brent(m)
        stack += [f, m // f]
    return sorted(counts.items())


def ord_p(p: int, n: int) -> int:
    """Largest r with ``p**r`` dividing ``n``."""
    if n == 0:
        raise ZeroInputError("ord_p(0) is infinite")
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    n = abs(n)
    r = 0
    while n % p == 0:
        n //= p
        r += 1
    return r


def primes_upto(k: int) -> list[int]:
    """Ascending primes ``<= k`` (sieve of Eratosthenes)."""
    if k < 2:
        return []
    sieve = bytearray([1]) * (k + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(k) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytes(len(range(i * i, k + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def nth_primes(count: int) -> list[int]:
    """The first ``count`` primes."""
    if count <= 0:
        return []
    bound = 16
    while True:
        ps = primes_upto(bound)
        if len(ps) >= count:
            return ps[:count]
        bound *= 2


# -- exact comparison of rational powers -----------------------------------


class Order(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def _cmp(a, b) -> Order:
    return Order.LESS if a < b else Order.GREATER if a > b else Order.EQUAL


# Above this many bits the cross-multiplied integer powers are not formed.
_EXACT_BITS = 1 << 15


def pow_cmp(m, e, q) -> Order:
    """Exact order of ``m ** e`` against ``q`` for rationals ``m, q > 0``.

    Small cases compare ``m**a`` with ``q**c`` (``e = a/c``) in integers. When
    those powers would be huge, equality is only possible if ``m`` is a perfect
    c-th power; otherwise the two sides differ and rigorous enclosures are
    refined until they separate.
    """
    m, e, q = Fraction(m), Fraction(e), Fraction(q)
    if m <= 0 or q <= 0:
        raise NonPositiveBaseError(f"pow_cmp needs positive base and target, got {m}, {q}")
    if e == 0 or m == 1:
        return _cmp(1, q)
    if e < 0:
        m, e = 1 / m, -e
    a, c = e.numerator, e.denominator
    mbits = max(m.numerator.bit_length(), m.denominator.bit_length())
    qbits = max(q.numerator.bit_length(), q.denominator.bit_length())
    if a * mbits + c * qbits <= _EXACT_BITS:
        lhs = m.numerator**a * q.denominator**c
        rhs = q.numerator**c * m.denominator**a
        return _cmp(lhs, rhs)
    root = exact_root(m, c) if c <= mbits else None
    if root is not None and a * max(root.numerator.bit_length(), root.denominator.bit_length()) <= 2 * qbits + 64:
        return _cmp(root**a, q)
    w = 64
    while w <= 1 << 18:
        lo, hi = pow_interval(m, e, w)
        if hi < q:
            return Order.LESS
        if lo > q:
            return Order.GREATER
        if lo == hi:
            return Order.EQUAL
        w *= 2
    raise PrecisionExhaustedError(f"pow_cmp could not separate {m}**{e} from {q}")
