"""Directed-rounding fixed-point kernel for rational powers ``b ** (a/c)``.

Every enclosure returned here is rigorous: floors are taken on the way down and
ceilings on the way up, so ``lo <= b**e <= hi`` holds exactly. Precision is the
number of fractional bits ``W`` of the fixed-point grid; callers refine ``W``
until the enclosure is narrow enough.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .errors import NonPositiveBaseError, PrecisionExhaustedError

# Roots of index up to this bound are taken directly; larger non-dyadic
# denominators are first rounded outward onto a dyadic exponent grid.
_DIRECT_ROOT_MAX = 64
_MAX_BITS = 1 << 16


def iroot(n: int, k: int) -> int:
    """Floor of the k-th root of a non-negative integer."""
    if n < 0 or k < 1:
        raise ValueError("iroot needs n >= 0 and k >= 1")
    if n < 2 or k == 1:
        return n
    if k == 2:
        return isqrt(n)
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def iroot_ceil(n: int, k: int) -> int:
    r = iroot(n, k)
    return r if r**k == n else r + 1


def exact_root(q: Fraction, k: int) -> Fraction | None:
    """``q ** (1/k)`` when it is rational, else None. ``q`` must be positive."""
    if k == 1:
        return q
    num, den = q.numerator, q.denominator
    if k > max(num.bit_length(), den.bit_length()):
        return None if (num, den) != (1, 1) else Fraction(1)
    rn, rd = iroot(num, k), iroot(den, k)
    if rn**k == num and rd**k == den:
        return Fraction(rn, rd)
    return None


def exact_power(b: Fraction, e: Fraction) -> Fraction | None:
    """``b ** e`` when it is rational, for ``b > 0``."""
    if b <= 0:
        raise NonPositiveBaseError(f"base must be positive, got {b}")
    if e == 0 or b == 1:
        return Fraction(1)
    if e.denominator == 1:
        if abs(e.numerator) * max(b.numerator.bit_length(), b.denominator.bit_length()) > _MAX_BITS * 16:
            return None
        return b**e.numerator
    r = exact_root(b, e.denominator)
    if r is None:
        return None
    return r**e.numerator


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _fx_pow(x: int, a: int, w: int, up: bool) -> int:
    """Fixed-point ``x ** a`` on a 2**-w grid with directed rounding (x >= 1.0)."""
    one = 1 << w
    result = one
    base = x
    while a:
        if a & 1:
            result = _ceil_div(result * base, one) if up else (result * base) >> w
        a >>= 1
        if a:
            base = _ceil_div(base * base, one) if up else (base * base) >> w
    return result


def _root_enclosure(b: Fraction, c: int, w: int) -> tuple[int, int]:
    """Fixed-point enclosure of ``b ** (1/c)`` for ``b > 1`` on a 2**-w grid."""
    num, den = b.numerator, b.denominator
    if c & (c - 1) == 0:
        lo = (num << w) // den
        hi = _ceil_div(num << w, den)
        for _ in range(c.bit_length() - 1):
            lo = isqrt(lo << w)
            hi = iroot_ceil(hi << w, 2)
        return lo, hi
    scaled_lo = (num << (w * c)) // den
    scaled_hi = _ceil_div(num << (w * c), den)
    return iroot(scaled_lo, c), iroot_ceil(scaled_hi, c)


def pow_interval(b: Fraction, e: Fraction, w: int) -> tuple[Fraction, Fraction]:
    """Rigorous enclosure ``lo <= b**e <= hi`` computed with ``w`` fractional bits."""
    b, e = Fraction(b), Fraction(e)
    if b <= 0:
        raise NonPositiveBaseError(f"base must be positive, got {b}")
    exact = exact_power(b, e)
    if exact is not None:
        return exact, exact
    if b < 1:
        b, e = 1 / b, -e
    invert = e < 0
    e = abs(e)
    a, c = e.numerator, e.denominator
    if c & (c - 1) == 0 or c <= _DIRECT_ROOT_MAX:
        rlo, rhi = _root_enclosure(b, c, w)
        lo = Fraction(_fx_pow(rlo, a, w, up=False), 1 << w)
        hi = Fraction(_fx_pow(rhi, a, w, up=True), 1 << w)
    else:
        # b > 1, so b**e is increasing in e: round the exponent outward. The
        # grid is half the working precision, since raising the 2**g-th root
        # to a numerator near 2**g costs about g bits.
        grid = 1 << max(w // 2, 1)
        e_lo = Fraction((a * grid) // c, grid)
        e_hi = Fraction(_ceil_div(a * grid, c), grid)
        lo = pow_interval(b, e_lo, w)[0]
        hi = pow_interval(b, e_hi, w)[1]
    if invert:
        return 1 / hi, 1 / lo
    return lo, hi


def _start_bits(b: Fraction, e: Fraction, prec: int) -> int:
    mag = max(b.numerator.bit_length(), b.denominator.bit_length())
    span = mag * (abs(e.numerator) // e.denominator + 1)
    return prec + span + e.denominator.bit_length() + 24


def pow_upper(b: Fraction, e: Fraction, prec: int) -> Fraction:
    """Rational ``u`` with ``b**e <= u <= b**e + 2**-prec``; exact when ``b**e`` is rational."""
    return _pow_rounded(Fraction(b), Fraction(e), prec, up=True)


def pow_lower(b: Fraction, e: Fraction, prec: int) -> Fraction:
    """Rational ``l`` with ``b**e - 2**-prec <= l <= b**e``; exact when ``b**e`` is rational."""
    return _pow_rounded(Fraction(b), Fraction(e), prec, up=False)


def _pow_rounded(b: Fraction, e: Fraction, prec: int, up: bool) -> Fraction:
    prec = max(prec, 0)
    w = _start_bits(b, e, prec)
    target = Fraction(1, 1 << (prec + 1))
    grid = 1 << (prec + 1)
    while w <= _MAX_BITS:
        lo, hi = pow_interval(b, e, w)
        if lo == hi:
            return lo
        if hi - lo <= target:
            if up:
                return Fraction(_ceil_div(hi.numerator * grid, hi.denominator), grid)
            return Fraction((lo.numerator * grid) // lo.denominator, grid)
        w *= 2
    raise PrecisionExhaustedError(f"could not enclose {b}**{e} to 2**-{prec}")
