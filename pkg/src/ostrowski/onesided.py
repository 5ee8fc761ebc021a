"""Upper, lower and Dedekind reals over exact rationals.

A real is a stage-indexed stream of rational bounds. Stage ``n`` is a precision
budget: every evaluator is total and deterministic per ``(value, stage)``, and
bounds are memoized. Upper reals are made antitone by keeping the running
minimum of the raw evaluator, lower reals monotone by the running maximum, and
Dedekind intervals nested by intersecting with the previous stage.

Only monotone operations exist on upper reals: they can be added, multiplied
when non-negative, min'd, max'd and inf'd, but not subtracted or divided.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import (
    BadBaseError,
    BaseBelowOneError,
    NegativeBoundError,
    NonPositiveBaseError,
    PrecisionExhaustedError,
)
from .exact_arith import (
    INF,
    NEG_INF,
    ExtRational,
    Infinity,
    Order,
    ext,
    ext_add,
    ext_mul_nonneg,
    pow_cmp,
)
from .powers import exact_power, pow_lower, pow_upper

# Extra stages a Dedekind evaluator may look ahead to reach width 2**-stage.
_MAX_LOOKAHEAD = 512


class _Stream:
    __slots__ = ("_raw", "_memo", "_lock", "const")

    def __init__(self, raw: Callable[[int], object], const=None):
        self._raw = raw
        self._memo: list = []
        self._lock = threading.Lock()
        self.const = const

    def _combine(self, new, prev):
        raise NotImplementedError

    def _get(self, stage: int):
        if stage < 0:
            raise ValueError("stage must be >= 0")
        if self.const is not None:
            return self.const
        memo = self._memo
        if stage < len(memo):
            return memo[stage]
        with self._lock:
            while len(memo) <= stage:
                value = self._raw(len(memo))
                if memo:
                    value = self._combine(value, memo[-1])
                memo.append(value)
        return memo[stage]


class UpperReal(_Stream):
    """Real known through an antitone stream of upper bounds; its value is their infimum."""

    def _combine(self, new, prev):
        return new if new < prev else prev

    def bound(self, stage: int) -> ExtRational:
        return self._get(stage)

    def bounds(self, upto: int) -> list[ExtRational]:
        return [self.bound(n) for n in range(upto + 1)]

    @property
    def is_zero(self) -> bool:
        """True for the exact Zero token (a constant 0)."""
        return self.const is not None and self.const == 0

    def __repr__(self):
        if self.const is not None:
            return f"UpperReal(const={self.const})"
        return f"UpperReal(bound[{len(self._memo) - 1}]={self._memo[-1] if self._memo else '?'})"


class LowerReal(_Stream):
    """Real known through a monotone stream of lower bounds; its value is their supremum."""

    def _combine(self, new, prev):
        return new if new > prev else prev

    def bound(self, stage: int) -> ExtRational:
        return self._get(stage)

    def bounds(self, upto: int) -> list[ExtRational]:
        return [self.bound(n) for n in range(upto + 1)]


class DedekindReal(_Stream):
    """Two-sided real: nested rational intervals with width at most ``2**-stage``.

    ``approx(k)`` must return a rigorous enclosure whose width tends to 0 as
    ``k`` grows; the interval at ``stage`` looks ahead in ``k`` until the width
    target is met.
    """

    def _combine(self, new, prev):
        return max(new[0], prev[0]), min(new[1], prev[1])

    def __init__(self, approx: Callable[[int], tuple[Fraction, Fraction]], const: Fraction | None = None):
        self._approx = approx
        super().__init__(self._at, None if const is None else (const, const))

    def _at(self, stage: int) -> tuple[Fraction, Fraction]:
        target = Fraction(1, 1 << stage)
        k = stage
        while k <= stage + _MAX_LOOKAHEAD:
            lo, hi = self._approx(k)
            if hi - lo <= target:
                return lo, hi
            k += max(4, (k - stage) or 4)
        raise PrecisionExhaustedError(f"Dedekind evaluator did not reach width 2**-{stage}")

    def interval(self, stage: int) -> tuple[Fraction, Fraction]:
        return self._get(stage)

    def lo(self, stage: int) -> Fraction:
        return self.interval(stage)[0]

    def hi(self, stage: int) -> Fraction:
        return self.interval(stage)[1]

    @property
    def value(self) -> Fraction | None:
        """The exact rational value, when this real is a constant."""
        return None if self.const is None else self.const[0]

    def upper(self) -> UpperReal:
        if self.const is not None:
            return upper_from_rational(self.const[1])
        return UpperReal(lambda n: self.hi(n))

    def lower(self) -> LowerReal:
        if self.const is not None:
            return LowerReal(lambda n: self.const[0], const=self.const[0])
        return LowerReal(lambda n: self.lo(n))

    def __repr__(self):
        if self.const is not None:
            return f"DedekindReal(const={self.const[0]})"
        return "DedekindReal(...)"


# -- constants and embeddings ----------------------------------------------


def upper_from_rational(q) -> UpperReal:
    q = ext(q)
    return UpperReal(lambda n: q, const=q)


ZERO = upper_from_rational(0)
ONE = upper_from_rational(1)
POS_INF = upper_from_rational(INF)


def as_upper(x) -> UpperReal:
    if isinstance(x, UpperReal):
        return x
    if isinstance(x, DedekindReal):
        return x.upper()
    return upper_from_rational(x)


def ded_const(q) -> DedekindReal:
    q = Fraction(q)
    return DedekindReal(lambda k: (q, q), const=q)


def as_dedekind(x) -> DedekindReal:
    return x if isinstance(x, DedekindReal) else ded_const(x)


# -- upper-real arithmetic -------------------------------------------------


def upper_add(x: UpperReal, y: UpperReal) -> UpperReal:
    x, y = as_upper(x), as_upper(y)
    if x.const is not None and y.const is not None:
        return upper_from_rational(ext_add(x.const, y.const))
    return UpperReal(lambda n: ext_add(x.bound(n), y.bound(n)))


def _check_nonneg(b: ExtRational) -> ExtRational:
    if b < 0:
        raise NegativeBoundError(f"bound {b} is negative; upper_mul needs non-negative reals")
    return b


def upper_mul(x: UpperReal, y: UpperReal) -> UpperReal:
    """Product of non-negative upper reals.

    The exact Zero token annihilates anything, including ``+inf``; any other
    ``0 * inf`` stays ``inf``.
    """
    x, y = as_upper(x), as_upper(y)
    for z in (x, y):
        if z.const is not None:
            _check_nonneg(z.const)
    if x.is_zero or y.is_zero:
        return ZERO
    if x.const is not None and y.const is not None:
        return upper_from_rational(ext_mul_nonneg(x.const, y.const))
    return UpperReal(lambda n: ext_mul_nonneg(_check_nonneg(x.bound(n)), _check_nonneg(y.bound(n))))


def upper_min(x: UpperReal, y: UpperReal) -> UpperReal:
    x, y = as_upper(x), as_upper(y)
    if x.const is not None and y.const is not None:
        return upper_from_rational(min(x.const, y.const))
    return UpperReal(lambda n: min(x.bound(n), y.bound(n)))


def upper_max(x: UpperReal, y: UpperReal) -> UpperReal:
    x, y = as_upper(x), as_upper(y)
    if x.const is not None and y.const is not None:
        return upper_from_rational(max(x.const, y.const))
    return UpperReal(lambda n: max(x.bound(n), y.bound(n)))


def upper_inf(family: Iterable[UpperReal]) -> UpperReal:
    """Infimum of a finite family; the empty infimum is ``+inf``."""
    members = [as_upper(x) for x in family]
    if not members:
        return POS_INF
    if all(x.const is not None for x in members):
        return upper_from_rational(min(x.const for x in members))
    return UpperReal(lambda n: min(x.bound(n) for x in members))


def upper_inf_scheduled(
    member: Callable[[int], UpperReal],
    schedule: Callable[[int], int] = lambda n: n,
) -> UpperReal:
    """Infimum of a countable family ``member(0), member(1), ...``.

    At stage ``n`` the first ``schedule(n)`` members are consulted at stage
    ``n``. ``schedule`` must be nondecreasing and unbounded for the result to
    converge to the true infimum.
    """
    cache: dict[int, UpperReal] = {}
    lock = threading.Lock()

    def get(k: int) -> UpperReal:
        with lock:
            if k not in cache:
                cache[k] = as_upper(member(k))
            return cache[k]

    def raw(n: int) -> ExtRational:
        best: ExtRational = INF
        for k in range(schedule(n)):
            b = get(k).bound(n)
            if b < best:
                best = b
        return best

    return UpperReal(raw)


# -- exponentials and logarithms -------------------------------------------


def _bits(q: Fraction) -> int:
    return max(q.numerator.bit_length() - q.denominator.bit_length() + 1, 1)


def upper_exp(x, lam) -> UpperReal:
    """``x ** lam`` for a Dedekind ``x >= 1`` and an upper real ``lam`` in ``[-inf, inf)``.

    The bound at stage ``n`` raises the relevant endpoint of ``x`` to a bound of
    ``lam`` read a few stages deeper, then rounds up to within ``2**-(n+1)``.
    """
    x = as_dedekind(x)
    lam = as_upper(lam)
    xc, lc = x.value, lam.const
    if xc is not None:
        if xc < 1:
            raise BaseBelowOneError(f"upper_exp needs x >= 1, got {xc}")
        if xc == 1 or (lc is not None and lc == 0):
            return ONE
        if lc is not None:
            if lc == NEG_INF:
                return ZERO
            if lc == INF:
                return POS_INF
            exact = exact_power(xc, lc)
            if exact is not None:
                return upper_from_rational(exact)
            return UpperReal(lambda n: pow_upper(xc, lc, n + 1))

    def raw(n: int) -> ExtRational:
        lo, hi = x.interval(n)
        if hi < 1:
            raise BaseBelowOneError(f"upper_exp needs x >= 1, got x <= {hi}")
        l0 = lam.bound(n)
        if l0 == INF:
            return INF
        if isinstance(l0, Infinity):
            return Fraction(0) if lo > 1 else Fraction(1)
        bl = _bits(hi)
        pos = max(-(-l0.numerator // l0.denominator), 0)
        guard = bl * pos + bl.bit_length() + _bits(abs(l0) + 1) + 3
        deep = n + guard
        lo, hi = x.interval(deep)
        lam_b = lam.bound(deep)
        if isinstance(lam_b, Infinity):
            return Fraction(0) if lo > 1 else Fraction(1)
        base = hi if lam_b >= 0 else max(lo, Fraction(1))
        return pow_upper(base, lam_b, n + 1)

    return UpperReal(raw)


def _ilog_floor(m: int, v: Fraction) -> int:
    """Largest integer j with ``m**j <= v`` (v > 0)."""
    bits = v.numerator.bit_length() - v.denominator.bit_length()
    j = int(bits / math.log2(m))
    while Fraction(m) ** j > v:
        j -= 1
    while Fraction(m) ** (j + 1) <= v:
        j += 1
    return j


def log_grid(m: int, v: Fraction, n: int, up: bool, window: int | None = None) -> ExtRational:
    """Dyadic bound on ``log_m v`` at resolution ``2**-n``, decided exactly by ``pow_cmp``.

    ``up=True`` gives the least ``k/2**n`` with ``m**(k/2**n) >= v``;
    ``up=False`` the greatest with ``m**(k/2**n) <= v``. With a ``window``
    the search is clamped to ``[-window, window]``: an upper bound above the
    window is reported as ``inf`` and one below it as ``-window``.
    """
    if v <= 0:
        raise NonPositiveBaseError(f"log of non-positive {v}")
    if v == 1:
        return Fraction(0)
    j = _ilog_floor(m, v)
    if window is not None:
        if up and j >= window:
            return INF if pow_cmp(m, window, v) == Order.LESS else Fraction(window)
        if j + 1 <= -window:
            return Fraction(-window) if up else NEG_INF
    if pow_cmp(m, j, v) == Order.EQUAL:
        return Fraction(j)
    scale = 1 << n
    lo_k, hi_k = j * scale, (j + 1) * scale
    while hi_k - lo_k > 1:
        mid = (lo_k + hi_k) // 2
        c = pow_cmp(m, Fraction(mid, scale), v)
        if c == Order.EQUAL:
            return Fraction(mid, scale)
        if c == Order.LESS:
            lo_k = mid
        else:
            hi_k = mid
    return Fraction(hi_k if up else lo_k, scale)


def upper_log(m: int, u) -> UpperReal:
    """``log_m`` of a non-negative upper real, as an upper real in ``[-inf, inf)``.

    Bounds live on the dyadic grid ``k/2**n`` inside the window
    ``[-64*max(n,1), 64*max(n,1)]``; a zero bound gives ``-inf``.
    """
    if not isinstance(m, int) or m < 2:
        raise BadBaseError(f"log base must be an integer >= 2, got {m}")
    u = as_upper(u)
    if u.const is not None:
        c = u.const
        if c < 0:
            raise NegativeBoundError(f"log of negative bound {c}")
        if c == 0:
            return upper_from_rational(NEG_INF)
        if c == INF:
            return POS_INF
        if c == 1:
            return ZERO

    def raw(n: int) -> ExtRational:
        v = u.bound(n)
        window = 64 * max(n, 1)
        cap = window * m.bit_length() + 8
        guard = 0
        while True:
            if v == INF:
                return INF
            if v < 0:
                raise NegativeBoundError(f"log of negative bound {v}")
            if v == 0:
                return NEG_INF
            # log_m is steep near 0: read u deeper in proportion to log(1/v),
            # but no deeper than the log window can resolve.
            want = min((v.denominator // v.numerator + 1).bit_length() + 2, cap)
            if want <= guard:
                break
            guard = want
            v = u.bound(n + guard)
        if v == 0:
            return NEG_INF
        return log_grid(m, v, n, up=True, window=window)

    return UpperReal(raw)


# -- Dedekind exponentials and logarithms ----------------------------------


def _positive_interval(x: DedekindReal, k: int) -> tuple[int, Fraction, Fraction]:
    lo, hi = x.interval(k)
    while lo <= 0:
        if hi <= 0:
            raise NonPositiveBaseError("base is not positive")
        k += 4
        if k > 4096:
            raise PrecisionExhaustedError("cannot separate base from 0")
        lo, hi = x.interval(k)
    return k, lo, hi


def ded_pow(x, beta) -> DedekindReal:
    """``x ** beta`` for a positive Dedekind base and a Dedekind exponent."""
    x, beta = as_dedekind(x), as_dedekind(beta)
    if x.value is not None and x.value <= 0:
        raise NonPositiveBaseError(f"base must be positive, got {x.value}")
    if x.value is not None and beta.value is not None:
        exact = exact_power(x.value, beta.value)
        if exact is not None:
            return ded_const(exact)

    def approx(k: int) -> tuple[Fraction, Fraction]:
        k2, xlo, xhi = _positive_interval(x, k)
        blo, bhi = beta.interval(k2)
        corners = [(b, e) for b in {xlo, xhi} for e in {blo, bhi}]
        lo = min(pow_lower(b, e, k + 2) for b, e in corners)
        hi = max(pow_upper(b, e, k + 2) for b, e in corners)
        return lo, hi

    return DedekindReal(approx)


def ded_pow_rat(r, beta) -> DedekindReal:
    """``r ** beta`` for a rational ``r > 0``; orientation flips when ``r < 1``."""
    r = Fraction(r)
    if r <= 0:
        raise NonPositiveBaseError(f"base must be positive, got {r}")
    return ded_pow(ded_const(r), beta)


def ded_log(m: int, x) -> DedekindReal:
    """``log_m x`` for an integer base ``m >= 2`` and a positive Dedekind ``x``."""
    if not isinstance(m, int) or m < 2:
        raise BadBaseError(f"log base must be an integer >= 2, got {m}")
    x = as_dedekind(x)
    if x.value is not None:
        v = x.value
        if v <= 0:
            raise NonPositiveBaseError(f"log of non-positive {v}")
        lo = log_grid(m, v, 0, up=False)
        if lo == log_grid(m, v, 0, up=True):
            return ded_const(lo)

    def approx(k: int) -> tuple[Fraction, Fraction]:
        k2, lo, hi = _positive_interval(x, k)
        return log_grid(m, lo, k + 1, up=False), log_grid(m, hi, k + 1, up=True)

    return DedekindReal(approx)


def ded_neg(x) -> DedekindReal:
    x = as_dedekind(x)
    if x.value is not None:
        return ded_const(-x.value)
    return DedekindReal(lambda k: (-x.hi(k), -x.lo(k)))


def ded_div(x, y) -> DedekindReal:
    """``x / y`` for non-negative ``x`` and positive ``y``."""
    x, y = as_dedekind(x), as_dedekind(y)
    if x.value is not None and y.value is not None:
        return ded_const(x.value / y.value)

    def approx(k: int) -> tuple[Fraction, Fraction]:
        xlo, xhi = x.interval(k)
        k2, ylo, yhi = _positive_interval(y, k)
        return max(xlo, Fraction(0)) / yhi, xhi / ylo

    return DedekindReal(approx)


def bounds_dump(x: UpperReal | LowerReal, upto: int) -> list[dict]:
    """The JSON-ready bounds dump ``[{"stage": n, "bound": "a/b"|"inf"|"-inf"}, ...]``."""
    return [{"stage": n, "bound": str(b)} for n, b in enumerate(x.bounds(upto))]


def first_stage_below(x: UpperReal, q, max_stage: int) -> int | None:
    """Least stage ``<= max_stage`` whose bound is ``< q``: a certificate of ``x < q``."""
    q = ext(q)
    for n in range(max_stage + 1):
        if x.bound(n) < q:
            return n
    return None


def constant_family(values: Sequence) -> list[UpperReal]:
    return [upper_from_rational(v) for v in values]
