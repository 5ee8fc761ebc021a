"""Upper-valued absolute values on the integers.

An ``AbsValue`` maps each integer to an ``UpperReal``. The standard examples
carry a closed-form descriptor: every value is ``B(n) ** e`` for a
multiplicative integer map ``B`` (``|n|``, ``p**ord_p(n)`` or ``1``) and one
fixed exponent ``e``. That descriptor is the exact oracle used for
Dedekind-ization and for zero-tolerance axiom checks.

Power(Padic(p), lam) acts as ``n -> (p**ord_p(n)) ** lam`` with ``lam <= 0``
(so ``lam = -1`` is the usual p-adic value and ``lam = -inf`` the
p-characteristic one). Power(Euclid(), lam) is ``|n| ** lam`` with
``0 <= lam <= 1``.
"""

from __future__ import annotations

import enum
import random
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, ClassVar, Iterator, Union

from .errors import (
    BadParameterError,
    NoClosedFormError,
    NotPositiveDefiniteError,
    ZeroDenominatorError,
)
from .exact_arith import (
    INF,
    NEG_INF,
    ExtRational,
    Infinity,
    Order,
    ext,
    is_prime,
    ord_p,
    parse_ext,
)
from .onesided import (
    ONE,
    ZERO,
    DedekindReal,
    UpperReal,
    ded_const,
    ded_div,
    ded_pow_rat,
    upper_exp,
    upper_from_rational,
)
from .powers import exact_power, pow_lower, pow_upper

# -- closed forms ----------------------------------------------------------


def _require_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise BadParameterError(f"{p} is not prime")
    return p


@dataclass(frozen=True)
class Trivial:
    kind: ClassVar[str] = "trivial"

    def base(self, n: int) -> int:
        return 0 if n == 0 else 1

    @property
    def exponent(self) -> Fraction:
        return Fraction(1)


@dataclass(frozen=True)
class Euclid:
    kind: ClassVar[str] = "euclid"

    def base(self, n: int) -> int:
        return abs(n)

    @property
    def exponent(self) -> Fraction:
        return Fraction(1)


@dataclass(frozen=True)
class Padic:
    p: int
    kind: ClassVar[str] = "padic"

    def __post_init__(self):
        _require_prime(self.p)

    def base(self, n: int) -> int:
        return 0 if n == 0 else self.p ** ord_p(self.p, n)

    @property
    def exponent(self) -> Fraction:
        return Fraction(-1)


@dataclass(frozen=True)
class PChar:
    p: int
    kind: ClassVar[str] = "pchar"

    def __post_init__(self):
        _require_prime(self.p)

    def base(self, n: int) -> int:
        return 0 if n == 0 else self.p ** ord_p(self.p, n)

    @property
    def exponent(self) -> Infinity:
        return NEG_INF


@dataclass(frozen=True)
class Power:
    inner: Union[Euclid, Padic]
    lam: Union[Fraction, Infinity, DedekindReal]
    kind: ClassVar[str] = "power"

    def __post_init__(self):
        if not isinstance(self.inner, (Euclid, Padic)):
            raise BadParameterError("Power needs an Euclid or Padic inner form")
        lam = self.lam
        if not isinstance(lam, DedekindReal):
            lam = ext(lam)
            object.__setattr__(self, "lam", lam)
        if isinstance(self.inner, Euclid):
            ok = _within(lam, Fraction(0), Fraction(1))
        else:
            ok = _within(lam, NEG_INF, Fraction(0))
        if not ok:
            raise BadParameterError(f"exponent {_lam_str(lam)} out of range for {self.inner.kind}")

    def base(self, n: int) -> int:
        return self.inner.base(n)

    @property
    def exponent(self):
        return self.lam


ClosedForm = Union[Trivial, Euclid, Padic, PChar, Power]


def _within(lam, lo, hi) -> bool:
    if isinstance(lam, DedekindReal):
        a, b = lam.interval(20)
        return b >= lo and a <= hi
    return lo <= lam <= hi


def _lam_str(lam) -> str:
    if isinstance(lam, DedekindReal):
        lo, hi = lam.interval(20)
        return f"[{lo}, {hi}]"
    return str(lam)


def closed_form_to_json(cf: ClosedForm) -> dict:
    out: dict = {"kind": cf.kind}
    if isinstance(cf, (Padic, PChar)):
        out["p"] = str(cf.p)
    elif isinstance(cf, Power):
        out["inner"] = closed_form_to_json(cf.inner)
        if isinstance(cf.lam, DedekindReal):
            lo, hi = cf.lam.interval(20)
            out["lambda_interval"] = [str(lo), str(hi)]
        else:
            out["lambda"] = str(cf.lam)
    return out


def closed_form_from_json(d: dict) -> ClosedForm:
    kind = d.get("kind")
    if kind == "trivial":
        return Trivial()
    if kind == "euclid":
        return Euclid()
    if kind == "padic":
        return Padic(int(d["p"]))
    if kind == "pchar":
        return PChar(int(d["p"]))
    if kind == "power":
        inner = closed_form_from_json(d["inner"])
        return Power(inner, parse_ext(d["lambda"]))
    raise BadParameterError(f"unknown closed-form kind {kind!r}")


def closed_form_name(cf: ClosedForm) -> str:
    if isinstance(cf, (Padic, PChar)):
        return f"{cf.kind}({cf.p})"
    if isinstance(cf, Power):
        return f"power({closed_form_name(cf.inner)}, {_lam_str(cf.lam)})"
    return cf.kind


def closed_value(cf: ClosedForm, n: int) -> DedekindReal:
    """The exact value ``B(n) ** e`` of a closed form, as a Dedekind real."""
    if n == 0:
        return ded_const(0)
    b = cf.base(n)
    e = cf.exponent
    if b == 1:
        return ded_const(1)
    if isinstance(e, DedekindReal):
        return ded_pow_rat(b, e)
    if e == NEG_INF:
        return ded_const(0)
    exact = exact_power(Fraction(b), e)
    if exact is not None:
        return ded_const(exact)
    return DedekindReal(lambda k: (pow_lower(b, e, k + 1), pow_upper(b, e, k + 1)))


def _exponent_sign(e, stage: int = 40) -> int | None:
    if isinstance(e, DedekindReal):
        lo, hi = e.interval(stage)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        if e.value == 0:
            return 0
        return None
    return 1 if e > 0 else -1 if e < 0 else 0


# -- absolute values -------------------------------------------------------


class AbsValue:
    """An absolute value on the integers, evaluated as one ``UpperReal`` per integer.

    ``magnitude`` is called for ``n >= 2`` only: ``|0|`` is the Zero token,
    ``|1| = |-1|`` the One token and ``|-n| = |n|`` by construction.
    """

    def __init__(self, magnitude: Callable[[int], UpperReal], descriptor: ClosedForm | None = None, label: str = ""):
        self._magnitude = magnitude
        self.descriptor = descriptor
        self.label = label or (closed_form_name(descriptor) if descriptor is not None else "generic")
        self._cache: dict[int, UpperReal] = {}
        self._closed: dict[int, DedekindReal] = {}
        self._lock = threading.Lock()

    def upper(self, n: int) -> UpperReal:
        n = abs(n)
        if n == 0:
            return ZERO
        if n == 1:
            return ONE
        u = self._cache.get(n)
        if u is None:
            u = self._magnitude(n)
            with self._lock:
                u = self._cache.setdefault(n, u)
        return u

    def eval(self, n: int, stage: int) -> ExtRational:
        return self.upper(n).bound(stage)

    def exact(self, n: int) -> DedekindReal:
        """Closed-form value of ``|n|`` (cached)."""
        if self.descriptor is None:
            raise NoClosedFormError(f"{self.label} has no closed form")
        n = abs(n)
        d = self._closed.get(n)
        if d is None:
            d = closed_value(self.descriptor, n)
            with self._lock:
                d = self._closed.setdefault(n, d)
        return d

    def __repr__(self):
        return f"AbsValue({self.label})"


def make_standard(cf: ClosedForm) -> AbsValue:
    """The absolute value described by a closed form; bounds are exact whenever the value is rational."""
    e = cf.exponent
    lam = e.upper() if isinstance(e, DedekindReal) else upper_from_rational(e)

    def magnitude(n: int) -> UpperReal:
        b = cf.base(n)
        if b == 1:
            return ONE
        return upper_exp(b, lam)

    return AbsValue(magnitude, descriptor=cf)


def av_eval(av: AbsValue, n: int, stage: int) -> ExtRational:
    return av.eval(n, stage)


def dedekindize(av: AbsValue, n: int) -> DedekindReal:
    """Two-sided value of ``|n|``; lower bounds exist only through a closed form."""
    if av.descriptor is None:
        raise NoClosedFormError(
            f"{av.label}: a generic upper-valued oracle has no lower bounds to Dedekind-ize"
        )
    return av.exact(n)


def extend_to_Q(av: AbsValue, x, den: int | None = None) -> DedekindReal:
    """``|m/n| = |m| / |n|`` for a positive definite closed-form value."""
    if den is not None:
        if den == 0:
            raise ZeroDenominatorError("zero denominator")
        x = Fraction(x, den)
    x = Fraction(x)
    if x == 0:
        return ded_const(0)
    num = dedekindize(av, x.numerator)
    dv = dedekindize(av, x.denominator)
    if dv.value == 0:
        raise NotPositiveDefiniteError(f"|{x.denominator}| = 0: {av.label} is not positive definite")
    return ded_div(num, dv)


# -- checks ----------------------------------------------------------------


class Verdict(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


@dataclass
class CheckReport:
    property: str
    window: tuple[int, int]
    stage: int
    verdict: Verdict
    witness: tuple[int, ...] | None = None
    detail: str = ""
    checked: int = 0
    inconclusive: int = 0
    label: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    def to_json(self) -> dict:
        return {
            "property": self.property,
            "label": self.label,
            "window": list(self.window),
            "stage": self.stage,
            "verdict": self.verdict.value,
            "witness": None if self.witness is None else [str(w) for w in self.witness],
            "detail": self.detail,
            "checked": self.checked,
            "inconclusive": self.inconclusive,
        }


def _tol(stage: int) -> Fraction:
    return Fraction(2, 1 << stage)


def _consts(av: AbsValue, ks) -> list | None:
    out = []
    for k in ks:
        c = av.upper(k).const
        if c is None:
            return None
        out.append(c)
    return out


def _cmp_values(av: AbsValue, a: int, b: int) -> Order | None:
    """Exact order of closed-form ``|a|`` against ``|b|``."""
    va, vb = av.exact(a), av.exact(b)
    if va.value is not None and vb.value is not None:
        return Order.LESS if va.value < vb.value else Order.GREATER if va.value > vb.value else Order.EQUAL
    if va.value == 0:
        return Order.LESS
    if vb.value == 0:
        return Order.GREATER
    cf = av.descriptor
    s = _exponent_sign(cf.exponent)
    if s is None:
        return None
    if s == 0:
        return Order.EQUAL
    ba, bb = cf.base(a), cf.base(b)
    if s < 0:
        ba, bb = bb, ba
    return Order.LESS if ba < bb else Order.GREATER if ba > bb else Order.EQUAL


def _closed_le_sum(av: AbsValue, a: int, terms: tuple[int, ...], stage: int) -> bool | None:
    """Decide ``|a| <= sum |t|`` exactly on the closed form; None if undecided at the refinement cap."""
    if a == 0:
        return True
    live = [t for t in terms if av.exact(t).value != 0]
    if not live:
        return av.exact(a).value == 0
    if len(live) == 1:
        c = _cmp_values(av, a, live[0])
        return None if c is None else c != Order.GREATER
    va = av.exact(a)
    vs = [av.exact(t) for t in live]
    for k in range(stage, stage + 257, 16):
        alo, ahi = va.interval(k)
        ivs = [v.interval(k) for v in vs]
        slo = sum(i[0] for i in ivs)
        shi = sum(i[1] for i in ivs)
        if ahi <= slo:
            return True
        if alo > shi:
            return False
    return None


def _consistency(av: AbsValue, k: int, stage: int, seen: dict) -> str | None:
    """Evaluator bound at ``k`` must be a sound, accurate bound of the closed-form value."""
    if k in seen:
        return seen[k]
    b = av.eval(k, stage)
    lo, hi = av.exact(k).interval(stage)
    msg = None
    if b < lo:
        msg = f"evaluator bound {b} at {k} is below the closed-form value"
    elif b > hi + _tol(stage):
        msg = f"evaluator bound {b} at {k} disagrees with the closed-form value"
    seen[k] = msg
    return msg


def _window_pairs(window: tuple[int, int]) -> list[tuple[int, int]]:
    lo, hi = window
    pairs = [(m, n) for m in range(lo, hi + 1) for n in range(lo, hi + 1)]
    pairs.sort(key=_pair_key)
    return pairs


def _pair_key(mn: tuple[int, int]):
    m, n = mn
    return max(abs(m), abs(n)), m < 0, n < 0, abs(m), abs(n)


def _triangle(av: AbsValue, m: int, n: int, stage: int, seen: dict) -> tuple[Verdict, str]:
    return _le_sum(av, m + n, (m, n), stage, seen)


def _le_sum(av: AbsValue, a: int, terms: tuple[int, ...], stage: int, seen: dict) -> tuple[Verdict, str]:
    cs = _consts(av, (a,) + terms)
    if cs is not None:
        return (Verdict.PASS, "") if cs[0] <= sum(cs[1:]) else (Verdict.FAIL, "exact")
    if av.descriptor is not None:
        for k in (a,) + terms:
            msg = _consistency(av, k, stage, seen)
            if msg:
                return Verdict.FAIL, msg
        r = _closed_le_sum(av, a, terms, stage)
        if r is None:
            return Verdict.INCONCLUSIVE, "closed-form refinement cap"
        return (Verdict.PASS, "") if r else (Verdict.FAIL, "exact")
    ub = [av.eval(k, stage) for k in (a,) + terms]
    total = ub[1]
    for x in ub[2:]:
        total = total + x if not isinstance(total, Infinity) and not isinstance(x, Infinity) else INF
    if isinstance(ub[0], Infinity) or isinstance(total, Infinity):
        return Verdict.INCONCLUSIVE, "infinite bound"
    return (Verdict.PASS, "") if ub[0] <= total + _tol(stage) else (Verdict.FAIL, "bound-level")


def _multiplicative(av: AbsValue, m: int, n: int, stage: int, seen: dict) -> tuple[Verdict, str]:
    cs = _consts(av, (m * n, m, n))
    if cs is not None:
        return (Verdict.PASS, "") if cs[0] == cs[1] * cs[2] else (Verdict.FAIL, "exact")
    if av.descriptor is not None:
        for k in (m * n, m, n):
            msg = _consistency(av, k, stage, seen)
            if msg:
                return Verdict.FAIL, msg
        cf = av.descriptor
        if m == 0 or n == 0:
            return Verdict.PASS, ""
        if _exponent_sign(cf.exponent) == 0 or cf.base(m * n) == cf.base(m) * cf.base(n):
            return Verdict.PASS, ""
        return Verdict.FAIL, "exact"
    ub = [av.eval(k, stage) for k in (m * n, m, n)]
    if any(isinstance(x, Infinity) for x in ub):
        return Verdict.INCONCLUSIVE, "infinite bound"
    tol = _tol(stage) * (1 + ub[1] + ub[2])
    if abs(ub[0] - ub[1] * ub[2]) <= tol:
        return Verdict.PASS, ""
    return Verdict.INCONCLUSIVE, "bound-level mismatch beyond tolerance"


def _ultra(av: AbsValue, m: int, n: int, stage: int, seen: dict) -> tuple[Verdict, str]:
    ks = (m + n, m, n)
    cs = _consts(av, ks)
    if cs is not None:
        return (Verdict.PASS, "") if cs[0] <= max(cs[1], cs[2]) else (Verdict.FAIL, "exact")
    if av.descriptor is not None:
        for k in ks:
            msg = _consistency(av, k, stage, seen)
            if msg:
                return Verdict.FAIL, msg
        c = _cmp_values(av, m, n)
        if c is None:
            return Verdict.INCONCLUSIVE, "exponent sign undecided"
        big = n if c == Order.LESS else m
        c2 = _cmp_values(av, m + n, big)
        if c2 is None:
            return Verdict.INCONCLUSIVE, "exponent sign undecided"
        return (Verdict.PASS, "") if c2 != Order.GREATER else (Verdict.FAIL, "exact")
    ub = [av.eval(k, stage) for k in ks]
    if isinstance(ub[0], Infinity) and ub[0] > max(ub[1], ub[2]):
        return Verdict.INCONCLUSIVE, "infinite bound"
    if isinstance(max(ub[1], ub[2]), Infinity):
        return Verdict.PASS, ""
    return (Verdict.PASS, "") if ub[0] <= max(ub[1], ub[2]) + _tol(stage) else (Verdict.FAIL, "bound-level")


def _run(
    av: AbsValue,
    name: str,
    pairs: Iterator[tuple[int, int]],
    tests: list[tuple[str, Callable]],
    window: tuple[int, int],
    stage: int,
) -> CheckReport:
    seen: dict = {}
    checked = inconclusive = 0
    first_inconclusive = ""
    for m, n in pairs:
        checked += 1
        for prop, test in tests:
            verdict, detail = test(av, m, n, stage, seen)
            if verdict is Verdict.FAIL:
                return CheckReport(name, window, stage, Verdict.FAIL, (m, n), f"{prop}: {detail}", checked, inconclusive, av.label)
            if verdict is Verdict.INCONCLUSIVE:
                inconclusive += 1
                first_inconclusive = first_inconclusive or f"{prop} at ({m}, {n}): {detail}"
    verdict = Verdict.INCONCLUSIVE if inconclusive else Verdict.PASS
    return CheckReport(name, window, stage, verdict, None, first_inconclusive, checked, inconclusive, av.label)


def check_axioms(av: AbsValue, window: tuple[int, int], stage: int, trials: int, seed: int) -> CheckReport:
    """Multiplicativity and the triangle inequality on seeded samples from ``window``.

    Exact rational bounds and closed forms are compared with zero tolerance;
    generic oracles use tolerance ``2**(1-stage)``, and a multiplicativity
    mismatch there is only reported as inconclusive.
    """
    lo, hi = window
    if lo > hi:
        raise BadParameterError("empty window")
    rng = random.Random(seed)
    edge = [(m, n) for m in range(-2, 3) for n in range(-2, 3) if lo <= m <= hi and lo <= n <= hi]
    edge.sort(key=_pair_key)
    pairs = edge + [(rng.randint(lo, hi), rng.randint(lo, hi)) for _ in range(trials)]
    tests = [("multiplicativity", _multiplicative), ("triangle", _triangle)]
    return _run(av, "axioms", iter(pairs), tests, window, stage)


def check_ultrametric(av: AbsValue, window: tuple[int, int], stage: int) -> CheckReport:
    """``|m+n| <= max(|m|, |n|)`` on every pair of the window."""
    return _run(av, "ultrametric", iter(_window_pairs(window)), [("ultrametric", _ultra)], window, stage)


def check_subtractive(av: AbsValue, window: tuple[int, int], stage: int) -> CheckReport:
    """``|m| <= |m+n| + |n|`` on every pair of naturals in the window.

    Negative parts of the window are dropped. Also cross-checks that the
    triangle inequality over ``[-hi, hi]`` holds exactly when triangle and
    subtractive inequalities hold over the naturals.
    """
    lo, hi = max(window[0], 0), window[1]
    if lo > hi:
        raise BadParameterError("window contains no naturals")
    window = (lo, hi)

    def subtractive(av, m, n, stage, seen):
        return _le_sum(av, m, (m + n, n), stage, seen)

    pairs = _window_pairs(window)
    report = _run(av, "subtractive", iter(pairs), [("subtractive", subtractive)], window, stage)
    if report.verdict is Verdict.FAIL:
        return report
    nat_triangle = _run(av, "triangle-N", iter(pairs), [("triangle", _triangle)], window, stage)
    z_triangle = _run(av, "triangle-Z", iter(_window_pairs((-hi, hi))), [("triangle", _triangle)], (-hi, hi), stage)
    nat_ok = nat_triangle.verdict is Verdict.PASS and report.verdict is Verdict.PASS
    z_ok = z_triangle.verdict is Verdict.PASS
    undecided = Verdict.INCONCLUSIVE in (nat_triangle.verdict, z_triangle.verdict, report.verdict)
    if not undecided and nat_ok != z_ok:
        report.verdict = Verdict.FAIL
        report.detail = f"equivalence broken: Z-triangle {z_triangle.verdict.value}, N-triangle+subtractive {nat_ok}"
        report.witness = z_triangle.witness or nat_triangle.witness
    elif undecided and report.verdict is Verdict.PASS:
        report.verdict = Verdict.INCONCLUSIVE
        report.detail = report.detail or nat_triangle.detail or z_triangle.detail
    report.checked += nat_triangle.checked + z_triangle.checked
    return report


def detect_na(av: AbsValue, budget: int, stage: int) -> int | None:
    """Least ``n`` in ``[2, budget]`` with a certified ``|n| < 1``.

    None means no witness was found; it is never a claim that ``av`` is
    Archimedean, which no finite set of upper bounds can certify.
    """
    if budget < 2:
        raise BadParameterError("budget must be >= 2")
    for n in range(2, budget + 1):
        if av.eval(n, stage) < 1:
            return n
    return None


def corrupted(av: AbsValue, overrides: dict[int, ExtRational]) -> AbsValue:
    """Copy of ``av`` whose values at the given integers are replaced by constants (keeps the descriptor)."""
    fixed = {abs(k): upper_from_rational(v) for k, v in overrides.items()}

    def magnitude(n: int) -> UpperReal:
        return fixed.get(n) or av.upper(n)

    return AbsValue(magnitude, descriptor=av.descriptor, label=f"corrupted {av.label}")
