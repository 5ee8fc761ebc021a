"""Absolute values on the integers versus pairs (prime ideal, exponent).

``classify`` sends an absolute value to ``(ideal, lam)``: the ideal of
elements with ``|n| < 1`` and ``lam = inf_m log_m |m|`` over primes ``m``,
clamped to at most 1. ``reconstruct`` goes back:

    |n| = min(1, inf_{p in ideal} (p**ord_p n) ** lam) * max(1, n ** lam)

with an empty infimum equal to ``+inf`` and the Zero token absorbing it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Union

from .absval import (
    AbsValue,
    CheckReport,
    ClosedForm,
    Euclid,
    Padic,
    PChar,
    Power,
    Trivial,
    Verdict,
    closed_form_name,
    detect_na,
    dedekindize,
    make_standard,
)
from .errors import (
    BadBaseError,
    BadParameterError,
    IncompatiblePairError,
    NoClosedFormError,
    NotPositiveDefiniteError,
    TrivialityNotRefuted,
)
from .exact_arith import NEG_INF, ExtRational, Infinity, nth_primes, ord_p, primes_upto
from .onesided import (
    ONE,
    ZERO,
    DedekindReal,
    UpperReal,
    as_upper,
    ded_const,
    ded_log,
    ded_neg,
    first_stage_below,
    upper_exp,
    upper_inf_scheduled,
    upper_log,
    upper_max,
    upper_min,
    upper_mul,
)
from .powers import pow_lower, pow_upper
from .spectra import IdealEvidence, Principal, PrimeIdealZ, ZeroCandidate, detect_ideal

# Deepest stage searched for a certificate that lam < 0.
_CERT_STAGES = 64


def compute_M(av: AbsValue, b: int, stage: int) -> ExtRational:
    """Stage bound of ``max(0, log_b |b|)``, which does not depend on the base ``b``."""
    if not isinstance(b, int) or b < 2:
        raise BadBaseError(f"base must be an integer >= 2, got {b}")
    return upper_max(ZERO, upper_log(b, av.upper(b))).bound(stage)


@dataclass
class ClassificationPoint:
    ideal: PrimeIdealZ
    lam: UpperReal
    evidence: IdealEvidence
    certificate_stage: int | None = None
    dedekind_lam: DedekindReal | None = None

    def lambda_bounds(self, upto: int) -> list[ExtRational]:
        return self.lam.bounds(upto)

    def to_json(self, upto: int) -> dict:
        cert = None
        if isinstance(self.ideal, Principal) and self.evidence.witnesses:
            cert = {"na_witness": str(self.evidence.witnesses[0].n)}
            if self.certificate_stage is not None:
                cert["lambda_negative_at_stage"] = self.certificate_stage
        return {
            "ideal": str(self.ideal),
            "lambda_bounds": [str(b) for b in self.lambda_bounds(upto)],
            "certificate": cert,
            "evidence": self.evidence.to_json(),
        }


def _clamp_to_one(lam: UpperReal) -> UpperReal:
    if lam.const is not None:
        return lam if lam.const <= 1 else ONE
    return UpperReal(lambda n: min(lam.bound(n), Fraction(1)))


def prime_log_family(av: AbsValue, prime_budget: int) -> UpperReal:
    """``inf_m log_m |m|`` over all primes; stage ``n`` consults ``max(n, pi(budget))`` of them."""
    base = len(primes_upto(prime_budget))
    primes: list[int] = []

    def member(k: int) -> UpperReal:
        if k >= len(primes):
            primes[:] = nth_primes(max(2 * k, 16))
        m = primes[k]
        return upper_log(m, av.upper(m))

    return upper_inf_scheduled(member, schedule=lambda n: max(n, base))


def classify(av: AbsValue, prime_budget: int, stage: int) -> ClassificationPoint:
    if prime_budget < 2:
        raise BadParameterError("budget must be >= 2")
    ideal, evidence = detect_ideal(av, prime_budget, stage)
    lam = _clamp_to_one(prime_log_family(av, prime_budget))
    cert = None
    if isinstance(ideal, Principal):
        cert = first_stage_below(lam, 0, max(stage, _CERT_STAGES))
    return ClassificationPoint(ideal, lam, evidence, cert)


def _descriptor_for(ideal: PrimeIdealZ, lam: ExtRational) -> ClosedForm:
    if isinstance(ideal, Principal):
        if lam == NEG_INF:
            return PChar(ideal.p)
        if lam == -1:
            return Padic(ideal.p)
        return Power(Padic(ideal.p), lam)
    if lam == 0:
        return Trivial()
    if lam == 1:
        return Euclid()
    return Power(Euclid(), lam)


def reconstruct(point, lam=None) -> AbsValue:
    """The absolute value of a compatible pair ``(ideal, lam)`` or of a ClassificationPoint."""
    if isinstance(point, ClassificationPoint):
        ideal, lam = point.ideal, point.lam
    else:
        ideal = point
    if lam is None:
        raise BadParameterError("reconstruct needs an exponent")
    lam = as_upper(lam)
    if lam.const is not None and lam.const > 1:
        raise IncompatiblePairError(f"exponent {lam.const} exceeds 1")
    lam = _clamp_to_one(lam)
    if isinstance(ideal, Principal):
        if first_stage_below(lam, 0, _CERT_STAGES) is None:
            raise IncompatiblePairError(f"ideal ({ideal.p}) needs an exponent certified < 0")
    elif isinstance(ideal, ZeroCandidate):
        if lam.const is not None and not 0 <= lam.const:
            raise IncompatiblePairError(f"zero ideal needs exponent in [0, 1], got {lam.const}")
        if first_stage_below(lam, 0, 20) is not None:
            raise IncompatiblePairError("zero ideal with an exponent certified < 0")
    else:
        raise BadParameterError(f"not an ideal: {ideal!r}")

    def magnitude(n: int) -> UpperReal:
        if isinstance(ideal, Principal):
            r = ord_p(ideal.p, n)
            head = upper_min(ONE, upper_exp(ideal.p**r, lam)) if r else ONE
        else:
            head = ONE  # min(1, empty inf = +inf)
        if lam.const is not None and lam.const <= 0:
            return head  # n**lam <= 1, so the max is exactly 1
        return upper_mul(head, upper_max(ONE, upper_exp(n, lam)))

    descriptor = None
    if lam.const is not None:
        descriptor = _descriptor_for(ideal, lam.const)
    label = f"reconstructed ({ideal}, {lam.const if lam.const is not None else 'lam'})"
    return AbsValue(magnitude, descriptor=descriptor, label=label)


def ideal_and_exponent(cf: ClosedForm) -> tuple[PrimeIdealZ, ExtRational | DedekindReal]:
    """The pair a closed form corresponds to."""
    if isinstance(cf, Trivial):
        return ZeroCandidate(), Fraction(0)
    if isinstance(cf, Euclid):
        return ZeroCandidate(), Fraction(1)
    if isinstance(cf, Padic):
        return Principal(cf.p), Fraction(-1)
    if isinstance(cf, PChar):
        return Principal(cf.p), NEG_INF
    if isinstance(cf.inner, Padic):
        return Principal(cf.inner.p), cf.lam
    return ZeroCandidate(), cf.lam


def _lam_close(bound: ExtRational, lam, stage: int) -> bool:
    tol = Fraction(2, 1 << stage)
    if isinstance(lam, DedekindReal):
        lo, hi = lam.interval(stage + 4)
        return not isinstance(bound, Infinity) and lo - tol <= bound <= hi + tol
    if isinstance(lam, Infinity) or isinstance(bound, Infinity):
        return bound == lam
    return abs(bound - lam) <= tol


def roundtrip_pair(ideal: PrimeIdealZ, lam, budget: int, stage: int) -> ClassificationPoint:
    """``classify(reconstruct(ideal, lam))``."""
    return classify(reconstruct(ideal, lam), budget, stage)


def roundtrip_z(cf: ClosedForm, budget: int, stage: int, window: tuple[int, int]) -> CheckReport:
    """Both round trips for one closed form, at tolerance ``2**(1-stage)``."""
    tol = Fraction(2, 1 << stage)
    av = make_standard(cf)
    label = closed_form_name(cf)
    point = classify(av, budget, stage)
    back = reconstruct(point)
    checked = 0
    for n in range(window[0], window[1] + 1):
        checked += 1
        a, b = av.eval(n, stage), back.eval(n, stage)
        if isinstance(a, Infinity) or isinstance(b, Infinity):
            ok = a == b
        else:
            ok = abs(a - b) <= tol
        if not ok:
            return CheckReport("roundtrip", window, stage, Verdict.FAIL, (n,),
                               f"g(f(av)) at {n}: {b} vs {a}", checked, label=label)
    ideal, lam = ideal_and_exponent(cf)
    again = roundtrip_pair(ideal, lam, budget, stage)
    checked += 1
    if again.ideal != ideal:
        return CheckReport("roundtrip", window, stage, Verdict.FAIL, None,
                           f"f(g(p, lam)) ideal {again.ideal} vs {ideal}", checked, label=label)
    bound = again.lam.bound(stage)
    if not _lam_close(bound, lam, stage):
        return CheckReport("roundtrip", window, stage, Verdict.FAIL, None,
                           f"f(g(p, lam)) exponent bound {bound}", checked, label=label)
    return CheckReport("roundtrip", window, stage, Verdict.PASS, None, "", checked, label=label)


# -- growth witnesses behind base independence ----------------------------


def ostrow_witness(alpha, beta, gamma, gamma_p, v_max: int) -> int | None:
    """Least ``v`` in ``[1, v_max]`` with ``gamma**v > (alpha*v + beta) * gamma_p**v``, exactly."""
    alpha, beta, gamma, gamma_p = (Fraction(x) for x in (alpha, beta, gamma, gamma_p))
    if alpha <= 0 or beta <= 0 or gamma < 0 or gamma_p < 0:
        raise BadParameterError("need alpha, beta > 0 and gamma, gamma' >= 0")
    if v_max < 1:
        raise BadParameterError("v_max must be >= 1")
    lhs, rhs = Fraction(1), Fraction(1)
    for v in range(1, v_max + 1):
        lhs *= gamma
        rhs *= gamma_p
        if lhs > (alpha * v + beta) * rhs:
            return v
    return None


def witness_bound(alpha, beta, gamma, gamma_p) -> int:
    """A ``v`` that is guaranteed to violate the hypothesis when ``gamma > gamma' > 0``.

    With ``d = gamma/gamma' - 1``, ``(1+d)**v >= 1 + v*d + v*(v-1)/2*d**2``
    exceeds ``alpha*v + beta`` once ``v`` passes both bounds below.
    """
    alpha, beta, gamma, gamma_p = (Fraction(x) for x in (alpha, beta, gamma, gamma_p))
    if not gamma > gamma_p:
        raise BadParameterError("need gamma > gamma'")
    if gamma_p == 0:
        return 1
    d = gamma / gamma_p - 1
    return max(ceil(beta / d) + 1, ceil(2 * alpha / d**2) + 2)


# -- places of the rationals -----------------------------------------------


@dataclass(frozen=True)
class EuclidPow:
    alpha: DedekindReal


@dataclass(frozen=True)
class PadicPow:
    p: int
    alpha: DedekindReal


QPlace = Union[EuclidPow, PadicPow]


def place_to_json(place: QPlace, stage: int) -> dict:
    alpha = place.alpha
    if alpha.value is not None:
        a = {"exact": str(alpha.value)}
    else:
        lo, hi = alpha.interval(stage)
        a = {"interval": [str(lo), str(hi)]}
    if isinstance(place, PadicPow):
        return {"place": "padic", "p": str(place.p), "alpha": a}
    return {"place": "euclid", "alpha": a}


def _exponent_as_dedekind(e) -> DedekindReal:
    return e if isinstance(e, DedekindReal) else ded_const(e)


def classify_q(av: AbsValue, budget: int, stage: int) -> QPlace:
    """The place of the rationals an absolute value with a closed form belongs to.

    Non-triviality needs a certificate: an ``n`` with ``|n| < 1`` or one with
    a lower bound of ``|n|`` above 1. Without one, ``TrivialityNotRefuted``.
    """
    cf = av.descriptor
    if cf is None:
        raise NoClosedFormError(f"{av.label}: the exponent of a generic oracle cannot be extracted two-sidedly")
    if isinstance(cf, PChar) or (isinstance(cf, Power) and not isinstance(cf.lam, DedekindReal) and cf.lam == NEG_INF):
        raise NotPositiveDefiniteError(f"{closed_form_name(cf)} vanishes on a prime; it is not a place of Q")
    if detect_na(av, budget, stage) is not None:
        ideal, _ = detect_ideal(av, budget, stage)
        if not isinstance(ideal, Principal):
            raise TrivialityNotRefuted(budget)
        p = ideal.p
        if isinstance(cf, (Padic, Power)):
            return PadicPow(p, ded_neg(_exponent_as_dedekind(cf.exponent)))
        return PadicPow(p, ded_neg(ded_log(p, dedekindize(av, p))))
    for n in range(2, budget + 1):
        v = dedekindize(av, n)
        if (v.value is not None and v.value > 1) or (v.value is None and v.lo(stage) > 1):
            if isinstance(cf, (Euclid, Power)):
                return EuclidPow(_exponent_as_dedekind(cf.exponent))
            return EuclidPow(ded_log(2, dedekindize(av, 2)))
    raise TrivialityNotRefuted(budget)


# -- fractional powers are subadditive -------------------------------------


def check_subadditive(q, m_max: int, stage: int, tol: Fraction = Fraction(1, 1 << 10)) -> CheckReport:
    """``(m+n)**q <= m**q + n**q`` for ``1 <= m, n <= m_max``, from directed-rounding bounds."""
    q = Fraction(q)
    if not 0 < q <= 1:
        raise BadParameterError("q must lie in (0, 1]")
    lower = {k: pow_lower(k, q, stage) for k in range(1, m_max + 1)}
    checked = 0
    for m in range(1, m_max + 1):
        for n in range(1, m_max + 1):
            checked += 1
            if pow_upper(m + n, q, stage) > lower[m] + lower[n] + tol:
                return CheckReport("subadditivity", (1, m_max), stage, Verdict.FAIL, (m, n), f"q = {q}", checked)
    return CheckReport("subadditivity", (1, m_max), stage, Verdict.PASS, None, f"q = {q}", checked)
