"""End-to-end acceptance criteria, each reported as one PASS/FAIL line."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from ostrowski.absval import (
    Euclid,
    Padic,
    PChar,
    Power,
    Trivial,
    Verdict,
    check_axioms,
    check_subtractive,
    check_ultrametric,
    detect_na,
    make_standard,
)
from ostrowski.correspondence import (
    EuclidPow,
    PadicPow,
    check_subadditive,
    classify,
    classify_q,
    compute_M,
    ideal_and_exponent,
    ostrow_witness,
    reconstruct,
    roundtrip_pair,
)
from ostrowski.errors import TrivialityNotRefuted
from ostrowski.exact_arith import Infinity
from ostrowski.onesided import ded_pow, upper_exp, upper_log, upper_mul
from ostrowski.spectra import Principal, ZeroCandidate, detect_ideal

from oracles import power

ORACLE_EPS = Fraction(1, 10**60)


@pytest.fixture
def report(capsys):
    def emit(number: int, ok: bool, what: str):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {what}")
        assert ok, what

    return emit


def _within(a, b, tol) -> bool:
    if isinstance(a, Infinity) or isinstance(b, Infinity):
        return a == b
    return abs(a - b) <= tol


# 1 ---------------------------------------------------------------------------

ROUNDTRIP_KINDS = (
    [Padic(p) for p in (2, 3, 5, 7, 97)]
    + [Power(Padic(p), lam) for p in (2, 3, 5, 7, 97) for lam in (Fraction(-1, 4), Fraction(-7, 2))]
    + [Power(Euclid(), lam) for lam in (Fraction(0), Fraction(1, 3), Fraction(1))]
    + [Trivial()]
)


def test_criterion_1_roundtrip_z(report):
    stage, budget, tol = 20, 100, Fraction(1, 2**19)
    bad = []
    for cf in ROUNDTRIP_KINDS:
        av = make_standard(cf)
        back = reconstruct(classify(av, budget, stage))
        for n in range(-50, 51):
            if not _within(av.eval(n, stage), back.eval(n, stage), tol):
                bad.append((cf, n))
                break
        ideal, lam = ideal_and_exponent(cf)
        again = roundtrip_pair(ideal, lam, budget, stage)
        if again.ideal != ideal or not _within(again.lam.bound(stage), lam, tol):
            bad.append((cf, "pair"))
    report(1, not bad, f"round trip on [-50, 50] for {len(ROUNDTRIP_KINDS)} kinds within 2^-19; failures {bad}")


# 2 ---------------------------------------------------------------------------


def test_criterion_2_classification(report):
    stage, budget, tol = 30, 100, Fraction(1, 2**10)
    bad = []
    for p in (2, 3, 5, 7, 97):
        pt = classify(make_standard(Padic(p)), budget, stage)
        if pt.ideal != Principal(p) or not all(_within(b, -1, tol) for b in pt.lambda_bounds(stage)[stage:]):
            bad.append(p)
    pt = classify(make_standard(Euclid()), budget, stage)
    if pt.ideal != ZeroCandidate() or not _within(pt.lam.bound(stage), 1, tol):
        bad.append("euclid")
    report(2, not bad, f"Padic -> (p), lambda ~ -1; Euclid -> 0-candidate, lambda ~ 1; failures {bad}")


# 3 ---------------------------------------------------------------------------


def test_criterion_3_fundamental_constant(report):
    stage, tol = 30, Fraction(1, 2**10)
    kinds = {Euclid(): 1, Padic(2): 0, Padic(7): 0, PChar(3): 0, PChar(5): 0, Trivial(): 0, Power(Euclid(), Fraction(1, 3)): None}
    bad = []
    for cf, exact in kinds.items():
        ms = [compute_M(make_standard(cf), b, stage) for b in range(2, 21)]
        if max(ms) - min(ms) > tol or max(ms) > 1 + Fraction(1, 2**stage):
            bad.append((cf, "spread"))
        if exact is not None and any(m != exact for m in ms):
            bad.append((cf, "exact"))
    report(3, not bad, f"M base-independent on [2, 20], exactly 1 or 0 on closed forms; failures {bad}")


# 4 ---------------------------------------------------------------------------

AXIOM_KINDS = [
    Trivial(),
    Euclid(),
    Padic(2),
    Padic(3),
    Padic(97),
    PChar(2),
    PChar(5),
    Power(Padic(5), Fraction(-1, 4)),
    Power(Padic(3), Fraction(-7, 2)),
    Power(Euclid(), Fraction(1, 3)),
    Power(Euclid(), Fraction(1, 2)),
]


def test_criterion_4_axiom_suites(report):
    stage, window = 20, (-100, 100)
    bad = []
    for cf in AXIOM_KINDS:
        av = make_standard(cf)
        if check_axioms(av, window, stage, 500, 0).verdict is not Verdict.PASS:
            bad.append((cf, "axioms"))
        # negative integers are dropped by the subtractive check, so this runs on [0, 100]
        if check_subtractive(av, window, stage).verdict is not Verdict.PASS:
            bad.append((cf, "subtractive"))
        if detect_na(av, 100, stage) is not None and check_ultrametric(av, window, stage).verdict is not Verdict.PASS:
            bad.append((cf, "ultrametric"))
    report(4, not bad, f"axioms, subtractive and NA ultrametric on [-100, 100], 500 samples; failures {bad}")


# 5 ---------------------------------------------------------------------------


def test_criterion_5_exponent_kernel(report):
    stage, tol = 30, Fraction(1, 2**10)
    xs = (2, 3, 10)
    lams = (Fraction(-2), Fraction(-1, 2), Fraction(0), Fraction(1, 3), Fraction(1))
    bad = []

    def check(name, a, b):
        if not _within(a, b, tol):
            bad.append((name, a, b))

    for x in xs:
        check("x^0", upper_exp(x, 0).bound(stage), 1)
        check("x^1", upper_exp(x, 1).bound(stage), x)
        for lam in lams:
            check("1^lam", upper_exp(1, lam).bound(stage), 1)
            e = upper_exp(x, lam)
            # the bound also has to sit above the true value
            if e.bound(stage) < Fraction(power(x, lam)) - ORACLE_EPS:
                bad.append(("sound", x, lam))
            check("log inverts exp", upper_log(x, e).bound(stage), lam)
            for lp in lams:
                check("sum", upper_exp(x, lam + lp).bound(stage), upper_mul(e, upper_exp(x, lp)).bound(stage))
                base = ded_pow(x, abs(lam))
                nested = upper_exp(base, lp if lam >= 0 else -lp).bound(stage)
                check("product", nested, upper_exp(x, lam * lp).bound(stage))
            for y in xs:
                check("base product", upper_exp(x * y, lam).bound(stage), upper_mul(e, upper_exp(y, lam)).bound(stage))
        for y in (Fraction(1, 2), Fraction(2), Fraction(7, 3)):
            check("exp inverts log", upper_exp(x, upper_log(x, y)).bound(stage), y)
    report(5, not bad, f"six laws of exponents and log/exp inversion at stage 30 within 2^-10; failures {bad[:3]}")


# 6 ---------------------------------------------------------------------------


def test_criterion_6_subadditivity(report):
    qs = (Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(1))
    bad = [q for q in qs if check_subadditive(q, 50, 20, Fraction(1, 2**10)).verdict is not Verdict.PASS]
    report(6, not bad, f"(m+n)^q <= m^q + n^q for 1 <= m, n <= 50; failures {bad}")


# 7 ---------------------------------------------------------------------------


def test_criterion_7_places_of_q(report):
    stage, budget = 20, 100
    bad = []
    for p in (2, 3, 5):
        for alpha in (Fraction(1, 2), Fraction(1), Fraction(3)):
            place = classify_q(make_standard(Power(Padic(p), -alpha)), budget, stage)
            if not (isinstance(place, PadicPow) and place.p == p and place.alpha.value == alpha):
                bad.append((p, alpha))
    for alpha in (Fraction(1, 3), Fraction(1)):
        place = classify_q(make_standard(Power(Euclid(), alpha)), budget, stage)
        if not (isinstance(place, EuclidPow) and place.alpha.value == alpha):
            bad.append(("euclid", alpha))
    for b in (2, 10, 100, 1000, 10**4):
        try:
            classify_q(make_standard(Trivial()), b, stage)
            bad.append(("trivial", b))
        except TrivialityNotRefuted as exc:
            if exc.budget != b:
                bad.append(("trivial budget", b))
    report(7, not bad, f"classify_q recovers (p, alpha) and alpha exactly, refuses Trivial up to 10^4; failures {bad}")


# 8 ---------------------------------------------------------------------------


def _brute_witness(a, b, g, gp, v_max):
    return next((v for v in range(1, v_max + 1) if g**v > (a * v + b) * gp**v), None)


def test_criterion_8_growth_witness(report):
    rng = random.Random(0)

    def frac(lo, hi):
        return Fraction(rng.randint(lo * 8, hi * 8), 8)

    bad = []
    for _ in range(20):
        a, b, gp = frac(1, 2) / 2, frac(1, 2) / 2, frac(1, 2) / 2
        g = gp * (1 + frac(1, 4) / 2)  # ratio above 3/2 keeps the first witness below 50
        v = ostrow_witness(a, b, g, gp, 50)
        if v is None or v != _brute_witness(a, b, g, gp, 50):
            bad.append(("strict", a, b, g, gp))
    for _ in range(20):
        a, b, g = frac(1, 2) / 2, frac(1, 2) / 2, frac(0, 2) / 2
        gp = g + frac(0, 1) / 2
        if ostrow_witness(a, b, g, gp, 50) is not None:
            bad.append(("weak", a, b, g, gp))
    report(8, not bad, f"20 witnesses found for gamma > gamma', none for 20 with gamma <= gamma'; failures {bad}")


# 9 ---------------------------------------------------------------------------


def test_criterion_9_semi_decision_honesty(report):
    av = make_standard(Trivial())
    bad = []
    for b in (2, 10, 100, 1000, 10**4):
        if detect_na(av, b, 30) is not None:
            bad.append(("detect_na", b))
        ideal, ev = detect_ideal(av, b, 30)
        if ideal != ZeroCandidate() or ev.witnesses:
            bad.append(("detect_ideal", b))
    report(9, not bad, f"Trivial stays inconclusive / 0-candidate up to budget 10^4; failures {bad}")
