"""Property suites behind the ``suite`` subcommand.

Each suite returns a list of ``SuiteResult`` rows: one checked property on one
input, its verdict, and the verdict it is expected to have.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .absval import (
    ClosedForm,
    Euclid,
    Padic,
    PChar,
    Power,
    Trivial,
    check_axioms,
    check_subtractive,
    check_ultrametric,
    closed_form_name,
    make_standard,
)
from .correspondence import check_subadditive, compute_M, ostrow_witness, roundtrip_z
from .exact_arith import Infinity
from .onesided import ded_pow, upper_exp, upper_log, upper_mul

SUITES = ("axioms", "ultrametric", "subtractive", "roundtrip", "fundamental", "exponents")

STANDARD_KINDS: tuple[ClosedForm, ...] = (
    Trivial(),
    Euclid(),
    Padic(2),
    Padic(3),
    Padic(7),
    PChar(3),
    Power(Euclid(), Fraction(1, 3)),
    Power(Euclid(), Fraction(1, 2)),
    Power(Padic(5), Fraction(-7, 2)),
    Power(Padic(2), Fraction(-1, 4)),
)

ROUNDTRIP_KINDS: tuple[ClosedForm, ...] = (
    (Trivial(),)
    + tuple(Power(Padic(p), lam) for p in (2, 3, 5, 7, 97) for lam in (Fraction(-1), Fraction(-1, 4), Fraction(-7, 2)))
    + tuple(Power(Euclid(), lam) for lam in (Fraction(0), Fraction(1, 3), Fraction(1)))
)


@dataclass
class SuiteResult:
    property: str
    label: str
    verdict: str
    expected: str = "pass"
    witness: list[str] | None = None
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.verdict == self.expected

    def to_json(self) -> dict:
        return {
            "property": self.property,
            "label": self.label,
            "verdict": self.verdict,
            "expected": self.expected,
            "ok": self.ok,
            "witness": self.witness,
            "detail": self.detail,
        }


def _from_report(report, label: str, expected: str = "pass") -> SuiteResult:
    witness = None if report.witness is None else [str(w) for w in report.witness]
    return SuiteResult(report.property, label, report.verdict.value, expected, witness, report.detail)


def _is_na(cf: ClosedForm) -> bool:
    return isinstance(cf, (Padic, PChar)) or (isinstance(cf, Power) and isinstance(cf.inner, Padic))


def suite_axioms(stage: int, seed: int, trials: int = 500, window=(-100, 100)) -> list[SuiteResult]:
    return [
        _from_report(check_axioms(make_standard(cf), window, stage, trials, seed), closed_form_name(cf))
        for cf in STANDARD_KINDS
    ]


def suite_ultrametric(stage: int, window=(-100, 100)) -> list[SuiteResult]:
    out = []
    for cf in STANDARD_KINDS:
        # Ultrametric exactly for the non-Archimedean kinds and the trivial value.
        expected = "pass" if _is_na(cf) or isinstance(cf, Trivial) or cf == Power(Euclid(), 0) else "fail"
        out.append(_from_report(check_ultrametric(make_standard(cf), window, stage), closed_form_name(cf), expected))
    return out


def suite_subtractive(stage: int, window=(0, 100)) -> list[SuiteResult]:
    return [
        _from_report(check_subtractive(make_standard(cf), window, stage), closed_form_name(cf))
        for cf in STANDARD_KINDS
    ]


def suite_roundtrip(stage: int, budget: int, window=(-50, 50)) -> list[SuiteResult]:
    return [_from_report(roundtrip_z(cf, budget, stage, window), closed_form_name(cf)) for cf in ROUNDTRIP_KINDS]


def suite_fundamental(stage: int, seed: int, bases=range(2, 21), tol=Fraction(1, 1 << 10)) -> list[SuiteResult]:
    out = []
    cap = 1 + Fraction(1, 1 << stage)
    for cf in STANDARD_KINDS:
        av = make_standard(cf)
        ms = [compute_M(av, b, stage) for b in bases]
        spread = max(ms) - min(ms)
        label = closed_form_name(cf)
        out.append(SuiteResult("base-independence", label, "pass" if spread <= tol else "fail",
                               detail=f"M in [{min(ms)}, {max(ms)}]"))
        worst = max(ms)
        out.append(SuiteResult("M <= 1", label, "pass" if worst <= cap else "fail", detail=f"max M = {worst}"))
    rng = random.Random(seed)
    found = none_ok = 0
    for _ in range(20):
        a, b, g, gp = _quadruple(rng, strict=True)
        found += ostrow_witness(a, b, g, gp, 50) is not None
        a, b, g, gp = _quadruple(rng, strict=False)
        none_ok += ostrow_witness(a, b, g, gp, 50) is None
    out.append(SuiteResult("growth witness (gamma > gamma')", "20 seeded quadruples",
                           "pass" if found == 20 else "fail", detail=f"{found}/20 found"))
    out.append(SuiteResult("growth witness (gamma <= gamma')", "20 seeded quadruples",
                           "pass" if none_ok == 20 else "fail", detail=f"{none_ok}/20 none"))
    return out


def _quadruple(rng: random.Random, strict: bool) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Seeded ``(alpha, beta, gamma, gamma')``; with ``strict``, ``gamma/gamma' >= 3/2``."""
    alpha = Fraction(rng.randint(1, 8), rng.randint(1, 4))
    beta = Fraction(rng.randint(1, 8), rng.randint(1, 4))
    gp = Fraction(rng.randint(1, 20), rng.randint(1, 10))
    if strict:
        gamma = gp * Fraction(rng.randint(3, 8), 2)
    else:
        gamma = gp * Fraction(rng.randint(1, 10), 10)
    return alpha, beta, gamma, gp


def _close(a, b, tol) -> bool:
    if isinstance(a, Infinity) or isinstance(b, Infinity):
        return a == b
    return abs(a - b) <= tol


def basic_equations(xs, lams, stage: int, tol=Fraction(1, 1 << 10)) -> list[SuiteResult]:
    """The laws of exponents, monotonicity and log/exp inversion, on stage bounds."""
    out: list[SuiteResult] = []

    def record(name: str, label: str, ok: bool, detail: str = ""):
        out.append(SuiteResult(name, label, "pass" if ok else "fail", detail=detail))

    for x in xs:
        record("x^0 = 1", f"x={x}", upper_exp(x, 0).bound(stage) == 1)
        record("x^1 = x", f"x={x}", upper_exp(x, 1).bound(stage) == x)
        for lam in lams:
            lab = f"x={x} lam={lam}"
            e = upper_exp(x, lam)
            record("1^lam = 1", f"lam={lam}", upper_exp(1, lam).bound(stage) == 1)
            back = upper_log(x, e).bound(stage)
            record("log_x x^lam = lam", lab, _close(back, lam, tol), f"{back}")
            for lp in lams:
                lab2 = f"x={x} lam={lam} lam'={lp}"
                s = upper_exp(x, lam + lp).bound(stage)
                p = upper_mul(e, upper_exp(x, lp)).bound(stage)
                record("x^(lam+lam') = x^lam x^lam'", lab2, _close(s, p, tol), f"{s} vs {p}")
                inner = ded_pow(x, lam if lam >= 0 else -lam)
                nested = upper_exp(inner, lp if lam >= 0 else -lp).bound(stage)
                direct = upper_exp(x, lam * lp).bound(stage)
                record("x^(lam lam') = (x^lam)^lam'", lab2, _close(nested, direct, tol), f"{nested} vs {direct}")
                if lam <= lp:
                    record("monotone in lam", lab2, upper_exp(x, lam).bound(stage) <= upper_exp(x, lp).bound(stage) + tol)
            for y in xs:
                xy = upper_exp(x * y, lam).bound(stage)
                sep = upper_mul(e, upper_exp(y, lam)).bound(stage)
                record("(xy)^lam = x^lam y^lam", f"x={x} y={y} lam={lam}", _close(xy, sep, tol), f"{xy} vs {sep}")
        for y in (Fraction(1, 2), Fraction(2), Fraction(7, 3), Fraction(10)):
            again = upper_exp(x, upper_log(x, y)).bound(stage)
            record("x^(log_x y) = y", f"x={x} y={y}", _close(again, y, tol), f"{again}")
    return out


EXPONENT_XS = (2, 3, 10)
EXPONENT_LAMS = (Fraction(-2), Fraction(-1, 2), Fraction(0), Fraction(1, 3), Fraction(1))
SUBADDITIVE_QS = (Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(1))


def suite_exponents(stage: int) -> list[SuiteResult]:
    out = basic_equations(EXPONENT_XS, EXPONENT_LAMS, stage)
    for q in SUBADDITIVE_QS:
        out.append(_from_report(check_subadditive(q, 50, stage), f"q={q}"))
    return out


def run_suite(name: str, stage: int, budget: int, seed: int) -> list[SuiteResult]:
    if name == "axioms":
        return suite_axioms(stage, seed)
    if name == "ultrametric":
        return suite_ultrametric(stage)
    if name == "subtractive":
        return suite_subtractive(stage)
    if name == "roundtrip":
        return suite_roundtrip(stage, budget)
    if name == "fundamental":
        return suite_fundamental(stage, seed)
    if name == "exponents":
        return suite_exponents(stage)
    raise ValueError(f"unknown suite {name!r}")
