"""Prime ideals of the integers at desk scale.

A point is either ``Principal(p)`` or ``ZeroCandidate``. The latter only says
that no element with ``|n| < 1`` was found within the budget; finite evidence
can refute the zero ideal but never confirm it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Union

from .absval import AbsValue, CheckReport, Verdict
from .errors import BadParameterError, InconsistentOracleError, NotPrimeError, ZeroInputError
from .exact_arith import factorize, is_prime


@dataclass(frozen=True)
class ZeroCandidate:
    def __str__(self):
        return "0-candidate"


@dataclass(frozen=True)
class Principal:
    """The ideal ``(p)``; primality is re-checked by trial division on construction."""

    p: int
    trial_limit: int = field(init=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise NotPrimeError(f"{self.p} is not prime")
        object.__setattr__(self, "trial_limit", isqrt(self.p))

    def __str__(self):
        return str(self.p)


PrimeIdealZ = Union[ZeroCandidate, Principal]


@dataclass(frozen=True)
class Ambiguous:
    candidates: tuple[int, ...]


@dataclass(frozen=True)
class Contradiction:
    pass


@dataclass(frozen=True)
class Witness:
    n: int
    stage: int
    bound: Fraction


@dataclass
class IdealEvidence:
    witnesses: list[Witness] = field(default_factory=list)
    gcd_trace: list[int] = field(default_factory=list)
    undetermined: bool = False

    def to_json(self) -> dict:
        out = {
            "witnesses": [{"n": str(w.n), "stage": w.stage, "bound": str(w.bound)} for w in self.witnesses],
            "gcd_trace": [str(g) for g in self.gcd_trace],
        }
        if self.undetermined:
            out["undetermined"] = True
        return out


def ideal_to_str(ideal: PrimeIdealZ) -> str:
    return str(ideal)


def parse_ideal(s: str) -> PrimeIdealZ:
    """``"0"`` or ``"0-candidate"`` for the zero candidate, a prime for ``(p)``."""
    t = s.strip().lower()
    if t in ("0", "0-candidate", "zero"):
        return ZeroCandidate()
    try:
        p = int(t)
    except ValueError:
        raise BadParameterError(f"not an ideal: {s!r}") from None
    return Principal(p)


def detect_ideal(av: AbsValue, budget: int, stage: int) -> tuple[PrimeIdealZ, IdealEvidence]:
    """The ideal ``{n : |n| < 1}`` as far as ``[2, budget]`` can certify it."""
    if budget < 2:
        raise BadParameterError("budget must be >= 2")
    ev = IdealEvidence()
    g = 0
    for n in range(2, budget + 1):
        b = av.eval(n, stage)
        if b < 1:
            ev.witnesses.append(Witness(n, stage, b))
            g = gcd(g, n)
            ev.gcd_trace.append(g)
    if not ev.witnesses:
        return ZeroCandidate(), ev
    if g == 1:
        raise InconsistentOracleError(
            f"witnesses {[w.n for w in ev.witnesses[:8]]} have gcd 1; no prime ideal contains them all"
        )
    if is_prime(g):
        return Principal(g), ev
    for q, _ in factorize(g):
        if av.eval(q, stage) < 1:
            return Principal(q), ev
    ev.undetermined = True
    return ZeroCandidate(), ev


def ideal_member(ideal: PrimeIdealZ, n: int) -> bool:
    if isinstance(ideal, Principal):
        return n % ideal.p == 0
    return n == 0


def extract_prime(elements: Iterable[int]) -> Union[Principal, Ambiguous, Contradiction]:
    """Generator of the smallest prime ideal containing ``elements``, if it is determined."""
    elements = list(elements)
    if not elements:
        raise BadParameterError("extract_prime needs at least one element")
    g = 0
    for e in elements:
        if e == 0:
            raise ZeroInputError("elements must be nonzero")
        g = gcd(g, e)
    if g == 1:
        return Contradiction()
    if is_prime(g):
        return Principal(g)
    return Ambiguous(tuple(p for p, _ in factorize(g)))


def check_subtractive_ideal(S: Iterable[int], window_max: int) -> CheckReport:
    """Closure of ``S`` under formal subtraction and under multiples, inside ``[1, window_max]``.

    The witness is ``(m, n)`` with ``m`` and ``m + n`` in ``S`` but ``n`` not,
    or ``(m, k)`` with ``m`` in ``S`` and ``k*m`` missing.
    """
    members = set(S)
    if any(not 1 <= s <= window_max for s in members):
        raise BadParameterError(f"S must lie in [1, {window_max}]")
    ordered = sorted(members)
    window = (1, window_max)
    checked = 0
    for i, m in enumerate(ordered):
        for s in ordered[i + 1 :]:
            checked += 1
            n = s - m
            if n not in members:
                return CheckReport("subtractive-ideal", window, 0, Verdict.FAIL, (m, n),
                                   f"{m} and {s} in S but {n} is not", checked)
    for m in ordered:
        for k in range(2, window_max // m + 1):
            checked += 1
            if k * m not in members:
                return CheckReport("subtractive-ideal", window, 0, Verdict.FAIL, (m, k),
                                   f"{m} in S but {k * m} is not", checked)
    return CheckReport("subtractive-ideal", window, 0, Verdict.PASS, None, "", checked)
