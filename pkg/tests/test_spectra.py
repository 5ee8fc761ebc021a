from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd

import pytest
from hypothesis import given, strategies as st

from ostrowski.absval import AbsValue, Euclid, Padic, PChar, Power, Trivial, Verdict, make_standard
from ostrowski.errors import BadParameterError, InconsistentOracleError, NotPrimeError, ZeroInputError
from ostrowski.exact_arith import primes_upto
from ostrowski.onesided import UpperReal
from ostrowski.spectra import (
    Ambiguous,
    Contradiction,
    Principal,
    ZeroCandidate,
    check_subtractive_ideal,
    detect_ideal,
    extract_prime,
    ideal_member,
    parse_ideal,
)


def test_detect_padic():
    ideal, ev = detect_ideal(make_standard(Padic(5)), 30, 20)
    assert ideal == Principal(5)
    assert [w.n for w in ev.witnesses] == [5, 10, 15, 20, 25, 30]
    assert all(w.bound < 1 for w in ev.witnesses)
    assert ev.gcd_trace[-1] == 5


def test_detect_trivial_is_only_a_candidate():
    ideal, ev = detect_ideal(make_standard(Trivial()), 10**4, 30)
    assert ideal == ZeroCandidate()
    assert ev.witnesses == [] and not ev.undetermined
    assert ev.to_json() == {"witnesses": [], "gcd_trace": []}


def test_detect_pchar_and_euclid():
    assert detect_ideal(make_standard(PChar(2)), 10, 10)[0] == Principal(2)
    assert detect_ideal(make_standard(Euclid()), 500, 20)[0] == ZeroCandidate()


def test_detect_rejects_small_budget():
    with pytest.raises(BadParameterError):
        detect_ideal(make_standard(Padic(2)), 1, 10)


def test_inconsistent_oracle():
    # |2| < 1 and |3| < 1 cannot both hold in a prime ideal
    liar = AbsValue(lambda n: UpperReal(lambda s: Fraction(1, 2) if n in (2, 3) else Fraction(1)))
    with pytest.raises(InconsistentOracleError):
        detect_ideal(liar, 10, 5)


def test_composite_gcd_picks_certified_prime_factor():
    # only 6 and 12 are small; gcd 6, but only |3| < 1 is certified
    odd = AbsValue(lambda n: UpperReal(lambda s: Fraction(1, 2) if n in (3, 6, 12) else Fraction(1)))
    ideal, _ = detect_ideal(odd, 12, 5)
    assert ideal == Principal(3)
    # no factor of the gcd is small: evidence kept, point left undetermined
    stuck = AbsValue(lambda n: UpperReal(lambda s: Fraction(1, 2) if n in (6, 12) else Fraction(1)))
    ideal, ev = detect_ideal(stuck, 12, 5)
    assert ideal == ZeroCandidate() and ev.undetermined
    assert [w.n for w in ev.witnesses] == [6, 12]


@pytest.mark.parametrize("p", primes_upto(97))
def test_detect_power_padic_every_small_prime(p):
    for lam in (Fraction(-1, 3), Fraction(-5, 2)):
        assert detect_ideal(make_standard(Power(Padic(p), lam)), p, 20)[0] == Principal(p)


@given(st.sampled_from(primes_upto(50)), st.integers(2, 200))
def test_uniqueness_of_small_prime(p, budget):
    av = make_standard(Padic(p))
    ideal, _ = detect_ideal(av, budget, 15)
    if isinstance(ideal, Principal):
        assert ideal.p == p
        assert [q for q in primes_upto(budget) if av.eval(q, 15) < 1] == [p]
    else:
        assert budget < p


def test_ideal_member():
    assert ideal_member(Principal(3), 12)
    assert not ideal_member(Principal(3), 10)
    assert ideal_member(ZeroCandidate(), 0)
    assert not ideal_member(ZeroCandidate(), 5)
    assert ideal_member(Principal(7), -49)


def test_principal_needs_a_prime():
    with pytest.raises(NotPrimeError):
        Principal(15)
    assert Principal(13).trial_limit == 3


def test_parse_ideal():
    assert parse_ideal("0-candidate") == ZeroCandidate()
    assert parse_ideal("0") == ZeroCandidate()
    assert parse_ideal("7") == Principal(7)
    with pytest.raises(NotPrimeError):
        parse_ideal("9")
    with pytest.raises(BadParameterError):
        parse_ideal("x")


@pytest.mark.parametrize(
    "elements, expected",
    [([6, 10], Principal(2)), ([15], Ambiguous((3, 5))), ([4, 9], Contradiction()), ([-14, 21], Principal(7))],
)
def test_extract_prime_examples(elements, expected):
    assert extract_prime(elements) == expected


def test_extract_prime_errors():
    with pytest.raises(BadParameterError):
        extract_prime([])
    with pytest.raises(ZeroInputError):
        extract_prime([3, 0])


def brute_extract(elements):
    g = 0
    for e in elements:
        g = gcd(g, e)
    common = [p for p in range(2, g + 1) if all(p % d for d in range(2, p)) and g % p == 0]
    if not common:
        return Contradiction()
    if common == [g]:
        return Principal(g)
    return Ambiguous(tuple(common))


def test_extract_prime_matches_brute_force():
    pool = range(2, 61)
    for size in (1, 2, 3):
        for subset in combinations(pool, size):
            assert extract_prime(subset) == brute_extract(subset), subset


def test_subtractive_ideal_examples():
    assert check_subtractive_ideal(range(3, 31, 3), 30).verdict is Verdict.PASS
    r = check_subtractive_ideal({4, 6}, 10)
    assert r.verdict is Verdict.FAIL and r.witness == (4, 2)
    assert check_subtractive_ideal([], 10).verdict is Verdict.PASS


def test_subtractive_ideal_multiples():
    r = check_subtractive_ideal({5}, 12)
    assert r.verdict is Verdict.FAIL and r.witness == (5, 2)
    with pytest.raises(BadParameterError):
        check_subtractive_ideal({0, 3}, 10)


@given(st.integers(1, 20), st.integers(1, 80))
def test_multiples_always_pass(d, hi):
    hi = max(hi, d)
    assert check_subtractive_ideal(range(d, hi + 1, d), hi).verdict is Verdict.PASS
