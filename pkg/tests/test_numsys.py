import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from negabase import DigitString, evaluate, expand, lex_compare, parse_base, Source
from negabase.numsys import (AlphabetGapError, NumerationSystem, UndecidableComparison,
                             canonical_alphabet, covers_full_interval, evaluate_enclosure,
                             prefix_value, real_json)
from negabase.realnum import Ordering, compare, make_real, sqrt

from conftest import uniform_in

BASES = ["(1+sqrt(5))/2", "1+sqrt(2)", "9/5", "-(1+sqrt(5))/2", "-(3+sqrt(5))/2", "-5/2", "-39/10", "3", "-2"]


def test_canonical_alphabets():
    assert canonical_alphabet(make_real("(1+sqrt(5))/2")) == (0, 1)
    assert canonical_alphabet(Fraction(39, 10)) == (0, 1, 2, 3)
    assert canonical_alphabet(3) == (0, 1, 2)


def test_interval_closed_forms():
    tau = (1 + sqrt(5)) / 2
    s = parse_base("-(1+sqrt(5))/2")
    assert s.l == -1 and s.r == tau - 1
    p = parse_base("(1+sqrt(5))/2")
    assert p.l == 0 and p.r == 1 / (tau - 1)
    assert parse_base("-2").l == Fraction(-2, 3) and parse_base("-2").r == Fraction(1, 3)


@pytest.mark.parametrize("text", BASES)
def test_interval_endpoints_from_extreme_strings(text):
    s = parse_base(text)
    m = s.alphabet[-1]
    if s.negative:
        assert evaluate(s, DigitString((), (m, 0))) == s.l
        assert evaluate(s, DigitString((), (0, m))) == s.r
    else:
        assert evaluate(s, DigitString((), (m,))) == s.r
    assert compare(s.l, s.r) is Ordering.LT


def test_alphabet_coverage():
    beta = make_real("(1+sqrt(5))/2")
    assert covers_full_interval(beta, (0, 1))
    assert not covers_full_interval(Fraction(5, 2), (0, 2))
    with pytest.raises(AlphabetGapError):
        NumerationSystem(1, Fraction(5, 2), (0, 2))
    assert covers_full_interval(Fraction(5, 2), (0, 1, 2, 3))


def test_digit_string_text_format():
    s = DigitString.parse("0,1(0,0,1)")
    assert s.prefix == (0, 1) and s.period == (0, 0, 1)
    assert str(s) == "0,1(0,0,1)"
    assert DigitString.parse("12,3").prefix == (12, 3)
    assert DigitString.parse("1,0(0)").period is None
    t = DigitString.parse("1,1,0,...")
    assert t.truncated and str(t) == "1,1,0,..."


def test_lex_compare_periodic_and_truncated():
    assert lex_compare(DigitString.parse("(1,0)"), DigitString.parse("1(1,0)")) is Ordering.LT
    assert lex_compare(DigitString.parse("(1,0,1,0)"), DigitString.parse("(1,0)")) is Ordering.EQ
    with pytest.raises(UndecidableComparison):
        lex_compare(DigitString.known([1, 0]), DigitString.parse("1,0(1)"))


def test_evaluate_periodic_matches_geometric_sum():
    s = parse_base("2")
    assert evaluate(s, DigitString.parse("(0,1)")) == Fraction(1, 3)
    n = parse_base("-2")
    # sum 1/(-2)^(2k) = 1/(1 - 1/4)
    assert evaluate(n, DigitString.parse("(0,1)")) == Fraction(1, 3)
    with pytest.raises(ValueError):
        evaluate(n, DigitString.known([0, 1]))


@pytest.mark.parametrize("text", BASES)
def test_expansion_error_bound(text):
    s = parse_base(text)
    rng = random.Random(7)
    bound = max(abs(s.l), abs(s.r))
    for _ in range(40):
        if s.negative:
            x = uniform_in(s.l, s.r, rng)
            src = Source.OPTIMAL
        else:
            x = Fraction(rng.getrandbits(40), 1 << 40)
            src = Source.GREEDY
        for n in (1, 5, 12):
            e = expand(s, x, n, src)
            err = abs(x - prefix_value(s, e.digits))
            assert compare(err, bound / s.beta ** n) is not Ordering.GT


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 1), max_size=6), st.lists(st.integers(0, 1), min_size=1, max_size=4))
def test_enclosure_contains_exact_value(prefix, period):
    s = parse_base("-(1+sqrt(5))/2")
    ds = DigitString(tuple(prefix), tuple(period))
    v = evaluate(s, ds)
    lo, hi = evaluate_enclosure(s, ds, depth=30)
    assert compare(lo, v) is not Ordering.GT and compare(v, hi) is not Ordering.GT


def test_json_rendering():
    s = parse_base("-(1+sqrt(5))/2")
    j = s.to_json()
    assert j["sign"] == -1 and j["alphabet"] == [0, 1]
    r = real_json(s.r)
    assert r["lo"] <= 0.6180339887498949 <= r["hi"] and r["hi"] - r["lo"] < 1e-14
