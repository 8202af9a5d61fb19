import itertools
import random
from fractions import Fraction

import pytest

from negabase import (DigitString, Source, dstar_one, evaluate, expand, is_admissible, lex_compare,
                      orbit, parse_base)
from negabase.expand import is_admissible_prefix
from negabase.numsys import prefix_value
from negabase.realnum import Ordering, compare, make_real

POS = ["(1+sqrt(5))/2", "1+sqrt(2)", "9/5", "root(x^3-x^2-x-1, [1.8, 1.9])"]


def test_dstar_known_values():
    assert str(dstar_one(make_real("(1+sqrt(5))/2"))) == "(1,0)"
    assert str(dstar_one(make_real("1+sqrt(2)"))) == "(2,0)"
    assert str(dstar_one(make_real("root(x^3-x^2-x-1, [1.8, 1.9])"))) == "(1,1,0)"
    assert str(dstar_one(2)) == "(1)"
    d = dstar_one(Fraction(9, 5), 8)
    assert d.truncated and d.prefix == (1, 1, 0, 1, 0, 1, 0, 1)


@pytest.mark.parametrize("text", POS)
def test_dstar_matches_expansion_just_below_one(text):
    s = parse_base(text)
    ds = dstar_one(s.beta, 64)
    below = expand(s, 1 - Fraction(1, 10 ** 8), 40, Source.GREEDY, detect_period=False)
    # agreement holds while beta^-n stays above 1e-8
    n = 16
    assert below.digits[:n] == ds.digits(n)


@pytest.mark.parametrize("text", POS[:2] + POS[3:])
def test_dstar_suffixes_not_above(text):
    ds = dstar_one(parse_base(text).beta)
    for suf in ds.distinct_suffixes():
        assert lex_compare(suf, ds) is not Ordering.GT


@pytest.mark.parametrize("text", POS)
def test_greedy_expansions_admissible_and_bounded(text):
    s = parse_base(text)
    ds = dstar_one(s.beta, 96)
    rng = random.Random(13)
    for _ in range(60):
        x = Fraction(rng.getrandbits(48), 1 << 48)
        e = expand(s, x, 30, Source.GREEDY)
        assert is_admissible_prefix(e.digits, ds)
        if e.period is not None and ds.exact:
            assert is_admissible(e.as_digit_string(), ds)
        for n in range(1, 31):
            gap = x - prefix_value(s, e.digits[:n])
            assert gap.sign() >= 0 and compare(gap, 1 / s.beta ** n) is Ordering.LT


def test_non_admissible_detected():
    ds = dstar_one(make_real("(1+sqrt(5))/2"))
    assert not is_admissible(DigitString.parse("0,1,1(0)"), ds)
    assert not is_admissible(DigitString.parse("(1,0)"), ds)
    assert is_admissible(DigitString.parse("1,0,1(0)"), ds)
    assert not is_admissible_prefix([1, 1], ds)


def _feasible_prefixes(s, x, n):
    for w in itertools.product(s.alphabet, repeat=n):
        y = x
        for b in w:
            y = s.gamma * y - b
        if s.contains(y):
            yield w


@pytest.mark.parametrize("text", ["(1+sqrt(5))/2", "1+sqrt(2)", "9/5"])
def test_greedy_prefix_is_lex_greatest(text):
    s = parse_base(text)
    rng = random.Random(17)
    for _ in range(15):
        x = Fraction(rng.getrandbits(30), 1 << 30)
        for n in (3, 6):
            e = expand(s, x, n, Source.GREEDY)
            assert max(_feasible_prefixes(s, x, n)) == e.digits


def test_lex_order_matches_numeric_order():
    s = parse_base("(1+sqrt(5))/2")
    rng = random.Random(19)
    for _ in range(100):
        x, y = (Fraction(rng.getrandbits(40), 1 << 40) for _ in range(2))
        dx = expand(s, x, 40, Source.GREEDY).digits
        dy = expand(s, y, 40, Source.GREEDY).digits
        if x < y:
            assert dx <= dy
        elif x > y:
            assert dx >= dy


def test_period_detection_and_exact_value():
    s = parse_base("(1+sqrt(5))/2")
    e = expand(s, Fraction(1, 2), 6, Source.GREEDY)
    assert str(e) == "0,1,0,0,1,0" and e.period == (0, 3)
    assert evaluate(s, e.as_digit_string()) == Fraction(1, 2)
    n = parse_base("-(1+sqrt(5))/2")
    e = expand(n, Fraction(-1, 5), 12)
    if e.period is not None:
        assert evaluate(n, e.as_digit_string()) == Fraction(-1, 5)


def test_negative_golden_examples():
    s = parse_base("-(1+sqrt(5))/2")
    assert expand(s, Fraction(-1, 5), 4).digits == (0, 0, 1, 0)
    tau = s.beta
    assert expand(s, -1 / (2 * tau), 3).hit_E == 0
    assert expand(s, Fraction(-1, 5), 10).hit_E is None


def test_orbit_entry_and_csv():
    s = parse_base("-(1+sqrt(5))/2")
    tau = s.beta
    target = (-1 / (2 * tau), -(tau - 1) / (2 * tau * tau))
    o = orbit(s, Fraction(3, 10), 5, target)
    assert o.entry == 2
    assert abs(float(o.values[1]) + 0.4854101966) < 1e-9
    rows = list(o.csv_rows())
    assert rows[0] == "k,lo,hi" and len(rows) == 7
    stopped = orbit(s, Fraction(3, 10), 50, target, stop_on_entry=True)
    assert len(stopped.values) == 3


def test_expand_rejects_out_of_domain():
    s = parse_base("-(1+sqrt(5))/2")
    with pytest.raises(ValueError):
        expand(s, 2, 3)
    with pytest.raises(ValueError):
        expand(s, Fraction(1, 3), 3, Source.GREEDY)
