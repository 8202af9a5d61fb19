import itertools
import random
from fractions import Fraction

import pytest

from negabase import (Source, certify_optimality, counterexample_interval, expand,
                      min_prefix_error, optimal_candidate, parse_base)
from negabase.numsys import prefix_value
from negabase.optimality import (BudgetExceeded, CaseLabel, ConfluentBaseError, PrefixOracle,
                                 Status, sample_interval, verify_no_optimal_in_interval)
from negabase.realnum import Ordering, compare

from conftest import NEG_BASES, uniform_in


def _brute(s, x, n):
    """Minimal |x - prefix| over all length-n prefixes that leave a representable tail."""
    best, arg = None, []
    for w in itertools.product(s.alphabet, repeat=n):
        y = x
        for b in w:
            y = s.gamma * y - b
        if not s.contains(y):
            continue
        err = abs(x - prefix_value(s, w))
        c = None if best is None else compare(err, best)
        if best is None or c is Ordering.LT:
            best, arg = err, [w]
        elif c is Ordering.EQ:
            arg.append(w)
    return best, arg


@pytest.mark.parametrize("text", NEG_BASES[:3] + ["(1+sqrt(5))/2", "9/5"])
def test_oracle_matches_brute_force(text):
    s = parse_base(text)
    rng = random.Random(29)
    for _ in range(6):
        x = uniform_in(s.l, s.r, rng)
        for n in (1, 3, 5):
            err, mins = min_prefix_error(s, x, n)
            b_err, b_arg = _brute(s, x, n)
            assert err == b_err
            assert sorted(mins) == sorted(b_arg)


@pytest.mark.parametrize("text", NEG_BASES + ["(1+sqrt(5))/2", "9/5"])
def test_min_error_refines_when_zero_digit_fits(text):
    """Appending 0 to a minimizer keeps its error, so the minimum cannot grow then."""
    s = parse_base(text)
    rng = random.Random(31)
    bound = max(abs(s.l), abs(s.r))
    for _ in range(10):
        x = uniform_in(s.l, s.r, rng)
        o = PrefixOracle(s, x)
        for k in range(1, 11):
            a, b = o.min_error(k), o.min_error(k + 1)
            assert compare(b, bound / s.beta ** (k + 1)) is not Ordering.GT
            m = o.min_remainder(k)
            best = [y for y in o.level(k) if abs(y) == m]
            if any(s.contains(s.gamma * y) for y in best):
                assert compare(b, a) is not Ordering.GT


def test_min_error_can_grow_with_depth():
    # the best depth-2 prefix is worse than the best depth-1 prefix here
    s = parse_base("-(3+sqrt(5))/2")
    x = Fraction(-314, 1000)
    e1, _ = _brute(s, x, 1)
    e2, _ = _brute(s, x, 2)
    assert compare(e2, e1) is Ordering.GT
    assert min_prefix_error(s, x, 2)[0] == e2


def test_candidate_achieves_depth_one_minimum(neg_system):
    s = neg_system
    rng = random.Random(37)
    for _ in range(50):
        x = uniform_in(s.l, s.r, rng)
        cand = optimal_candidate(s, x, 1)
        if cand.hit_index == 0:
            continue
        err, _ = min_prefix_error(s, x, 1)
        assert abs(x - prefix_value(s, cand.expansion.digits)) == err


def test_no_other_prefix_certifies(neg_system):
    """A feasible prefix other than the T_o candidate never survives certification."""
    s = neg_system
    rng = random.Random(41)
    n = 6
    for _ in range(4):
        x = uniform_in(s.l, s.r, rng)
        cand = optimal_candidate(s, x, n)
        if not cand.unique:
            continue
        oracle = PrefixOracle(s, x)
        for w in itertools.product(s.alphabet, repeat=n):
            if w == cand.expansion.digits:
                continue
            y = x
            for b in w:
                y = s.gamma * y - b
            if not s.contains(y):
                continue
            v = certify_optimality(s, x, w, n, oracle=oracle)
            assert v.status is Status.REFUTED


@pytest.mark.parametrize("text", ["(1+sqrt(5))/2", "1+sqrt(2)"])
def test_confluent_greedy_never_refuted(text):
    s = parse_base(text)
    rng = random.Random(43)
    for _ in range(10):
        x = Fraction(rng.getrandbits(48), 1 << 48)
        g = expand(s, x, 20, Source.GREEDY)
        assert certify_optimality(s, x, g, 20).status is Status.OPTIMAL


def test_nonconfluent_example():
    s = parse_base("9/5")
    v = certify_optimality(s, Fraction(3, 5), expand(s, Fraction(3, 5), 6, Source.GREEDY), 6)
    assert v.refuted_at == 4 and v.witness == (0, 1, 1, 1)
    assert v.errors[3].candidate == Fraction(2, 45)
    assert v.errors[3].minimum == abs(Fraction(3, 5) - prefix_value(s, (0, 1, 1, 1)))


def test_negative_golden_example():
    s = parse_base("-(1+sqrt(5))/2")
    v = certify_optimality(s, Fraction(-1, 5), optimal_candidate(s, Fraction(-1, 5), 20).expansion, 20)
    assert v.refuted_at == 2 and v.witness == (1, 1)
    assert 0.036 < float(v.errors[1].minimum) < 0.0361


def test_exceptional_point_reports_variants():
    s = parse_base("-(1+sqrt(5))/2")
    x = -1 / (2 * s.beta)
    cand = optimal_candidate(s, x, 5)
    assert not cand.unique and cand.hit_index == 0 and len(cand.variants) >= 2
    assert {v[0] for v in cand.variants} == {0, 1}


def test_case_intervals():
    tau = parse_base("-(1+sqrt(5))/2")
    ci = counterexample_interval(tau)
    b = tau.beta
    assert ci.case_label is CaseLabel.NEG_CASE1
    assert ci.lo == -1 / (2 * b) and ci.hi == -(b - 1) / (2 * b * b)
    assert counterexample_interval(parse_base("-5/2")).case_label is CaseLabel.NEG_CASE2
    assert counterexample_interval(parse_base("-39/10")).case_label is CaseLabel.NEG_CASE3
    c2 = counterexample_interval(parse_base("-5/2"))
    assert c2.lo == -parse_base("-5/2").r / Fraction(5, 2)
    with pytest.raises(ConfluentBaseError):
        counterexample_interval(parse_base("1+sqrt(2)"))


def test_positive_interval_parameters():
    ci = counterexample_interval(parse_base("9/5"))
    p = ci.params
    assert (p["i"], p["k"]) == (3, 1)
    assert p["L"] == Fraction(755, 729) and p["L"] > 1
    assert ci.lo == p["L"] / Fraction(9, 5) and ci.hi == p["R"] / Fraction(9, 5)
    assert ci.refute_depth == 4


def test_sampling_is_deterministic_and_interior():
    ci = counterexample_interval(parse_base("-5/2"))
    a = sample_interval(ci.lo, ci.hi, 20, seed=5)
    assert a == sample_interval(ci.lo, ci.hi, 20, seed=5)
    assert a != sample_interval(ci.lo, ci.hi, 20, seed=6)
    assert all(x in ci for x in a)


def test_verify_small_batch():
    rep = verify_no_optimal_in_interval(parse_base("-39/10"), samples=10, seed=1)
    assert rep.ok and rep.histogram == {2: 10}


def test_budget_exhaustion():
    s = parse_base("-(1+sqrt(5))/2")
    with pytest.raises(BudgetExceeded) as ei:
        min_prefix_error(s, Fraction(-1, 5), 30, budget=5)
    assert ei.value.depth >= 1
