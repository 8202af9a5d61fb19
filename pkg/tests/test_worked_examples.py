"""Small hand-checkable values across modules."""
from fractions import Fraction as F

from negabase import (DigitString, detect_confluent, dstar_one, expand, frougny_normalize,
                      is_admissible, parse_base)
from negabase.numsys import covers_full_interval, prefix_value
from negabase.realnum import Ordering, compare, floor_of, make_real
from negabase.transforms import (RegimeTag, ambiguity_window, assign_digit, branch_map,
                                 classify_regime, discontinuity_set, feasible_digits,
                                 one_sided_limits, step_greedy, step_optimal)

T = make_real("(1+sqrt(5))/2")
NEG_T = parse_base("-(1+sqrt(5))/2")
NEG_T2 = parse_base("-(3+sqrt(5))/2")


def test_real_values():
    assert floor_of(T) == 1 and floor_of(T * T) == 2 and floor_of(2) == 2
    assert compare(F(9, 5), T) is Ordering.GT
    assert make_real("9/5") == F(9, 5)


def test_intervals_and_coverage():
    assert NEG_T2.l == -2 * T ** 2 / (T ** 4 - 1) and NEG_T2.r == 2 / (T ** 4 - 1)
    assert parse_base("(1+sqrt(5))/2").r == T
    assert not covers_full_interval(F(5, 2), (0, 3))
    assert covers_full_interval(T, (0, 2))


def test_golden_digits_and_steps():
    assert prefix_value(NEG_T, (1, 1)) == -1 / T + 1 / T ** 2
    assert [assign_digit(NEG_T, x) for x in (F(-1, 2), -1 / (2 * T), F(-35, 100))] == [1, 0, 1]
    assert step_optimal(NEG_T, F(-1, 2)) == (1, T / 2 - 1)
    assert step_optimal(NEG_T, 1 / T) == (0, -1)
    assert step_greedy(T, F(1, 2)) == (0, T / 2)
    assert step_greedy(T, T / 2) == (1, T * T / 2 - 1)
    assert feasible_digits(NEG_T, F(3, 10)) == [0]
    assert feasible_digits(NEG_T, F(-1, 4)) == [0, 1]
    assert expand(NEG_T, 0, 5).digits == (0,) * 5


def test_branch_maps():
    bm = branch_map(NEG_T2)
    assert [b.digit for b in bm.branches] == [2, 1, 0]
    assert discontinuity_set(NEG_T2) == [-(NEG_T2.r + 1) / T ** 2, -NEG_T2.r / T ** 2]
    s = parse_base("-5/2")
    assert s.r == F(8, 21)
    assert discontinuity_set(s) == [-(s.r + 1) / F(5, 2), -s.r / F(5, 2)]
    assert ambiguity_window(s, 0) == (s.l + 1, s.r) and s.l + 1 == F(1, 21)
    assert ambiguity_window(NEG_T, 0) == (0, 1 / T)
    s39 = parse_base("-3.9")
    assert s39.r == 3 / (F(39, 10) ** 2 - 1)
    assert all(one_sided_limits(s39, c) == (s39.r - 1, s39.r) for c in discontinuity_set(s39))
    assert classify_regime(F(11, 5)).tag is RegimeTag.MIDPOINT
    assert len(branch_map(parse_base("-2.2")).branches) == 3


def test_admissibility_examples():
    ds = dstar_one(T)
    assert not is_admissible(DigitString.finite([1, 1]), ds)
    assert is_admissible(DigitString.parse("(1,0,0)"), ds)
    assert is_admissible(DigitString.finite([0, 0]), ds)
    assert dstar_one(F(9, 5), 4).prefix == (1, 1, 0, 1)


def test_rewriting_examples():
    assert frougny_normalize([0, 2, 1], detect_confluent(make_real("1+sqrt(2)"))) == [1, 0, 0]
    tau = detect_confluent(T)
    assert frougny_normalize([1, 0, 1, 0], tau) == [1, 0, 1, 0]
