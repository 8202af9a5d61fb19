"""Digit expansions by iterating a transformation, d*(1), Parry admissibility."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .numsys import DigitString, NumerationSystem, lex_compare
from .realnum import Ordering, Real, compare, enclose, floor_of
from .transforms import (DomainError, branch_map, exceptional_set, step_greedy,
                         step_optimal)

__all__ = [
    "Source",
    "Expansion",
    "Orbit",
    "expand",
    "dstar_one",
    "is_admissible",
    "is_admissible_prefix",
    "orbit",
]


class Source(Enum):
    GREEDY = "Greedy"
    OPTIMAL = "Optimal"


@dataclass
class Expansion:
    system: NumerationSystem
    x: Real
    digits: tuple[int, ...]
    source: Source
    orbit: tuple[Real, ...]  # T^0(x) .. T^n(x)
    hit_E: int | None = None
    period: tuple[int, int] | None = None  # (start, length) once T^start = T^(start+length)

    def as_digit_string(self) -> DigitString:
        """Exact string when the orbit was seen to cycle, else the known prefix."""
        if self.period is None:
            return DigitString.known(self.digits)
        start, length = self.period
        return DigitString(self.digits[:start], self.digits[start:start + length])

    def __str__(self) -> str:
        return ",".join(map(str, self.digits))


def _stepper(sys: NumerationSystem, source: Source):
    if source is Source.GREEDY:
        if sys.negative:
            raise ValueError("greedy expansions need a positive base")
        return lambda y: step_greedy(sys.beta, y)
    if sys.negative and sys.is_canonical:
        bm = branch_map(sys)
        return bm.apply
    return lambda y: step_optimal(sys, y)


def expand(sys: NumerationSystem, x: Real | int | Fraction, n: int,
           source: Source = Source.OPTIMAL, detect_period: bool = True) -> Expansion:
    """First ``n`` digits of ``x`` under the greedy or optimal transformation."""
    if n < 1:
        raise ValueError("n must be at least 1")
    x = Real.coerce(x)
    step = _stepper(sys, source)
    if source is Source.OPTIMAL and not sys.contains(x):
        raise DomainError(f"x={x} lies outside J=[{sys.l}, {sys.r}]")
    try:
        E = exceptional_set(sys) if source is Source.OPTIMAL else []
    except ValueError:
        E = []
    seen: dict[Real, int] = {}
    digits: list[int] = []
    orbit = [x]
    hit = None
    period = None
    y = x
    for k in range(n):
        if hit is None and any(compare(y, e) is Ordering.EQ for e in E):
            hit = k
        if detect_period and period is None:
            if y in seen:
                period = (seen[y], k - seen[y])
            else:
                seen[y] = k
        if period is not None:
            # replay the cycle instead of recomputing
            start, length = period
            d = digits[start + (k - start) % length]
            y = orbit[start + (k + 1 - start) % length]
        else:
            d, y = step(y)
        digits.append(d)
        orbit.append(y)
    if detect_period and period is None and y in seen:
        period = (seen[y], n - seen[y])
    return Expansion(sys, x, tuple(digits), source, tuple(orbit), hit, period)


def dstar_one(beta: Real | int | Fraction, n: int = 64) -> DigitString:
    """Quasi-greedy expansion of 1 in base ``beta``.

    A finite greedy expansion ``t_1...t_k`` of 1 becomes the periodic string
    ``(t_1...t_{k-1}(t_k - 1))``; an eventually periodic remainder orbit gives
    an exact periodic string; otherwise the first ``n`` digits are returned as
    a truncated string.
    """
    beta = Real.coerce(beta)
    if compare(beta, 1) is not Ordering.GT:
        raise ValueError("beta must exceed 1")
    digits: list[int] = []
    seen: dict[Real, int] = {}
    y = Real.rational(1)
    for k in range(n):
        seen[y] = k
        by = beta * y
        d = floor_of(by)
        y = by - d
        digits.append(d)
        if y.is_zero():
            per = tuple(digits[:-1]) + (digits[-1] - 1,)
            return DigitString((), per)
        if y in seen:
            start = seen[y]
            return DigitString(tuple(digits[:start]), tuple(digits[start:]))
    return DigitString.known(digits)


def is_admissible(s: DigitString, dstar: DigitString) -> bool:
    """Every suffix of ``s`` is lexicographically below ``dstar``.

    Raises :class:`UndecidableComparison` when a truncated operand runs out
    of digits before a suffix comparison is settled.
    """
    for suffix in s.distinct_suffixes():
        if lex_compare(suffix, dstar) is not Ordering.LT:
            return False
    return True


def is_admissible_prefix(digits: Sequence[int], dstar: DigitString) -> bool:
    """Finite form of the suffix condition: ``w_i..w_n <= d*(1)_1..d*(1)_(n-i+1)``.

    A finite word passes exactly when it is a prefix of some admissible
    sequence; only ``len(digits)`` digits of ``dstar`` are consulted.
    """
    w = tuple(digits)
    ref = dstar.digits(len(w))
    return all(w[i:] <= ref[:len(w) - i] for i in range(len(w)))


@dataclass
class Orbit:
    system: NumerationSystem
    values: list[Real]  # T^0(x) .. T^n(x)
    digits: list[int]
    entry: int | None = None  # least k with T^k(x) in the target interval
    target: tuple[Real, Real] | None = None

    def enclosures(self, width: Fraction = Fraction(1, 1 << 53)) -> list[tuple[Fraction, Fraction]]:
        return [enclose(v, width) for v in self.values]

    def csv_rows(self, width: Fraction = Fraction(1, 1 << 53)) -> Iterable[str]:
        yield "k,lo,hi"
        for k, (lo, hi) in enumerate(self.enclosures(width)):
            yield f"{k},{float(lo)!r},{float(hi)!r}"


def _inside_open(y: Real, lo: Real, hi: Real) -> bool:
    return compare(lo, y) is Ordering.LT and compare(y, hi) is Ordering.LT


def orbit(sys: NumerationSystem, x: Real | int | Fraction, n: int,
          target: tuple[Real, Real] | None = None, stop_on_entry: bool = False) -> Orbit:
    """Iterate the optimal map ``n`` times, tracking entry into an open target."""
    x = Real.coerce(x)
    if not sys.contains(x):
        raise DomainError(f"x={x} lies outside J")
    step = _stepper(sys, Source.OPTIMAL)
    values, digits = [x], []
    entry = 0 if target is not None and _inside_open(x, *target) else None
    y = x
    for k in range(1, n + 1):
        if stop_on_entry and entry is not None:
            break
        d, y = step(y)
        values.append(y)
        digits.append(d)
        if entry is None and target is not None and _inside_open(y, *target):
            entry = k
    return Orbit(sys, values, digits, entry, target)
