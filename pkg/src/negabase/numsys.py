"""Bases, digit alphabets, representable intervals and digit strings."""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Iterable, Sequence

from .realnum import Ordering, Real, compare, enclose, floor_of, make_real

__all__ = [
    "AlphabetGapError",
    "UndecidableComparison",
    "NumerationSystem",
    "DigitString",
    "RepInterval",
    "canonical_alphabet",
    "covers_full_interval",
    "representable_interval",
    "evaluate",
    "evaluate_enclosure",
    "prefix_value",
    "lex_compare",
    "parse_base",
]


class AlphabetGapError(ValueError):
    """The alphabet leaves gaps: the representable set is not an interval."""


class UndecidableComparison(ValueError):
    """A lexicographic comparison ran past the known digits of a truncated string."""


def canonical_alphabet(beta: Real | int | Fraction) -> tuple[int, ...]:
    """``{0, ..., floor(beta)}``, or ``{0, ..., beta-1}`` for integer beta."""
    beta = Real.coerce(beta)
    if compare(beta, 1) is not Ordering.GT:
        raise ValueError("base modulus must exceed 1")
    m = floor_of(beta)
    if compare(beta, m) is Ordering.EQ:
        m -= 1
    return tuple(range(m + 1))


def covers_full_interval(beta: Real | int | Fraction, alphabet: Sequence[int]) -> bool:
    """True iff no gap between consecutive digits exceeds ``(a_m - a_0)/(beta - 1)``."""
    beta = Real.coerce(beta)
    digits = sorted(alphabet)
    if len(digits) < 2:
        return False
    gap = max(b - a for a, b in zip(digits, digits[1:]))
    return compare(gap * (beta - 1), digits[-1] - digits[0]) is not Ordering.GT


@dataclass(frozen=True)
class RepInterval:
    l: Real
    r: Real

    def __post_init__(self):
        if compare(self.l, self.r) is Ordering.GT:
            raise ValueError("l must not exceed r")

    def __contains__(self, x) -> bool:
        return compare(self.l, x) is not Ordering.GT and compare(x, self.r) is not Ordering.GT

    @property
    def length(self) -> Real:
        return self.r - self.l


@dataclass(frozen=True, eq=False)
class NumerationSystem:
    """Base ``gamma = sign * beta`` with an ascending integer alphabet."""

    sign: int
    beta: Real
    alphabet: tuple[int, ...]

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        beta = Real.coerce(self.beta)
        object.__setattr__(self, "beta", beta)
        if compare(beta, 1) is not Ordering.GT:
            raise ValueError("beta must exceed 1")
        alphabet = tuple(sorted(set(int(a) for a in self.alphabet)))
        if len(alphabet) < 2:
            raise ValueError("alphabet needs at least two digits")
        object.__setattr__(self, "alphabet", alphabet)
        if not covers_full_interval(beta, alphabet):
            raise AlphabetGapError(f"alphabet {alphabet} leaves gaps for beta={beta}")

    @classmethod
    def canonical(cls, gamma: Real | str | int | Fraction) -> "NumerationSystem":
        gamma = make_real(gamma) if isinstance(gamma, str) else Real.coerce(gamma)
        s = gamma.sign()
        if s == 0:
            raise ValueError("base must be nonzero")
        beta = gamma if s > 0 else -gamma
        return cls(s, beta, canonical_alphabet(beta))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NumerationSystem):
            return NotImplemented
        return self.sign == other.sign and self.alphabet == other.alphabet and self.beta == other.beta

    def __hash__(self) -> int:
        return hash((self.sign, self.beta, self.alphabet))

    @property
    def gamma(self) -> Real:
        return self.beta if self.sign > 0 else -self.beta

    @property
    def negative(self) -> bool:
        return self.sign < 0

    @cached_property
    def floor_beta(self) -> int:
        return floor_of(self.beta)

    @cached_property
    def is_integer_base(self) -> bool:
        return compare(self.beta, self.floor_beta) is Ordering.EQ

    @cached_property
    def frac_beta(self) -> Real:
        return self.beta - self.floor_beta

    @cached_property
    def is_canonical(self) -> bool:
        return self.alphabet == canonical_alphabet(self.beta)

    @cached_property
    def interval(self) -> RepInterval:
        a0, am = self.alphabet[0], self.alphabet[-1]
        b = self.beta
        if self.sign > 0:
            return RepInterval(Real.coerce(a0) / (b - 1), Real.coerce(am) / (b - 1))
        d = b * b - 1
        return RepInterval((a0 - am * b) / d, (am - a0 * b) / d)

    @property
    def l(self) -> Real:
        return self.interval.l

    @property
    def r(self) -> Real:
        return self.interval.r

    def contains(self, x: Real) -> bool:
        return x in self.interval

    def describe(self) -> str:
        return f"{'-' if self.negative else ''}({self.beta})"

    def to_json(self) -> dict:
        return {
            "sign": self.sign,
            "beta": str(self.beta),
            "alphabet": list(self.alphabet),
            "l": real_json(self.l),
            "r": real_json(self.r),
        }


def real_json(x: Real, width: Fraction = Fraction(1, 10 ** 15)) -> dict:
    """Exact text plus a float enclosure rounded outward."""
    lo, hi = enclose(x, width)
    return {
        "exact": str(x),
        "lo": math.nextafter(float(lo), -math.inf) if lo != hi else float(lo),
        "hi": math.nextafter(float(hi), math.inf) if lo != hi else float(hi),
    }


def representable_interval(sys: NumerationSystem) -> RepInterval:
    return sys.interval


def parse_base(text: str, alphabet: Sequence[int] | None = None) -> NumerationSystem:
    """Parse a base expression; a leading minus selects a negative base."""
    gamma = make_real(text)
    if alphabet is None:
        return NumerationSystem.canonical(gamma)
    s = gamma.sign()
    return NumerationSystem(s, gamma if s > 0 else -gamma, tuple(alphabet))


# --------------------------------------------------------------------------
# digit strings


@dataclass(frozen=True)
class DigitString:
    """``prefix`` followed by ``period`` repeated forever, or by zeros.

    A ``truncated`` string is only known up to ``len(prefix)`` digits; asking
    for digits past that raises :class:`UndecidableComparison`.
    """

    prefix: tuple[int, ...] = ()
    period: tuple[int, ...] | None = None
    truncated: bool = False

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(int(d) for d in self.prefix))
        if self.period is not None:
            per = tuple(int(d) for d in self.period)
            if not per:
                raise ValueError("period must be nonempty")
            if self.truncated:
                raise ValueError("a periodic string is never truncated")
            object.__setattr__(self, "period", None if not any(per) else per)

    @classmethod
    def finite(cls, digits: Iterable[int]) -> "DigitString":
        return cls(tuple(digits))

    @classmethod
    def known(cls, digits: Iterable[int]) -> "DigitString":
        """The first digits of a sequence whose continuation is unknown."""
        return cls(tuple(digits), truncated=True)

    @classmethod
    def parse(cls, text: str) -> "DigitString":
        """Parse ``"0,1(0,0,1)"``; a trailing ``...`` marks a truncated string."""
        text = text.strip().replace(" ", "")
        truncated = text.endswith("...")
        if truncated:
            text = text[:-3].rstrip(",")
        m = re.fullmatch(r"([0-9,]*?),?(?:\(([0-9,]+)\))?", text)
        if m is None:
            raise ValueError(f"bad digit string: {text!r}")
        pre = [int(t) for t in m.group(1).split(",") if t != ""] if m.group(1) else []
        per = [int(t) for t in m.group(2).split(",") if t != ""] if m.group(2) else None
        if per is not None and truncated:
            raise ValueError("a periodic string cannot be truncated")
        return cls(tuple(pre), tuple(per) if per else None, truncated)

    def __str__(self) -> str:
        s = ",".join(map(str, self.prefix))
        if self.period is not None:
            s += f"({','.join(map(str, self.period))})"
        elif self.truncated:
            s += ",..." if s else "..."
        return s

    @property
    def exact(self) -> bool:
        return not self.truncated

    def digit(self, i: int) -> int:
        """Digit at 0-based position ``i``."""
        if i < len(self.prefix):
            return self.prefix[i]
        if self.truncated:
            raise UndecidableComparison(f"digit {i + 1} lies past the known horizon")
        if self.period is None:
            return 0
        return self.period[(i - len(self.prefix)) % len(self.period)]

    def digits(self, n: int) -> tuple[int, ...]:
        return tuple(self.digit(i) for i in range(n))

    def shift(self, k: int) -> "DigitString":
        """The suffix starting at 0-based position ``k``."""
        if k <= len(self.prefix):
            return DigitString(self.prefix[k:], self.period, self.truncated)
        if self.truncated:
            raise UndecidableComparison("shift past the known horizon")
        if self.period is None:
            return DigitString()
        j = (k - len(self.prefix)) % len(self.period)
        return DigitString((), self.period[j:] + self.period[:j])

    def distinct_suffixes(self) -> Iterable["DigitString"]:
        """Every suffix ``s_i s_{i+1} ...`` up to repetition (i >= 0)."""
        n = len(self.prefix) + (len(self.period) if self.period else 1)
        for k in range(n):
            yield self.shift(k)

    def horizon(self) -> int | None:
        return len(self.prefix) if self.truncated else None

    def __iter__(self):
        i = 0
        while self.truncated is False or i < len(self.prefix):
            yield self.digit(i)
            i += 1


def lex_compare(s: DigitString, t: DigitString) -> Ordering:
    """Lexicographic order of the infinite sequences."""
    ps = len(s.period) if s.period else 1
    pt = len(t.period) if t.period else 1
    bound = max(len(s.prefix), len(t.prefix)) + math.lcm(ps, pt)
    for i in range(bound):
        a, b = s.digit(i), t.digit(i)
        if a != b:
            return Ordering.LT if a < b else Ordering.GT
    if s.truncated or t.truncated:
        # ran out of known digits without a difference
        raise UndecidableComparison(f"{s} and {t} agree on every known digit")
    return Ordering.EQ


# --------------------------------------------------------------------------
# evaluation


def prefix_value(sys: NumerationSystem, digits: Sequence[int]) -> Real:
    """``sum b_i / gamma**i`` over the given finite digit sequence."""
    n = len(digits)
    if n == 0:
        return Real.rational(0)
    g = sys.gamma
    acc = Real.rational(0)
    for d in digits:
        acc = acc * g + d
    return acc / g ** n


def evaluate(sys: NumerationSystem, s: DigitString) -> Real:
    """Exact value of an eventually periodic (or finite) digit string."""
    if s.truncated:
        raise ValueError("truncated digit string has no exact value; use evaluate_enclosure")
    head = prefix_value(sys, s.prefix)
    if s.period is None:
        return head
    g = sys.gamma
    k, p = len(s.prefix), len(s.period)
    # sum_{j>=1} c_j g^-j over one period, then geometric factor 1/(1 - g^-p)
    cycle = prefix_value(sys, s.period)
    gp = g ** p
    tail = cycle * gp / (gp - 1)
    return head + tail / g ** k


def evaluate_enclosure(sys: NumerationSystem, s: DigitString, depth: int | None = None) -> tuple[Real, Real]:
    """Enclosure ``(lo, hi)`` of the value.

    Exact strings give ``lo == hi``.  Truncated strings use the first ``depth``
    digits (default: all known) and bound the tail by ``gamma**-depth * J``.
    """
    if depth is not None and depth < 0:
        raise ValueError("depth must be nonnegative")
    if not s.truncated:
        v = evaluate(sys, s)
        return v, v
    n = len(s.prefix) if depth is None else min(depth, len(s.prefix))
    head = prefix_value(sys, s.prefix[:n])
    scale = Real.rational(1) / sys.gamma ** n
    a, b = head + scale * sys.l, head + scale * sys.r
    return (a, b) if compare(a, b) is not Ordering.GT else (b, a)
