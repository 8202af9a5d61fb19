"""Confluent bases and normalization of finite digit strings by rewriting."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .expand import dstar_one
from .realnum import Ordering, Real, compare, floor_of

__all__ = [
    "ConfluentParams",
    "InconclusiveError",
    "RewriteBudgetExceeded",
    "confluent_polynomial",
    "detect_confluent",
    "frougny_normalize",
]


class InconclusiveError(ValueError):
    pass


class RewriteBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class ConfluentParams:
    """``d*(1) = (m^d p)^omega`` with ``0 <= p < m``."""

    m: int
    p: int
    d: int

    def __post_init__(self):
        if not (self.m >= 1 and 0 <= self.p < self.m and self.d >= 1):
            raise ValueError(f"invalid confluent parameters {self}")

    @property
    def period(self) -> tuple[int, ...]:
        return (self.m,) * self.d + (self.p,)

    def to_json(self) -> dict:
        return {"m": self.m, "p": self.p, "d": self.d}


def confluent_polynomial(params: ConfluentParams) -> list[int]:
    """Coefficients (constant first) of ``x^(d+1) - m x^d - ... - m x - (p+1)``."""
    return [-(params.p + 1)] + [-params.m] * params.d + [1]


def _vanishes_at(coeffs: Sequence[int], beta: Real) -> bool:
    acc = Real.rational(0)
    for c in reversed(coeffs):
        acc = acc * beta + c
    return acc.is_zero()


def detect_confluent(beta: Real | int | Fraction, horizon: int = 256) -> ConfluentParams | None:
    """Confluent parameters of ``beta``, or None.

    The first digit of ``d*(1)`` below ``m = floor(beta)`` fixes the only
    possible ``(d, p)``; the answer is then settled exactly by checking that
    ``beta`` is a root of the matching polynomial, and cross-checked against
    the periodic shape of ``d*(1)``.
    """
    beta = Real.coerce(beta)
    m = floor_of(beta)
    if compare(beta, m) is Ordering.EQ:
        raise ValueError("integer bases are outside the confluent classification")
    ds = dstar_one(beta, horizon)
    d = None
    for i in range(horizon):
        try:
            t = ds.digit(i)
        except ValueError:
            break
        if t < m:
            d = i
            break
    if d is None:
        raise InconclusiveError(f"d*(1) shows no digit below {m} within {horizon} digits")
    if d == 0:  # pragma: no cover - t_1 = floor(beta) always
        return None
    params = ConfluentParams(m, ds.digit(d), d)
    root = _vanishes_at(confluent_polynomial(params), beta)
    shaped = ds.exact and ds.prefix == () and ds.period == params.period
    if root != shaped:  # pragma: no cover - would mean an arithmetic bug
        raise AssertionError(f"confluent checks disagree for beta={beta}: root={root}, d*(1)={ds}")
    return params if root else None


def _find_factor(s: list[int], params: ConfluentParams, start: int) -> int | None:
    """Leftmost ``j >= start`` with ``s[j:j+d] == m^d`` and ``s[j+d] > p``."""
    m, p, d = params.m, params.p, params.d
    run = 0
    for i in range(start, len(s)):
        if run >= d and s[i] > p:
            return i - d
        run = run + 1 if s[i] == m else 0
    return None


def frougny_normalize(digits: Sequence[int], params: ConfluentParams, budget: int = 1_000_000) -> list[int]:
    """Rewrite ``b m^d a -> (b+1) 0^d (a-p-1)`` until the string is admissible.

    The result has the same length and value and is the greedy expansion of
    that value.  Raises ValueError when the value is not below 1.
    """
    m, p, d = params.m, params.p, params.d
    s = [int(x) for x in digits]
    if any(x < 0 or x > m for x in s):
        raise ValueError(f"digits must lie in 0..{m}")
    steps = 0
    pos = 0
    while True:
        j = _find_factor(s, params, pos)
        if j is None:
            return s
        if j == 0:
            raise ValueError("represented value is not below 1")
        # leftmost factor: s[j-1] < m, otherwise the factor would start at j-1
        s[j - 1] += 1
        for i in range(j, j + d):
            s[i] = 0
        s[j + d] -= p + 1
        steps += 1
        if steps > budget:
            raise RewriteBudgetExceeded(f"more than {budget} rewrites")
        pos = max(0, j - 1 - d)
