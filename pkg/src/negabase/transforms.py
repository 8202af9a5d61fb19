"""Greedy and optimal digit transformations.

The optimal transformation sends ``x`` to ``gamma*x - D(x)`` where ``D(x)`` is
the digit keeping the remainder inside ``J`` and, among those, closest to
``gamma*x``.  Ties go to the digit that ``x + eps`` would pick, which makes
``D`` right continuous.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .numsys import NumerationSystem
from .realnum import Ordering, Real, compare, floor_of

__all__ = [
    "DomainError",
    "RegimeTag",
    "Regime",
    "Branch",
    "BranchMap",
    "classify_regime",
    "feasible_digits",
    "assign_digit",
    "step_greedy",
    "step_optimal",
    "branch_map",
    "greedy_branch_map",
    "discontinuity_set",
    "exceptional_set",
    "one_sided_limits",
    "ambiguity_window",
]

HALF = Fraction(1, 2)


class DomainError(ValueError):
    pass


class RegimeTag(Enum):
    MIDPOINT = "Midpoint"
    STANDARD = "Standard"


@dataclass(frozen=True)
class Regime:
    tag: RegimeTag
    r: Real
    r_vs_half: Ordering


def _negative_r(beta: Real) -> Real:
    m = floor_of(beta)
    if compare(beta, m) is Ordering.EQ:
        m -= 1
    return m / (beta * beta - 1)


def classify_regime(beta: Real | int | Fraction) -> Regime:
    """Midpoint regime iff ``r = floor(beta)/(beta^2 - 1) >= 1/2``.

    Equivalently ``beta`` lies in ``(1, sqrt 3]`` or ``(2, sqrt 5]``.
    """
    beta = Real.coerce(beta)
    if compare(beta, 1) is not Ordering.GT:
        raise ValueError("beta must exceed 1")
    r = _negative_r(beta)
    c = compare(r, HALF)
    tag = RegimeTag.STANDARD if c is Ordering.LT else RegimeTag.MIDPOINT
    return Regime(tag, r, c)


def feasible_digits(sys: NumerationSystem, y: Real) -> list[int]:
    """Digits ``b`` with ``gamma*y - b`` in ``J``, ascending."""
    z = sys.gamma * y
    lo = -floor_of(sys.r - z)  # ceil(z - r)
    hi = floor_of(z - sys.l)
    return [a for a in sys.alphabet if lo <= a <= hi]


def _nearest(sys: NumerationSystem, z: Real, digits: list[int]) -> int:
    best = digits[0]
    for b in digits[1:]:
        c = compare(2 * z, best + b)
        if c is Ordering.GT or (c is Ordering.EQ and sys.sign > 0):
            best = b
    return best


def assign_digit(sys: NumerationSystem, x: Real) -> int:
    """The locally optimal digit ``D(x)``, by brute force over the alphabet."""
    x = Real.coerce(x)
    digits = feasible_digits(sys, x)
    if not digits:
        raise DomainError(f"x={x} lies outside J=[{sys.l}, {sys.r}]")
    if len(digits) == 1:
        return digits[0]
    return _nearest(sys, sys.gamma * x, digits)


def locally_optimal_digits(sys: NumerationSystem, x: Real) -> list[int]:
    """All feasible digits attaining the minimal ``|gamma*x - b|``."""
    x = Real.coerce(x)
    digits = feasible_digits(sys, x)
    if not digits:
        raise DomainError(f"x={x} lies outside J")
    z = sys.gamma * x
    best = _nearest(sys, z, digits)
    dist = abs(z - best)
    return [b for b in digits if compare(abs(z - b), dist) is Ordering.EQ]


def step_greedy(beta: Real | int | Fraction, x: Real | int | Fraction) -> tuple[int, Real]:
    """One step of ``x -> beta*x - floor(beta*x)`` on ``[0, 1)``."""
    beta, x = Real.coerce(beta), Real.coerce(x)
    if x.sign() < 0 or compare(x, 1) is not Ordering.LT:
        raise DomainError(f"greedy map needs x in [0, 1), got {x}")
    bx = beta * x
    d = floor_of(bx)
    return d, bx - d


def step_optimal(sys: NumerationSystem, x: Real | int | Fraction) -> tuple[int, Real]:
    x = Real.coerce(x)
    d = assign_digit(sys, x)
    return d, sys.gamma * x - d


# --------------------------------------------------------------------------
# closed-form branch maps


@dataclass(frozen=True)
class Branch:
    lo: Real
    hi: Real
    lo_closed: bool
    hi_closed: bool
    digit: int

    def to_json(self) -> dict:
        return {"lo": str(self.lo), "hi": str(self.hi), "lo_closed": self.lo_closed,
                "hi_closed": self.hi_closed, "digit": self.digit,
                "lo_float": float(self.lo), "hi_float": float(self.hi)}


@dataclass(frozen=True)
class BranchMap:
    """Branches of a piecewise-linear map in ascending order of ``x``."""

    system: NumerationSystem
    slope: Real
    branches: tuple[Branch, ...]

    @property
    def cuts(self) -> list[Real]:
        return [b.lo for b in self.branches[1:]]

    def digit_at(self, x: Real) -> int:
        x = Real.coerce(x)
        first, last = self.branches[0], self.branches[-1]
        if compare(x, first.lo) is Ordering.LT or compare(x, last.hi) is Ordering.GT:
            raise DomainError(f"x={x} outside the map's domain")
        if not last.hi_closed and compare(x, last.hi) is Ordering.EQ:
            raise DomainError(f"x={x} outside the map's domain")
        # every interior cut belongs to the branch on its right
        idx = 0
        for c in self.cuts:
            if compare(x, c) is Ordering.LT:
                break
            idx += 1
        return self.branches[idx].digit

    def apply(self, x: Real) -> tuple[int, Real]:
        d = self.digit_at(x)
        return d, self.slope * x - d

    def to_json(self) -> list[dict]:
        return [b.to_json() for b in self.branches]


def _require_negative_canonical(sys: NumerationSystem) -> None:
    if not sys.negative:
        raise ValueError("branch map of the optimal map is defined for negative bases; "
                         "positive bases use the greedy map")
    if not sys.is_canonical:
        raise ValueError("branch map needs the canonical alphabet")


def _cut_points(sys: NumerationSystem) -> list[Real]:
    """Interior cut points, ascending; the cut for digit pair (a, a+1) is at index m-1-a."""
    beta, r = sys.beta, sys.r
    m = sys.alphabet[-1]
    if sys.is_integer_base or classify_regime(beta).tag is RegimeTag.STANDARD:
        cuts = [-(a + r) / beta for a in range(m)]
    else:
        cuts = [-(a + HALF) / beta for a in range(m)]
    return cuts[::-1]


def branch_map(sys: NumerationSystem) -> BranchMap:
    """Closed-form branches of the optimal map for a negative canonical system.

    Standard regime: digit ``a >= 1`` on ``[-(a+r)/beta, -(a-1+r)/beta)`` and
    digit 0 on ``[-r/beta, r]``.  Midpoint regime: cuts at ``-(a+1/2)/beta``.
    """
    _require_negative_canonical(sys)
    cuts = _cut_points(sys)
    m = sys.alphabet[-1]
    edges = [sys.l] + cuts + [sys.r]
    branches = []
    for i in range(m + 1):
        branches.append(Branch(edges[i], edges[i + 1], True, i == m, m - i))
    return BranchMap(sys, sys.gamma, tuple(branches))


def greedy_branch_map(sys: NumerationSystem) -> BranchMap:
    """Branches of the greedy map on ``[0, 1)`` for a positive canonical system."""
    if sys.negative or not sys.is_canonical:
        raise ValueError("greedy branch map needs a positive canonical system")
    m = sys.alphabet[-1]
    beta = sys.beta
    edges = [Real.rational(0)] + [Real.rational(a) / beta for a in range(1, m + 1)] + [Real.rational(1)]
    branches = tuple(Branch(edges[a], edges[a + 1], True, False, a) for a in range(m + 1))
    return BranchMap(sys, sys.gamma, branches)


def discontinuity_set(sys: NumerationSystem) -> list[Real]:
    _require_negative_canonical(sys)
    return _cut_points(sys)


def exceptional_set(sys: NumerationSystem) -> list[Real]:
    """Points where the optimal digit is not uniquely forced.

    Empty for positive bases with a nonnegative alphabet; the cut points of
    the optimal map for negative canonical systems.
    """
    if not sys.negative and sys.alphabet[0] >= 0:
        return []
    if sys.negative and sys.is_canonical:
        return _cut_points(sys)
    raise ValueError("exceptional set is only tabulated for canonical alphabets")


def one_sided_limits(sys: NumerationSystem, delta: Real) -> tuple[Real, Real]:
    """``(lim_{x->delta-} T(x), lim_{x->delta+} T(x))`` at a cut point."""
    bm = branch_map(sys)
    cuts = bm.cuts
    for i, c in enumerate(cuts):
        if compare(c, delta) is Ordering.EQ:
            left, right = bm.branches[i].digit, bm.branches[i + 1].digit
            z = sys.gamma * c
            return z - left, z - right
    raise ValueError(f"{delta} is not a discontinuity of the optimal map")


def ambiguity_window(sys: NumerationSystem, a: int) -> tuple[Real, Real]:
    """Closed range of ``gamma*x`` on which both ``a`` and ``a+1`` are feasible."""
    if a not in sys.alphabet or a + 1 not in sys.alphabet:
        raise ValueError(f"digits {a} and {a + 1} must both be in the alphabet")
    return sys.l + a + 1, sys.r + a
