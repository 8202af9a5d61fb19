"""Certifying and refuting optimality of digit representations.

A representation is optimal when each of its prefixes approximates ``x`` at
least as well as the same-length prefix of any other representation.  The
oracle enumerates every feasible prefix level by level.  A prefix
``b_1..b_n`` is feasible iff its scaled remainder
``y_n = gamma^n (x - sum b_i gamma^-i)`` stays in ``J``, and its error is
``|y_n| / beta^n``; prefixes sharing a remainder are merged, which keeps the
search finite per level for Pisot bases.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .confluent import detect_confluent
from .expand import Expansion, Source, dstar_one, expand
from .numsys import DigitString, NumerationSystem, real_json
from .realnum import Ordering, Real, compare
from .transforms import (DomainError, classify_regime, exceptional_set,
                         feasible_digits, locally_optimal_digits)

__all__ = [
    "BudgetExceeded",
    "ConfluentBaseError",
    "PrefixOracle",
    "OptimalityVerdict",
    "CounterexampleInterval",
    "CaseLabel",
    "Candidate",
    "VerificationReport",
    "feasible_digits",
    "min_prefix_error",
    "optimal_candidate",
    "certify_optimality",
    "counterexample_interval",
    "sample_interval",
    "verify_no_optimal_in_interval",
]

DEFAULT_NODE_BUDGET = 10_000_000


class BudgetExceeded(RuntimeError):
    def __init__(self, message: str, depth: int, partial_min: Real | None):
        super().__init__(message)
        self.depth = depth
        self.partial_min = partial_min


class ConfluentBaseError(ValueError):
    """Confluent bases admit optimal representations everywhere."""


# --------------------------------------------------------------------------
# oracle


class PrefixOracle:
    """Level-by-level enumeration of feasible prefixes of ``x``.

    ``levels[k]`` maps each distinct remainder ``y_k`` to the list of
    ``(parent remainder, digit)`` edges reaching it.
    """

    def __init__(self, sys: NumerationSystem, x: Real, budget: int = DEFAULT_NODE_BUDGET):
        x = Real.coerce(x)
        if not sys.contains(x):
            raise DomainError(f"x={x} lies outside J")
        self.sys = sys
        self.x = x
        self.budget = budget
        self.nodes = 1
        self.levels: list[dict[Real, list[tuple[Real | None, int | None]]]] = [{x: [(None, None)]}]
        self._min: list[Real] = [abs(x)]

    def _grow(self) -> None:
        g = self.sys.gamma
        nxt: dict[Real, list] = {}
        for y in self.levels[-1]:
            # descending digits: the lexicographically largest branch first
            for b in reversed(feasible_digits(self.sys, y)):
                z = g * y - b
                edges = nxt.get(z)
                if edges is None:
                    nxt[z] = [(y, b)]
                    self.nodes += 1
                    if self.nodes > self.budget:
                        raise BudgetExceeded(
                            f"prefix enumeration exceeded {self.budget} nodes at depth {len(self.levels)}",
                            len(self.levels), self._min[-1] if self._min else None)
                else:
                    edges.append((y, b))
        self.levels.append(nxt)
        best = None
        for z in nxt:
            a = abs(z)
            if best is None or compare(a, best) is Ordering.LT:
                best = a
        self._min.append(best)

    def level(self, k: int) -> dict:
        while len(self.levels) <= k:
            self._grow()
        return self.levels[k]

    def min_remainder(self, k: int) -> Real:
        """Least ``|y_k|`` over feasible prefixes of length ``k``."""
        self.level(k)
        return self._min[k]

    def min_error(self, k: int) -> Real:
        return self.min_remainder(k) / self.sys.beta ** k

    def minimizers(self, k: int, limit: int = 1000) -> list[tuple[int, ...]]:
        """Prefixes of length ``k`` attaining the least error, descending lex order."""
        lvl = self.level(k)
        best = self._min[k]
        ends = [z for z in lvl if compare(abs(z), best) is Ordering.EQ]
        out: list[tuple[int, ...]] = []

        def walk(depth: int, y: Real, suffix: tuple[int, ...]) -> None:
            if len(out) >= limit:
                return
            if depth == 0:
                out.append(suffix)
                return
            for parent, b in self.levels[depth][y]:
                walk(depth - 1, parent, (b,) + suffix)

        for z in ends:
            walk(k, z, ())
        out.sort(reverse=True)
        return out[:limit]


def min_prefix_error(sys: NumerationSystem, x: Real | int | Fraction, n: int,
                     budget: int = DEFAULT_NODE_BUDGET, limit: int = 1000) -> tuple[Real, list[tuple[int, ...]]]:
    """Least ``|x - sum_{i<=n} b_i gamma^-i|`` over feasible prefixes, with minimizers."""
    if n < 1:
        raise ValueError("n must be at least 1")
    oracle = PrefixOracle(sys, Real.coerce(x), budget)
    return oracle.min_error(n), oracle.minimizers(n, limit)


# --------------------------------------------------------------------------
# verdicts


class Status(Enum):
    OPTIMAL = "OptimalToDepth"
    REFUTED = "RefutedAt"


@dataclass
class DepthError:
    n: int
    candidate: Real
    minimum: Real

    def to_json(self) -> dict:
        c, m = real_json(self.candidate), real_json(self.minimum)
        return {"n": self.n, "cand_lo": c["lo"], "cand_hi": c["hi"], "min_lo": m["lo"], "min_hi": m["hi"]}


@dataclass
class OptimalityVerdict:
    status: Status
    depth: int
    candidate: tuple[int, ...]
    refuted_at: int | None = None
    witness: tuple[int, ...] | None = None
    errors: list[DepthError] = field(default_factory=list)

    @property
    def refuted(self) -> bool:
        return self.status is Status.REFUTED

    def __str__(self) -> str:
        if self.refuted:
            return f"RefutedAt({self.refuted_at})"
        return f"OptimalToDepth({self.depth})"

    def to_json(self) -> dict:
        return {
            "depth": self.depth,
            "status": self.status.value,
            "refuted_at": self.refuted_at,
            "witness_prefix": None if self.witness is None else ",".join(map(str, self.witness)),
            "candidate_prefix": ",".join(map(str, self.candidate)),
            "errors": [e.to_json() for e in self.errors],
        }


def _candidate_digits(candidate: DigitString | Sequence[int] | Expansion, n: int) -> tuple[int, ...]:
    if isinstance(candidate, Expansion):
        candidate = candidate.digits
    if isinstance(candidate, DigitString):
        return candidate.digits(n)
    digits = tuple(int(d) for d in candidate)
    if len(digits) < n:
        raise ValueError(f"candidate has {len(digits)} digits, depth {n} requested")
    return digits[:n]


def certify_optimality(sys: NumerationSystem, x: Real | int | Fraction,
                       candidate: DigitString | Sequence[int] | Expansion, n: int,
                       budget: int = DEFAULT_NODE_BUDGET,
                       oracle: PrefixOracle | None = None) -> OptimalityVerdict:
    """Compare the candidate's prefix errors with the oracle minimum at depths 1..n."""
    if n < 1:
        raise ValueError("n must be at least 1")
    x = Real.coerce(x)
    digits = _candidate_digits(candidate, n)
    if isinstance(candidate, DigitString) and candidate.exact:
        from .numsys import evaluate
        if evaluate(sys, candidate) != x:
            raise ValueError("candidate does not represent x")
    oracle = oracle or PrefixOracle(sys, x, budget)
    g, beta = sys.gamma, sys.beta
    y = x
    errors: list[DepthError] = []
    scale = Real.rational(1)
    for k in range(1, n + 1):
        y = g * y - digits[k - 1]
        if not sys.contains(y):
            raise ValueError(f"candidate prefix of length {k} is not a prefix of any representation of x")
        scale = scale * beta
        best = oracle.min_remainder(k)
        cand = abs(y)
        errors.append(DepthError(k, cand / scale, best / scale))
        if compare(cand, best) is Ordering.GT:
            witness = oracle.minimizers(k)[0]
            return OptimalityVerdict(Status.REFUTED, n, digits, k, witness, errors)
    return OptimalityVerdict(Status.OPTIMAL, n, digits, None, None, errors)


# --------------------------------------------------------------------------
# candidates


@dataclass
class Candidate:
    expansion: Expansion
    hit_index: int | None
    tied_digits: list[int]
    variants: list[tuple[int, ...]]

    @property
    def unique(self) -> bool:
        return self.hit_index is None


def _variants(sys: NumerationSystem, y: Real, n: int, limit: int) -> list[tuple[int, ...]]:
    """All digit sequences of length ``n`` following locally optimal choices."""
    if n == 0:
        return [()]
    out = []
    for b in reversed(locally_optimal_digits(sys, y)):
        for rest in _variants(sys, sys.gamma * y - b, n - 1, limit):
            out.append((b,) + rest)
            if len(out) >= limit:
                return out
    return out


def optimal_candidate(sys: NumerationSystem, x: Real | int | Fraction, n: int,
                      max_variants: int = 16) -> Candidate:
    """The digits ``D(T^(k-1) x)``, with alternatives if the orbit meets a tie point."""
    x = Real.coerce(x)
    source = Source.GREEDY if (not sys.negative and sys.is_canonical and compare(x, 1) is Ordering.LT
                                 and x.sign() >= 0) else Source.OPTIMAL
    exp = expand(sys, x, n, source)
    if exp.hit_E is None:
        return Candidate(exp, None, [], [exp.digits])
    k = exp.hit_E
    tied = locally_optimal_digits(sys, exp.orbit[k])
    variants = [exp.digits[:k] + v for v in _variants(sys, exp.orbit[k], n - k, max_variants)]
    return Candidate(exp, k, tied, variants)


# --------------------------------------------------------------------------
# counterexample intervals


class CaseLabel(Enum):
    NEG_CASE1 = "NegCase1"
    NEG_CASE2 = "NegCase2"
    NEG_CASE3 = "NegCase3"
    POS_NON_CONFLUENT = "PosNonConfluent"


@dataclass
class CounterexampleInterval:
    case_label: CaseLabel
    lo: Real
    hi: Real
    params: dict = field(default_factory=dict)

    def __contains__(self, x) -> bool:
        return compare(self.lo, x) is Ordering.LT and compare(x, self.hi) is Ordering.LT

    @property
    def refute_depth(self) -> int:
        if self.case_label is CaseLabel.POS_NON_CONFLUENT:
            return self.params["k"] + self.params["i"]
        return 2

    def to_json(self) -> dict:
        params = {}
        for key, v in self.params.items():
            params[key] = str(v) if isinstance(v, Real) else v
        return {"case": self.case_label.value, "lo": real_json(self.lo), "hi": real_json(self.hi),
                "params": params}


def counterexample_interval(sys: NumerationSystem, horizon: int = 256) -> CounterexampleInterval:
    """An open interval none of whose points has an optimal representation."""
    if not sys.is_canonical:
        raise ValueError("counterexample intervals are built for canonical alphabets")
    if sys.is_integer_base:
        raise ValueError("integer bases have no counterexample interval construction")
    beta = sys.beta
    if sys.negative:
        r, frac = sys.r, sys.frac_beta
        b2 = beta * beta
        right = -frac / (2 * b2)
        if compare(r, Fraction(1, 2)) is not Ordering.LT:
            return CounterexampleInterval(CaseLabel.NEG_CASE1, Real.rational(-1) / (2 * beta), right,
                                          {"r": r, "frac": frac})
        if compare(2 * r, frac) is Ordering.GT:
            return CounterexampleInterval(CaseLabel.NEG_CASE2, -r / beta, right, {"r": r, "frac": frac})
        return CounterexampleInterval(CaseLabel.NEG_CASE3, -r / beta, (r - frac) / b2, {"r": r, "frac": frac})

    if detect_confluent(beta, horizon) is not None:
        raise ConfluentBaseError(f"beta={beta} is confluent: every x in [0,1) has an optimal representation")
    ds = dstar_one(beta, horizon)
    t1 = ds.digit(0)
    i = next(j for j in range(1, horizon) if ds.digit(j) < t1) + 1
    t = ds.digits(i)
    L = Real.rational(0)
    for j in range(1, i):
        L = L + Real.rational(t[j - 1]) / beta ** j
    L = L + Real.rational(t[i - 1] + 1) / beta ** i
    R = 1 + Real.rational(1) / beta ** i
    if compare(L, 1) is not Ordering.GT:  # pragma: no cover - guaranteed for non-confluent bases
        raise AssertionError("L must exceed 1")
    k = 0
    bk = Real.rational(1)
    while compare(R, bk) is Ordering.GT:
        k += 1
        bk = bk * beta
    if k == 0:  # pragma: no cover - R > 1
        k = 1
        bk = beta
    return CounterexampleInterval(CaseLabel.POS_NON_CONFLUENT, L / bk, R / bk,
                                  {"t": list(t), "i": i, "L": L, "R": R, "k": k})


# --------------------------------------------------------------------------
# batch verification


def sample_interval(lo: Real, hi: Real, count: int, seed: int) -> list[Real]:
    """Points uniform over the middle 98% of ``(lo, hi)``; one RNG stream per index."""
    width = hi - lo
    out = []
    for idx in range(count):
        rng = random.Random(seed * 1_000_003 + idx)
        u = Fraction(rng.getrandbits(48), 1 << 48)
        out.append(lo + width * (Fraction(1, 100) + Fraction(98, 100) * u))
    return out


@dataclass
class SampleResult:
    x: Real
    verdict: OptimalityVerdict
    failures: list[str]


@dataclass
class VerificationReport:
    system: NumerationSystem
    interval: CounterexampleInterval
    depth: int
    results: list[SampleResult]

    @property
    def samples(self) -> int:
        return len(self.results)

    @property
    def refuted(self) -> int:
        return sum(1 for s in self.results if s.verdict.refuted)

    @property
    def histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(s.verdict.refuted_at for s in self.results if s.verdict.refuted).items()))

    @property
    def failures(self) -> list[tuple[Real, str]]:
        return [(s.x, msg) for s in self.results for msg in s.failures]

    @property
    def ok(self) -> bool:
        return not self.failures and self.refuted == self.samples

    def to_json(self) -> dict:
        return {
            "case": self.interval.case_label.value,
            "interval": self.interval.to_json(),
            "depth": self.depth,
            "samples": self.samples,
            "refuted": self.refuted,
            "refute_depth_histogram": {str(k): v for k, v in self.histogram.items()},
            "failures": [{"x": str(x), "reason": msg} for x, msg in self.failures],
        }


def _check_negative(sys: NumerationSystem, x: Real, cand: tuple[int, ...],
                    verdict: OptimalityVerdict) -> list[str]:
    fails = []
    beta = sys.beta
    b2 = beta * beta
    if cand[:2] != (0, 0):
        fails.append(f"optimal expansion starts {cand[:2]}, expected (0, 0)")
    shifted = x + sys.frac_beta / b2  # x - (1/(-beta) + floor(beta)/beta^2)
    if compare(abs(x), abs(shifted)) is not Ordering.GT:
        fails.append("|x| > |x + {beta}/beta^2| fails")
    if not (compare(sys.l, shifted * b2) is not Ordering.GT and compare(shifted * b2, sys.r) is not Ordering.GT):
        fails.append("x + {beta}/beta^2 lies outside J/beta^2")
    if verdict.refuted_at != 2:
        fails.append(f"expected refutation at depth 2, got {verdict}")
    return fails


def _check_positive(ci: CounterexampleInterval, cand: tuple[int, ...], verdict: OptimalityVerdict) -> list[str]:
    k, i = ci.params["k"], ci.params["i"]
    expected = (0,) * (k - 1) + (1,) + (0,) * i
    fails = []
    if cand[:k + i] != expected:
        fails.append(f"greedy prefix {cand[:k + i]}, expected {expected}")
    if verdict.refuted_at != k + i:
        fails.append(f"expected refutation at depth {k + i}, got {verdict}")
    return fails


def verify_one(sys: NumerationSystem, ci: CounterexampleInterval, x: Real, depth: int,
               budget: int = DEFAULT_NODE_BUDGET) -> SampleResult:
    cand = optimal_candidate(sys, x, depth)
    digits = cand.expansion.digits
    verdict = certify_optimality(sys, x, digits, depth, budget)
    if sys.negative:
        fails = _check_negative(sys, x, digits, verdict)
    else:
        fails = _check_positive(ci, digits, verdict)
    if x not in ci:
        fails.append("sample outside the interval")
    return SampleResult(x, verdict, fails)


def verify_no_optimal_in_interval(sys: NumerationSystem, ci: CounterexampleInterval | None = None,
                                  samples: int = 100, depth: int | None = None, seed: int = 0,
                                  budget: int = DEFAULT_NODE_BUDGET) -> VerificationReport:
    """Sample the counterexample interval and refute every sampled point."""
    ci = ci or counterexample_interval(sys)
    if depth is None:
        depth = max(ci.refute_depth, 20 if sys.negative else 25)
    if depth < ci.refute_depth:
        raise ValueError(f"depth must reach {ci.refute_depth}")
    xs = sample_interval(ci.lo, ci.hi, samples, seed)
    results = [verify_one(sys, ci, x, depth, budget) for x in xs]
    return VerificationReport(sys, ci, depth, results)


def exceptional_orbit(sys: NumerationSystem, x: Real, n: int) -> int | None:
    """First k with ``T^k(x)`` in the exceptional set, if any within n steps."""
    try:
        exceptional_set(sys)
    except ValueError:
        return None
    return expand(sys, x, n, Source.OPTIMAL).hit_E


def regime_label(sys: NumerationSystem) -> str | None:
    if not sys.negative or sys.is_integer_base:
        return None
    return classify_regime(sys.beta).tag.value


__all__ += ["Status", "DepthError", "SampleResult", "verify_one", "exceptional_orbit",
            "regime_label"]
