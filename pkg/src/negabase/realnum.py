"""Exact real arithmetic in real algebraic number fields.

Every :class:`Real` is an element of a field ``Q(alpha)`` where ``alpha`` is a
real root of a monic irreducible integer polynomial, pinned down by a
rational isolating interval.  Rationals live in the degree-one field.
Zero testing is structural (an element vanishes iff all its coordinates do),
so ``compare`` only ever returns ``EQ`` for provably equal values; the sign of
a nonzero element is found by refining enclosures until they exclude zero.
"""
from __future__ import annotations

import math
import os
import re
import threading
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

import sympy

__all__ = [
    "Ordering",
    "Real",
    "NumberField",
    "RealParseError",
    "RootIsolationError",
    "PrecisionExhausted",
    "FieldMismatch",
    "make_real",
    "compare",
    "floor_of",
    "enclose",
    "sqrt",
    "precision_bits",
    "set_precision_bits",
]

Number = Union[int, Fraction, "Real"]


class Ordering(Enum):
    LT = -1
    EQ = 0
    GT = 1

    @classmethod
    def of(cls, s: int) -> "Ordering":
        return cls.LT if s < 0 else cls.GT if s > 0 else cls.EQ


class RealParseError(ValueError):
    pass


class RootIsolationError(ValueError):
    pass


class PrecisionExhausted(ArithmeticError):
    """Enclosures could not separate two values within the precision cap."""


class FieldMismatch(ArithmeticError):
    """Arithmetic between elements of two distinct non-rational fields."""


_DEFAULT_BITS = 256
_bits = int(os.environ.get("NEGABASE_PRECISION_BITS", _DEFAULT_BITS))


def precision_bits() -> int:
    return _bits


def set_precision_bits(bits: int) -> None:
    """Set the enclosure-width cap (2**-bits) used when deciding signs."""
    global _bits
    if bits < 64:
        raise ValueError("precision cap must be at least 64 bits")
    _bits = int(bits)


# --------------------------------------------------------------------------
# interval helpers (closed intervals with Fraction endpoints)


def _imul(a: tuple[Fraction, Fraction], b: tuple[Fraction, Fraction]):
    ps = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(ps), max(ps)


def _poly_eval(coeffs: Sequence[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


# --------------------------------------------------------------------------
# fields


class NumberField:
    """``Q(alpha)`` with ``alpha`` a real root of a monic irreducible polynomial.

    ``poly`` lists integer coefficients from the constant term upwards and is
    monic.  Instances are interned by the module-level constructors; compare fields with
    ``is``.
    """

    def __init__(self, poly: Sequence[int], lo: Fraction, hi: Fraction, name: str,
                 squarefree: int | None = None):
        self.poly = tuple(int(c) for c in poly)
        self.degree = len(self.poly) - 1
        self.name = name
        self.squarefree = squarefree  # set for Q(sqrt(d))
        self._lo = Fraction(lo)
        self._hi = Fraction(hi)
        self._lock = threading.Lock()
        self._float = None
        if self.degree == 1:
            self._lo = self._hi = Fraction(-self.poly[0])

    def __repr__(self) -> str:
        return f"NumberField({self.name})"

    @property
    def key(self):
        return (self.poly, self.name)

    def generator_enclosure(self, bits: int) -> tuple[Fraction, Fraction]:
        """Enclosure of the generator with width at most ``2**-bits``."""
        target = Fraction(1, 1 << max(bits, 0))
        with self._lock:
            if self._hi - self._lo <= target:
                return self._lo, self._hi
            if self.squarefree is not None:
                d = self.squarefree
                s = math.isqrt(d << (2 * bits))
                lo = Fraction(s, 1 << bits)
                hi = lo if s * s == d << (2 * bits) else Fraction(s + 1, 1 << bits)
                self._lo, self._hi = max(self._lo, lo), min(self._hi, hi)
                return self._lo, self._hi
            lo, hi = self._lo, self._hi
            slo = _poly_eval(self.poly, lo)
            if slo == 0:
                self._lo = self._hi = lo
                return lo, lo
            neg = slo < 0
            while hi - lo > target:
                mid = (lo + hi) / 2
                v = _poly_eval(self.poly, mid)
                if v == 0:
                    lo = hi = mid
                    break
                if (v < 0) == neg:
                    lo = mid
                else:
                    hi = mid
            self._lo, self._hi = lo, hi
            return lo, hi

    @property
    def generator_float(self) -> float:
        if self._float is None:
            lo, hi = self.generator_enclosure(80)
            self._float = float((lo + hi) / 2)
        return self._float

    def reduce(self, coeffs: list[int]) -> list[int]:
        """Reduce an integer polynomial in the generator modulo ``poly``."""
        n = self.degree
        p = self.poly
        while len(coeffs) > n:
            top = coeffs.pop()
            if top:
                base = len(coeffs) - n
                for i in range(n):
                    coeffs[base + i] -= top * p[i]
        return coeffs


@lru_cache(maxsize=None)
def _rational_field() -> NumberField:
    return NumberField((0, 1), Fraction(0), Fraction(0), "rational")


QQ = _rational_field()


@lru_cache(maxsize=None)
def _quadratic_field(d: int) -> NumberField:
    s = math.isqrt(d)
    return NumberField((-d, 0, 1), Fraction(s), Fraction(s + 1), f"sqrt({d})", squarefree=d)


_general_fields: dict[tuple, NumberField] = {}
_general_lock = threading.Lock()


def _poly_text(coeffs: Sequence[int]) -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = "x" if k == 1 else f"x^{k}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        terms.append(("-" if c < 0 else "+") + body)
    s = "".join(terms)
    return s[1:] if s.startswith("+") else s


def _general_field(poly: tuple[int, ...], root_index: int, lo: Fraction, hi: Fraction) -> NumberField:
    key = (poly, root_index)
    with _general_lock:
        f = _general_fields.get(key)
        if f is None:
            name = f"root({_poly_text(poly)}, [{_frac_text(lo)}, {_frac_text(hi)}])"
            f = NumberField(poly, lo, hi, name)
            _general_fields[key] = f
        return f


def _frac_text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(k, d)`` with ``n == k*k*d`` and ``d`` squarefree."""
    k, d = 1, 1
    for p, e in sympy.factorint(n).items():
        k *= p ** (e // 2)
        if e % 2:
            d *= p
    return k, d


# --------------------------------------------------------------------------
# elements


class Real:
    """An exact real number: ``(num[0] + num[1]*a + ...)/den`` in ``Q(a)``."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field: NumberField, num: Sequence[int], den: int = 1, _normal: bool = False):
        if not _normal:
            num = list(num)
            if den < 0:
                num = [-c for c in num]
                den = -den
            if den == 0:
                raise ZeroDivisionError("zero denominator")
            g = den
            for c in num:
                g = math.gcd(g, c)
                if g == 1:
                    break
            if g > 1:
                num = [c // g for c in num]
                den //= g
            if field.degree > 1 and not any(num[1:]):
                field, num = QQ, num[:1]
        self.field = field
        self.num = tuple(num)
        self.den = den
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def rational(cls, q: int | Fraction | str) -> "Real":
        q = Fraction(q)
        return cls(QQ, (q.numerator,), q.denominator)

    @classmethod
    def coerce(cls, v: Number) -> "Real":
        if isinstance(v, Real):
            return v
        if isinstance(v, (int, Fraction)):
            return cls.rational(v)
        raise TypeError(f"cannot convert {type(v).__name__} to Real")

    def _embed(self, field: NumberField) -> tuple[int, ...]:
        if self.field is field:
            return self.num
        if self.field is QQ:
            return self.num + (0,) * (field.degree - 1)
        raise FieldMismatch(f"{self.field.name} vs {field.name}")

    def _common(self, other: "Real") -> NumberField:
        if self.field is other.field:
            return self.field
        if self.field is QQ:
            return other.field
        if other.field is QQ:
            return self.field
        raise FieldMismatch(f"cannot combine elements of {self.field.name} and {other.field.name}")

    # predicates ---------------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return self.field is QQ

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("not a rational number")
        return Fraction(self.num[0], self.den)

    def is_zero(self) -> bool:
        return not any(self.num)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other: Number) -> "Real":
        if not isinstance(other, Real):
            if isinstance(other, int):
                return Real(self.field, (self.num[0] + other * self.den,) + self.num[1:], self.den)
            other = Real.coerce(other)
        f = self._common(other)
        a, b = self._embed(f), other._embed(f)
        if self.den == other.den:
            return Real(f, [x + y for x, y in zip(a, b)], self.den)
        return Real(f, [x * other.den + y * self.den for x, y in zip(a, b)], self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "Real":
        return Real(self.field, tuple(-c for c in self.num), self.den, _normal=True)

    def __pos__(self) -> "Real":
        return self

    def __sub__(self, other: Number) -> "Real":
        return self + (-other)

    def __rsub__(self, other: Number) -> "Real":
        return (-self) + other

    def __mul__(self, other: Number) -> "Real":
        if not isinstance(other, Real):
            if isinstance(other, int):
                return Real(self.field, [c * other for c in self.num], self.den)
            other = Real.coerce(other)
        f = self._common(other)
        if f is QQ:
            return Real(QQ, (self.num[0] * other.num[0],), self.den * other.den)
        a, b = self._embed(f), other._embed(f)
        if f.degree == 2:
            c0, c1 = f.poly[0], f.poly[1]
            hi = a[1] * b[1]
            return Real(f, (a[0] * b[0] - hi * c0, a[0] * b[1] + a[1] * b[0] - hi * c1),
                        self.den * other.den)
        prod = [0] * (2 * f.degree - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return Real(f, f.reduce(prod), self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "Real":
        if self.is_zero():
            raise ZeroDivisionError("division by zero")
        f = self.field
        if f is QQ:
            return Real(QQ, (self.den,), self.num[0])
        if f.degree == 2:
            # conjugate / norm for x^2 + c1 x + c0
            a, b = self.num
            c0, c1 = f.poly[0], f.poly[1]
            norm = a * a - a * b * c1 + b * b * c0
            return Real(f, ((a - b * c1) * self.den, -b * self.den), norm)
        # solve M * y = e0 where M is multiplication by self
        n = f.degree
        cols = []
        for k in range(n):
            basis = [0] * n
            basis[k] = 1
            cols.append((self * Real(f, basis, 1, _normal=True)))
        m = sympy.Matrix(n, n, lambda i, j: sympy.Rational(cols[j]._embed(f)[i], cols[j].den))
        sol = m.LUsolve(sympy.Matrix([1] + [0] * (n - 1)))
        fr = [Fraction(int(sympy.fraction(v)[0]), int(sympy.fraction(v)[1])) for v in sol]
        den = math.lcm(*(q.denominator for q in fr))
        return Real(f, [int(q * den) for q in fr], den) * self.den

    def __truediv__(self, other: Number) -> "Real":
        if isinstance(other, int):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return Real(self.field, self.num, self.den * other)
        return self * Real.coerce(other).inverse()

    def __rtruediv__(self, other: Number) -> "Real":
        return Real.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "Real":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = Real.rational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __abs__(self) -> "Real":
        return -self if self.sign() < 0 else self

    # order --------------------------------------------------------------
    def sign(self) -> int:
        return _sign(self)

    def _cmp(self, other: Number) -> int:
        return compare(self, other).value

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Real.rational(other)
        if not isinstance(other, Real):
            return NotImplemented
        if self.field is other.field:
            return self.den == other.den and self.num == other.num
        if self.field is QQ or other.field is QQ:
            return False
        return compare(self, other) is Ordering.EQ

    def __hash__(self) -> int:
        if self._hash is None:
            if self.field is QQ:
                self._hash = hash(Fraction(self.num[0], self.den))
            else:
                self._hash = hash((self.field.key, self.num, self.den))
        return self._hash

    def __lt__(self, other: Number) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: Number) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: Number) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: Number) -> bool:
        return self._cmp(other) >= 0

    # conversions --------------------------------------------------------
    def __float__(self) -> float:
        if self.field is QQ:
            return self.num[0] / self.den
        lo, hi = enclose(self, Fraction(1, 1 << 60))
        return float((lo + hi) / 2)

    def __floor__(self) -> int:
        return floor_of(self)

    def __ceil__(self) -> int:
        return -floor_of(-self)

    def __repr__(self) -> str:
        return f"Real({self})"

    def __str__(self) -> str:
        if self.field is QQ:
            return _frac_text(Fraction(self.num[0], self.den))
        g = self.field.name
        terms = []
        for k, c in enumerate(self.num):
            if c == 0:
                continue
            mono = "" if k == 0 else g if k == 1 else f"{g}^{k}"
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            terms.append(("-" if c < 0 else "+") + body)
        body = "".join(terms).lstrip("+")
        if self.den == 1:
            return body
        return f"({body})/{self.den}"


# --------------------------------------------------------------------------
# sign / compare / enclose


def _enclose_num(x: Real, bits: int) -> tuple[Fraction, Fraction]:
    """Enclosure of ``x`` computed from a generator enclosure of ``bits``."""
    f = x.field
    if f is QQ:
        q = Fraction(x.num[0], x.den)
        return q, q
    lo, hi = f.generator_enclosure(bits)
    acc = (Fraction(0), Fraction(0))
    for c in reversed(x.num):
        acc = _imul(acc, (lo, hi))
        acc = (acc[0] + c, acc[1] + c)
    return acc[0] / x.den, acc[1] / x.den


def _magnitude_bits(x: Real) -> int:
    return max(abs(c).bit_length() for c in x.num) + 2 * x.field.degree + 8


def _float_sign(x: Real) -> int:
    """Sign from a float evaluation, or 0 when the float is not conclusive."""
    g = x.field.generator_float
    try:
        val = 0.0
        bound = 0.0
        ag = abs(g)
        for c in reversed(x.num):
            fc = float(c)
            val = val * g + fc
            bound = bound * ag + abs(fc)
    except OverflowError:
        return 0
    if not math.isfinite(val) or not math.isfinite(bound):
        return 0
    if abs(val) > bound * 1e-11:
        return 1 if val > 0 else -1
    return 0


def _sign(x: Real) -> int:
    if x.field is QQ:
        n = x.num[0]
        return (n > 0) - (n < 0)
    if not any(x.num):
        return 0
    s = _float_sign(x)
    if s:
        return s
    f = x.field
    if f.squarefree is not None:
        a, b = x.num
        sa, sb = (a > 0) - (a < 0), (b > 0) - (b < 0)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        # a and b of opposite sign: compare a^2 with b^2 d
        diff = a * a - b * b * f.squarefree
        return sa if diff > 0 else sb
    cap = precision_bits()
    bits = _magnitude_bits(x) + 64
    cap_width = Fraction(1, 1 << cap)
    while True:
        lo, hi = _enclose_num(x, bits)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        if hi - lo <= cap_width:
            raise PrecisionExhausted(f"cannot determine the sign of {x} within 2^-{cap}")
        bits *= 2


def _same_root(a: Real, b: Real) -> bool:
    """Decide ``a == b`` for elements of different fields via minimal polynomials."""
    pa, pb = _minpoly(a), _minpoly(b)
    if pa != pb:
        return False
    xs = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed(pa)), xs)
    ivs = [(Fraction(str(lo)), Fraction(str(hi))) for (lo, hi), _ in poly.intervals()]

    def locate(v: Real) -> int:
        bits = 64
        while True:
            lo, hi = enclose(v, Fraction(1, 1 << bits))
            hits = [i for i, (ilo, ihi) in enumerate(ivs) if not (hi < ilo or lo > ihi)]
            if len(hits) == 1:
                return hits[0]
            if bits > 4 * precision_bits():
                raise PrecisionExhausted("cannot isolate root")
            bits *= 2
            ivs[:] = [(Fraction(str(l)), Fraction(str(h))) for (l, h), _ in
                      poly.intervals(eps=sympy.Rational(1, 1 << bits))]

    return locate(a) == locate(b)


def _minpoly(x: Real) -> tuple[int, ...]:
    """Primitive integer minimal polynomial of ``x`` (constant term first)."""
    f = x.field
    n = f.degree
    rows = []
    for k in range(n):
        basis = [0] * n
        basis[k] = 1
        col = x * Real(f, basis, 1, _normal=True)
        rows.append([sympy.Rational(c, col.den) for c in col._embed(f)])
    m = sympy.Matrix(n, n, lambda i, j: rows[j][i])
    t = sympy.Symbol("x")
    cp = sympy.Poly(m.charpoly(t).as_expr(), t)
    sq = sympy.Poly(sympy.sqf_part(cp.as_expr()), t)
    _, prim = sq.primitive()
    coeffs = [int(c) for c in prim.all_coeffs()]
    if coeffs[0] < 0:
        coeffs = [-c for c in coeffs]
    return tuple(reversed(coeffs))


def compare(a: Number, b: Number) -> Ordering:
    """Exact ordering of two reals."""
    a, b = Real.coerce(a), Real.coerce(b)
    try:
        return Ordering.of(_sign(a - b))
    except FieldMismatch:
        pass
    # distinct fields: equality via minimal polynomials, otherwise race enclosures
    if _same_root(a, b):
        return Ordering.EQ
    bits = 32
    while True:
        alo, ahi = enclose(a, Fraction(1, 1 << bits))
        blo, bhi = enclose(b, Fraction(1, 1 << bits))
        if ahi < blo:
            return Ordering.LT
        if bhi < alo:
            return Ordering.GT
        if bits > 2 * precision_bits():
            raise PrecisionExhausted(f"cannot separate {a} and {b}")
        bits *= 2


def enclose(x: Number, width: Fraction | int | str) -> tuple[Fraction, Fraction]:
    """Rational ``(lo, hi)`` containing ``x`` with ``hi - lo <= width``."""
    x = Real.coerce(x)
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    if x.field is QQ:
        q = Fraction(x.num[0], x.den)
        return q, q
    bits = _magnitude_bits(x) + max(0, -math.floor(math.log2(width))) + 4
    while True:
        lo, hi = _enclose_num(x, bits)
        if hi - lo <= width:
            return lo, hi
        bits += 32


def _float_guess(x: Real) -> int:
    g = x.field.generator_float
    ag = abs(g)
    try:
        val = bound = 0.0
        for c in reversed(x.num):
            fc = float(c)
            val = val * g + fc
            bound = bound * ag + abs(fc)
        # rounding error is a tiny multiple of bound; trust only if well below 1
        if math.isfinite(bound) and bound / x.den < 1e12:
            return math.floor(val / x.den)
    except OverflowError:
        pass
    lo, hi = enclose(x, Fraction(1, 4))
    return math.floor(lo)


def floor_of(x: Number) -> int:
    """Greatest integer not exceeding ``x``, decided exactly."""
    x = Real.coerce(x)
    if x.field is QQ:
        return x.num[0] // x.den
    guess = _float_guess(x)
    # the guess may be off near integers; settle with exact comparisons
    while _sign(x - guess) < 0:
        guess -= 1
    while _sign(x - (guess + 1)) >= 0:
        guess += 1
    return guess


def sqrt(q: Number) -> Real:
    """Square root of a nonnegative rational, exact in ``Q(sqrt(d))``."""
    q = Real.coerce(q)
    if not q.is_rational:
        raise RealParseError("sqrt is only supported for rational arguments")
    fr = q.as_fraction()
    if fr < 0:
        raise RealParseError("sqrt of a negative number")
    n = fr.numerator * fr.denominator
    k, d = _squarefree_split(n) if n else (0, 1)
    if d == 1:
        return Real.rational(Fraction(k, fr.denominator))
    return Real(_quadratic_field(d), (0, k), fr.denominator)


def polynomial_root(coeffs: Sequence[int | Fraction], lo: Fraction, hi: Fraction) -> Real:
    """The unique real root of ``coeffs`` (constant term first) in ``[lo, hi]``."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        raise RootIsolationError("empty isolating interval")
    xs = sympy.Symbol("x")
    coeffs = [sympy.Rational(str(Fraction(c))) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) < 2:
        raise RootIsolationError("polynomial must have degree at least 1")
    poly = sympy.Poly(list(reversed(coeffs)), xs)
    slo, shi = sympy.Rational(lo.numerator, lo.denominator), sympy.Rational(hi.numerator, hi.denominator)
    nroots = sympy.Poly(sympy.sqf_part(poly.as_expr()), xs).count_roots(slo, shi)
    if nroots != 1:
        raise RootIsolationError(f"interval [{lo}, {hi}] contains {nroots} roots, expected exactly 1")
    _, factors = poly.factor_list()
    for fac, _mult in factors:
        if fac.count_roots(slo, shi) == 0:
            continue
        c = [Fraction(int(v)) for v in reversed(fac.all_coeffs())]
        deg = len(c) - 1
        if deg == 1:
            return Real.rational(-c[0] / c[1])
        if deg == 2:
            a2, a1, a0 = c[2], c[1], c[0]
            disc = a1 * a1 - 4 * a2 * a0
            r = sqrt(disc)
            for cand in ((-a1 + r) / (2 * a2), (-a1 - r) / (2 * a2)):
                if compare(cand, lo) is not Ordering.LT and compare(cand, hi) is not Ordering.GT:
                    return cand
            raise RootIsolationError("quadratic root not located")  # pragma: no cover
        # monic generator alpha' = lead * alpha
        lead = int(c[-1])
        ints = [int(v) for v in c]
        monic = tuple(ints[k] * lead ** (deg - 1 - k) for k in range(deg)) + (1,)
        all_roots = sympy.Poly(list(reversed(monic)), xs).intervals()
        glo, ghi = lo * lead, hi * lead
        if lead < 0:
            glo, ghi = ghi, glo
        idx = None
        for i, ((rlo, rhi), _) in enumerate(all_roots):
            if not (Fraction(str(rhi)) < glo or Fraction(str(rlo)) > ghi):
                if sympy.Poly(list(reversed(monic)), xs).count_roots(
                        sympy.Rational(str(max(glo, Fraction(str(rlo))))),
                        sympy.Rational(str(min(ghi, Fraction(str(rhi)))))) == 1:
                    idx = i
        if idx is None:  # pragma: no cover
            raise RootIsolationError("root not located")
        (rlo, rhi), _ = all_roots[idx]
        field = _general_field(monic, idx, Fraction(str(rlo)), Fraction(str(rhi)))
        return Real(field, (0, 1) + (0,) * (deg - 2), lead)
    raise RootIsolationError("root not located")  # pragma: no cover


# --------------------------------------------------------------------------
# textual grammar

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d*)?|\.\d+)|(sqrt|root|x)|(\*\*|[-+*/^(),\[\]]))")


@dataclass
class _Tok:
    kind: str
    text: str


def _tokenize(text: str) -> list[_Tok]:
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise RealParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        num, word, op = m.groups()
        if num is not None:
            out.append(_Tok("num", num))
        elif word is not None:
            out.append(_Tok("word", word))
        else:
            out.append(_Tok("op", "^" if op == "**" else op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


class _Parser:
    """Recursive-descent parser; values are Reals, or polynomials inside root()."""

    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.poly_mode = False

    def peek(self) -> _Tok | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, text: str | None = None) -> _Tok:
        t = self.peek()
        if t is None or (text is not None and t.text != text):
            raise RealParseError(f"expected {text or 'token'}, got {t.text if t else 'end of input'}")
        self.i += 1
        return t

    def parse(self):
        v = self.expr()
        if self.peek() is not None:
            raise RealParseError(f"trailing input at {self.peek().text!r}")
        return v

    def expr(self):
        v = self.term()
        while (t := self.peek()) is not None and t.text in "+-" and t.kind == "op":
            self.i += 1
            w = self.term()
            v = v + w if t.text == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while (t := self.peek()) is not None and t.kind == "op" and t.text in "*/":
            self.i += 1
            w = self.unary()
            v = v * w if t.text == "*" else v / w
        return v

    def unary(self):
        t = self.peek()
        if t is not None and t.kind == "op" and t.text in "+-":
            self.i += 1
            v = self.unary()
            return -v if t.text == "-" else v
        return self.power()

    def power(self):
        v = self.atom()
        t = self.peek()
        if t is not None and t.text == "^":
            self.i += 1
            neg = False
            if self.peek() is not None and self.peek().text == "-":
                self.i += 1
                neg = True
            e = self.take()
            if e.kind != "num" or not e.text.isdigit():
                raise RealParseError("exponent must be an integer literal")
            k = int(e.text) * (-1 if neg else 1)
            v = v ** k
        return v

    def atom(self):
        t = self.take()
        if t.kind == "num":
            q = Fraction(t.text)
            return _Poly.const(q) if self.poly_mode else Real.rational(q)
        if t.text == "(":
            v = self.expr()
            self.take(")")
            return v
        if t.text == "x":
            if not self.poly_mode:
                raise RealParseError("'x' is only allowed inside root(...)")
            return _Poly({1: Fraction(1)})
        if t.text == "sqrt":
            if self.poly_mode:
                raise RealParseError("sqrt not allowed inside a polynomial")
            self.take("(")
            v = self.expr()
            self.take(")")
            return sqrt(v)
        if t.text == "root":
            if self.poly_mode:
                raise RealParseError("nested root")
            self.take("(")
            self.poly_mode = True
            p = self.expr()
            self.poly_mode = False
            if not isinstance(p, _Poly):
                raise RealParseError("root() needs a polynomial in x")
            self.take(",")
            self.take("[")
            lo = self.expr().as_fraction()
            self.take(",")
            hi = self.expr().as_fraction()
            self.take("]")
            self.take(")")
            return polynomial_root(p.coefficients(), lo, hi)
        raise RealParseError(f"unexpected token {t.text!r}")


class _Poly:
    """Minimal rational polynomial in x used only by the parser."""

    def __init__(self, terms: dict[int, Fraction]):
        self.terms = {k: v for k, v in terms.items() if v != 0}

    @classmethod
    def const(cls, q: Fraction) -> "_Poly":
        return cls({0: Fraction(q)})

    def __add__(self, o):
        o = o if isinstance(o, _Poly) else _Poly.const(o)
        t = dict(self.terms)
        for k, v in o.terms.items():
            t[k] = t.get(k, 0) + v
        return _Poly(t)

    def __neg__(self):
        return _Poly({k: -v for k, v in self.terms.items()})

    def __sub__(self, o):
        return self + (-(o if isinstance(o, _Poly) else _Poly.const(o)))

    def __mul__(self, o):
        o = o if isinstance(o, _Poly) else _Poly.const(o)
        t: dict[int, Fraction] = {}
        for i, a in self.terms.items():
            for j, b in o.terms.items():
                t[i + j] = t.get(i + j, 0) + a * b
        return _Poly(t)

    def __truediv__(self, o):
        if isinstance(o, _Poly):
            if set(o.terms) - {0}:
                raise RealParseError("polynomial division only by constants")
            o = o.terms.get(0, Fraction(0))
        return _Poly({k: v / o for k, v in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise RealParseError("negative power of x")
        r = _Poly.const(Fraction(1))
        for _ in range(k):
            r = r * self
        return r

    def as_fraction(self) -> Fraction:
        if set(self.terms) - {0}:
            raise RealParseError("expected a constant")
        return self.terms.get(0, Fraction(0))

    def coefficients(self) -> list[Fraction]:
        deg = max(self.terms, default=0)
        return [self.terms.get(k, Fraction(0)) for k in range(deg + 1)]


def make_real(text: str | int | Fraction | Real) -> Real:
    """Parse a real expression.

    Accepted forms: integers, decimals and ``p/q``; ``sqrt(n)``; sums,
    products, quotients and integer powers of those; and
    ``root(<polynomial in x>, [lo, hi])`` where the closed interval isolates
    exactly one real root.

    >>> make_real("(1+sqrt(5))/2") > make_real("8/5")
    True
    """
    if isinstance(text, (int, Fraction, Real)):
        return Real.coerce(text)
    try:
        v = _Parser(text).parse()
    except (ZeroDivisionError, FieldMismatch) as exc:
        raise RealParseError(str(exc)) from exc
    if isinstance(v, _Poly):
        raise RealParseError("'x' is only allowed inside root(...)")
    return v


def reals(values: Iterable[Number]) -> list[Real]:
    return [Real.coerce(v) for v in values]
