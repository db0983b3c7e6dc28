"""Arbitrary-precision interval arithmetic with outward rounding.

Endpoints are dyadic rationals (mantissa * 2**exponent) so rounding is a
shift; conversion from a general rational rounds the lower endpoint down
and the upper endpoint up.  Every arithmetic result is an interval that
contains the exact mathematical result.  Values are immutable; operations
are pure functions.

Division by an interval containing zero raises
:class:`~polycert.errors.IntervalDivisionError` -- callers always have the
means to split or refine first, so no extended intervals are provided.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import IntervalDivisionError
from .rationals import Rational

#: Default working precision in bits of mantissa.
DEFAULT_PRECISION = 53


class Dyadic(NamedTuple):
    """A dyadic rational man * 2**exp in canonical form (man odd or zero)."""

    man: int
    exp: int

    def as_rational(self) -> "Rational":
        if self.exp >= 0:
            return Rational(self.man << self.exp)
        return Rational(self.man, 1 << (-self.exp))

    def __str__(self) -> str:
        return f"{self.man}*2^{self.exp}"


DYADIC_ZERO = Dyadic(0, 0)


def _normalize(man: int, exp: int) -> Dyadic:
    if man == 0:
        return DYADIC_ZERO
    while man % 2 == 0:
        man //= 2
        exp += 1
    return Dyadic(man, exp)


def dyadic_from_int(n: int) -> Dyadic:
    return _normalize(n, 0)


def dyadic_cmp(a: Dyadic, b: Dyadic) -> int:
    """Exact comparison; -1, 0 or +1."""
    if a.exp >= b.exp:
        x, y = a.man << (a.exp - b.exp), b.man
    else:
        x, y = a.man, b.man << (b.exp - a.exp)
    return (x > y) - (x < y)


def dyadic_add(a: Dyadic, b: Dyadic) -> Dyadic:
    e = min(a.exp, b.exp)
    return _normalize((a.man << (a.exp - e)) + (b.man << (b.exp - e)), e)


def dyadic_sub(a: Dyadic, b: Dyadic) -> Dyadic:
    e = min(a.exp, b.exp)
    return _normalize((a.man << (a.exp - e)) - (b.man << (b.exp - e)), e)


def dyadic_mul(a: Dyadic, b: Dyadic) -> Dyadic:
    return _normalize(a.man * b.man, a.exp + b.exp)


def dyadic_neg(a: Dyadic) -> Dyadic:
    return Dyadic(-a.man, a.exp) if a.man else DYADIC_ZERO


def round_ratio(num: int, den: int, prec: int, up: bool) -> Dyadic:
    """Round num/den (den > 0) to a dyadic with at most ``prec`` mantissa
    bits, toward -inf (``up=False``) or +inf (``up=True``)."""
    if num == 0:
        return DYADIC_ZERO
    if den <= 0:
        raise ValueError("denominator must be positive")
    a = abs(num)
    # k: unique integer with 2**(k-1) <= a/den < 2**k
    k = a.bit_length() - den.bit_length()
    if k >= 0:
        if a >= den << k:
            k += 1
    else:
        if a << (-k) >= den:
            k += 1
    e = k - prec
    if e >= 0:
        q, r = divmod(a, den << e)
    else:
        q, r = divmod(a << (-e), den)
    # round the signed value in the requested direction
    ceil_abs = (num > 0) == up
    if ceil_abs and r:
        q += 1
        if q == 1 << prec:
            q >>= 1
            e += 1
    return _normalize(q if num > 0 else -q, e)


def round_rational(x, prec: int, up: bool) -> Dyadic:
    return round_ratio(int(x.numerator), int(x.denominator), prec, up)


def round_dyadic(d: Dyadic, prec: int, up: bool) -> Dyadic:
    if abs(d.man).bit_length() <= prec:
        return d
    if d.exp >= 0:
        return round_ratio(d.man << d.exp, 1, prec, up)
    return round_ratio(d.man, 1 << (-d.exp), prec, up)


@dataclass(frozen=True)
class MPInterval:
    """A closed interval with dyadic endpoints and a working precision."""

    lo: Dyadic
    hi: Dyadic
    prec: int = DEFAULT_PRECISION

    def __post_init__(self):
        if dyadic_cmp(self.lo, self.hi) > 0:
            raise ValueError(f"inverted interval: {self}")
        if self.prec <= 0:
            raise ValueError("precision must be positive")

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_rational(x, prec: int = DEFAULT_PRECISION) -> "MPInterval":
        return MPInterval(round_rational(x, prec, False), round_rational(x, prec, True), prec)

    @staticmethod
    def from_endpoints(lo, hi, prec: int = DEFAULT_PRECISION) -> "MPInterval":
        return MPInterval(round_rational(lo, prec, False), round_rational(hi, prec, True), prec)

    @staticmethod
    def from_int(n: int, prec: int = DEFAULT_PRECISION) -> "MPInterval":
        d = dyadic_from_int(n)
        return MPInterval(round_dyadic(d, prec, False), round_dyadic(d, prec, True), prec)

    # -- queries ------------------------------------------------------

    def lo_rational(self):
        return self.lo.as_rational()

    def hi_rational(self):
        return self.hi.as_rational()

    def width(self):
        return self.hi.as_rational() - self.lo.as_rational()

    def midpoint(self):
        return (self.lo.as_rational() + self.hi.as_rational()) / 2

    def contains_zero(self) -> bool:
        return self.lo.man <= 0 <= self.hi.man

    def contains_rational(self, x) -> bool:
        return self.lo.as_rational() <= x <= self.hi.as_rational()

    def contains(self, other: "MPInterval") -> bool:
        return (
            dyadic_cmp(self.lo, other.lo) <= 0 and dyadic_cmp(other.hi, self.hi) <= 0
        )

    def strictly_contains(self, other: "MPInterval") -> bool:
        return (
            dyadic_cmp(self.lo, other.lo) < 0 and dyadic_cmp(other.hi, self.hi) < 0
        )

    def is_point(self) -> bool:
        return dyadic_cmp(self.lo, self.hi) == 0

    def sign(self) -> int:
        """-1/+1 if the interval is strictly negative/positive, else 0."""
        if self.hi.man < 0:
            return -1
        if self.lo.man > 0:
            return 1
        return 0

    # -- rendering ----------------------------------------------------

    def decimal_str(self, digits: int = 6) -> str:
        """Outward decimal rendering, e.g. "[1.6179, 1.6181]"."""
        return f"[{_decimal(self.lo.as_rational(), digits, False)}, {_decimal(self.hi.as_rational(), digits, True)}]"

    def dyadic_str(self) -> str:
        return f"[{self.lo}, {self.hi}]"

    def __str__(self) -> str:
        return self.decimal_str()

    # -- operators (outward rounding at max operand precision) --------

    def __add__(self, other):
        return iv_arith(self, _coerce(other, self.prec), "add")

    def __sub__(self, other):
        return iv_arith(self, _coerce(other, self.prec), "sub")

    def __mul__(self, other):
        return iv_arith(self, _coerce(other, self.prec), "mul")

    def __truediv__(self, other):
        return iv_arith(self, _coerce(other, self.prec), "div")

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return iv_arith(_coerce(other, self.prec), self, "sub")

    def __neg__(self):
        return MPInterval(dyadic_neg(self.hi), dyadic_neg(self.lo), self.prec)

    def intersect(self, other: "MPInterval") -> "MPInterval | None":
        lo = self.lo if dyadic_cmp(self.lo, other.lo) >= 0 else other.lo
        hi = self.hi if dyadic_cmp(self.hi, other.hi) <= 0 else other.hi
        if dyadic_cmp(lo, hi) > 0:
            return None
        return MPInterval(lo, hi, max(self.prec, other.prec))


def _coerce(value, prec: int) -> MPInterval:
    if isinstance(value, MPInterval):
        return value
    if isinstance(value, int):
        return MPInterval.from_int(value, prec)
    return MPInterval.from_rational(value, prec)


def _decimal(x, digits: int, up: bool) -> str:
    """Decimal string of x rounded outward to ``digits`` fractional digits."""
    scale = 10**digits
    n, d = int(x.numerator) * scale, int(x.denominator)
    q, r = divmod(n, d)
    if up and r:
        q += 1
    sign = "-" if q < 0 else ""
    q = abs(q)
    whole, frac = divmod(q, scale)
    return f"{sign}{whole}.{frac:0{digits}d}" if digits else f"{sign}{whole}"


def iv_arith(a: MPInterval, b: MPInterval, op: str, prec: int | None = None) -> MPInterval:
    """Interval add/sub/mul/div with outward rounding.

    The result contains {x op y : x in a, y in b}.  Division by an interval
    containing zero raises :class:`IntervalDivisionError`.
    """
    p = prec if prec is not None else max(a.prec, b.prec)
    if op == "add":
        lo = dyadic_add(a.lo, b.lo)
        hi = dyadic_add(a.hi, b.hi)
    elif op == "sub":
        lo = dyadic_sub(a.lo, b.hi)
        hi = dyadic_sub(a.hi, b.lo)
    elif op == "mul":
        prods = [
            dyadic_mul(a.lo, b.lo),
            dyadic_mul(a.lo, b.hi),
            dyadic_mul(a.hi, b.lo),
            dyadic_mul(a.hi, b.hi),
        ]
        lo = min(prods, key=_dyadic_key)
        hi = max(prods, key=_dyadic_key)
    elif op == "div":
        if b.contains_zero():
            raise IntervalDivisionError(f"division by {b} which contains zero")
        quots = [
            a.lo.as_rational() / b.lo.as_rational(),
            a.lo.as_rational() / b.hi.as_rational(),
            a.hi.as_rational() / b.lo.as_rational(),
            a.hi.as_rational() / b.hi.as_rational(),
        ]
        return MPInterval(
            round_rational(min(quots), p, False), round_rational(max(quots), p, True), p
        )
    else:
        raise ValueError(f"unknown operation {op!r}")
    return MPInterval(round_dyadic(lo, p, False), round_dyadic(hi, p, True), p)


class _DyadicKey:
    __slots__ = ("d",)

    def __init__(self, d):
        self.d = d

    def __lt__(self, other):
        return dyadic_cmp(self.d, other.d) < 0


def _dyadic_key(d):
    return _DyadicKey(d)


def iv_refine(x: MPInterval, new_precision: int) -> MPInterval:
    """Re-round at a higher representation precision.

    Endpoints are exactly representable already, so the enclosure is
    unchanged; refinement of a *root* interval lives in unipoly/zdsolve.
    """
    if new_precision < x.prec:
        raise ValueError("new precision must be >= current precision")
    return MPInterval(x.lo, x.hi, new_precision)


def iv_eval_poly(p, x: MPInterval, prec: int | None = None) -> MPInterval:
    """Horner evaluation of a rational-coefficient polynomial over an
    interval, outward rounded.

    ``p`` may be a UniPoly or any sequence of Rational coefficients in
    ascending degree order.
    """
    coeffs = list(getattr(p, "coeffs", p))
    pr = prec if prec is not None else x.prec
    if not coeffs:
        return MPInterval.from_int(0, pr)
    acc = MPInterval.from_rational(coeffs[-1], pr)
    for c in reversed(coeffs[:-1]):
        acc = iv_arith(iv_arith(acc, x, "mul", pr), MPInterval.from_rational(c, pr), "add", pr)
    return acc


@dataclass(frozen=True)
class SolutionBox:
    """A vector of intervals isolating one real solution of a system."""

    coords: tuple[MPInterval, ...]
    certified: bool = True

    def __post_init__(self):
        if not self.coords:
            raise ValueError("solution box must have at least one coordinate")

    def widths(self):
        return tuple(c.width() for c in self.coords)

    def max_width(self):
        return max(self.widths())

    def midpoint(self):
        return tuple(c.midpoint() for c in self.coords)

    def decimal_str(self, digits: int = 6) -> str:
        return "(" + ", ".join(c.decimal_str(digits) for c in self.coords) + ")"


def rational_interval_eval(coeffs: Sequence, lo, hi):
    """Exact rational interval Horner: bounds for {p(t): t in [lo, hi]}.

    No rounding; used where certified *exact* bounds on small polynomials
    are cheaper than dyadic bookkeeping (e.g. Newton refinement steps).
    Returns a (min, max) pair of rationals.
    """
    alo = ahi = None
    for c in reversed(list(coeffs)):
        if alo is None:
            alo = ahi = c
            continue
        cands = (alo * lo, alo * hi, ahi * lo, ahi * hi)
        alo, ahi = min(cands) + c, max(cands) + c
    if alo is None:
        from .rationals import ZERO

        return (ZERO, ZERO)
    return (alo, ahi)
