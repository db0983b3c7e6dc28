"""Exact rational scalars.

Every certified claim in the package bottoms out in exact arithmetic over Q.
The scalar type is ``gmpy2.mpq`` when available (a GMP-backed compiled
implementation) and ``fractions.Fraction`` otherwise; both keep values in
canonical form (coprime numerator/denominator, positive denominator).
Setting the environment variable ``POLYCERT_PURE`` forces the pure-Python
scalar, mirroring the kernel selection in :mod:`polycert.kernels`.
"""

from __future__ import annotations

import os
from fractions import Fraction

_PURE = bool(os.environ.get("POLYCERT_PURE"))

if not _PURE:
    try:
        from gmpy2 import mpq as Rational

        RATIONAL_IMPLEMENTATION = "gmpy2"
    except ImportError:  # pragma: no cover - exercised via POLYCERT_PURE
        Rational = Fraction
        RATIONAL_IMPLEMENTATION = "fractions"
else:
    Rational = Fraction
    RATIONAL_IMPLEMENTATION = "fractions"

#: The additive and multiplicative units, shared to avoid reconstruction.
ZERO = Rational(0)
ONE = Rational(1)


def rat_arith(a, b, op: str):
    """Apply ``op`` in {add, sub, mul, div} to two rationals.

    Division by zero raises :class:`ZeroDivisionError`.  Results are always
    in canonical form (this is a property of the scalar type itself).
    """
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise ZeroDivisionError("rational division by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def to_rational(value) -> "Rational":
    """Coerce an int, string or rational to the scalar type.

    Strings may be plain integers, fractions ("3/4") or decimal literals
    ("0.608", "-1.5e2"); decimals are converted exactly.  Floats are
    rejected: a binary float silently reinterpreted as a decimal would
    defeat exactness guarantees.
    """
    if isinstance(value, Rational):
        return value
    if isinstance(value, int):
        return Rational(value)
    if isinstance(value, Fraction):
        return Rational(value.numerator, value.denominator)
    if isinstance(value, str):
        return rational_from_decimal(value)
    if isinstance(value, float):
        raise TypeError(
            "refusing to coerce float to Rational; pass a string or Fraction"
        )
    raise TypeError(f"cannot convert {type(value).__name__} to Rational")


def rational_from_decimal(text: str) -> "Rational":
    """Parse an integer, fraction or decimal literal into an exact rational."""
    s = text.strip()
    if "/" in s:
        num, _, den = s.partition("/")
        return Rational(int(num.strip()), int(den.strip()))
    exp = 0
    lowered = s.lower()
    if "e" in lowered:
        mant, _, e = lowered.partition("e")
        s = mant
        exp = int(e)
    if "." in s:
        intpart, _, fracpart = s.partition(".")
        digits = (intpart or "0") + fracpart
        if intpart.strip("+-") == "" and fracpart == "":
            raise ValueError(f"malformed decimal literal {text!r}")
        base = Rational(int(digits if digits not in ("", "+", "-") else "0"), 10 ** len(fracpart))
    else:
        base = Rational(int(s))
    if exp > 0:
        base *= Rational(10) ** exp
    elif exp < 0:
        base /= Rational(10) ** (-exp)
    return base


def rational_sign(x) -> int:
    """Exact sign in {-1, 0, +1}."""
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def floor_rational(x) -> int:
    """Largest integer <= x."""
    n, d = x.numerator, x.denominator
    return int(n // d)


def ceil_rational(x) -> int:
    """Smallest integer >= x."""
    n, d = x.numerator, x.denominator
    return int(-((-n) // d))
