"""Dense univariate polynomials over Q.

Provides square-free decomposition (Yun), Sturm-Habicht real-root counting,
and certified real-root isolation by Descartes/bisection (Vincent-Collins-
Akritas) in exact arithmetic, with refinable isolating intervals.  Rational
roots found exactly are reported as point intervals [r, r].

The hot inner loops (Taylor shifts, sign variations, scaled evaluation) are
delegated to :mod:`polycert.kernels`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import kernels, prs
from .errors import PolycertError
from .rationals import ONE, Rational, ZERO
from .intervals import rational_interval_eval

_TRIAL_LIMIT = 10_000
_DIVISOR_BUDGET = 4096


class UniPoly:
    """Immutable dense univariate polynomial over Rational."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable, var: str = "x"):
        cs = [c if isinstance(c, Rational) else Rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(var: str = "x") -> "UniPoly":
        return UniPoly((), var)

    @staticmethod
    def constant(c, var: str = "x") -> "UniPoly":
        return UniPoly((c,), var)

    @staticmethod
    def monomial(c, k: int, var: str = "x") -> "UniPoly":
        return UniPoly([ZERO] * k + [Rational(c)], var)

    @staticmethod
    def variable(var: str = "x") -> "UniPoly":
        return UniPoly((ZERO, ONE), var)

    @staticmethod
    def from_roots(roots: Sequence, var: str = "x") -> "UniPoly":
        p = UniPoly.constant(1, var)
        x = UniPoly.variable(var)
        for r in roots:
            p = p * (x - UniPoly.constant(r, var))
        return p

    # -- basic queries ----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        if not self.coeffs:
            return ZERO
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, UniPoly)
            and self.coeffs == other.coeffs
            and (self.var == other.var or self.is_constant() or other.is_constant())
        )

    def __hash__(self):
        return hash((self.coeffs, self.var))

    def __repr__(self) -> str:
        return f"UniPoly({self})"

    def __str__(self) -> str:
        from .parsing import format_unipoly

        return format_unipoly(self)

    # -- arithmetic -------------------------------------------------------

    def _check_var(self, other: "UniPoly") -> str:
        if self.is_constant():
            return other.var
        if other.is_constant() or other.var == self.var:
            return self.var
        raise ValueError(f"variable mismatch: {self.var} vs {other.var}")

    def __add__(self, other):
        other = _as_poly(other, self.var)
        var = self._check_var(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [ZERO] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] = a[i] + c
        return UniPoly(a, var)

    def __sub__(self, other):
        return self + (-_as_poly(other, self.var))

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return UniPoly([c * other for c in self.coeffs], self.var)
        other = _as_poly(other, self.var)
        var = self._check_var(other)
        if self.is_zero() or other.is_zero():
            return UniPoly.zero(var)
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out, var)

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return _as_poly(other, self.var) - self

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = UniPoly.constant(1, self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def derivative(self) -> "UniPoly":
        return UniPoly([self.coeffs[i] * i for i in range(1, len(self.coeffs))], self.var)

    def __call__(self, x):
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        """Quotient and remainder over Q."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        var = self._check_var(other)
        r = list(self.coeffs)
        d = other.degree
        lc = other.lc
        q = [ZERO] * max(0, len(r) - d)
        while len(r) - 1 >= d and r:
            if r[-1] == 0:
                r.pop()
                continue
            k = len(r) - 1 - d
            f = r[-1] / lc
            q[k] = f
            for i in range(d + 1):
                r[k + i] = r[k + i] - f * other.coeffs[i]
            r.pop()
        return UniPoly(q, var), UniPoly(r, var)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self * (ONE / self.lc)

    def compose(self, other: "UniPoly") -> "UniPoly":
        """Substitution self(other)."""
        acc = UniPoly.zero(other.var)
        for c in reversed(self.coeffs):
            acc = acc * other + UniPoly.constant(c, other.var)
        return acc

    # -- integer normal form ----------------------------------------------

    def int_coeffs(self) -> list[int]:
        """Primitive integer coefficient list (content removed, sign of the
        leading coefficient preserved)."""
        if self.is_zero():
            return []
        lcm = 1
        for c in self.coeffs:
            lcm = lcm * int(c.denominator) // math.gcd(lcm, int(c.denominator))
        ints = [int(c.numerator) * (lcm // int(c.denominator)) for c in self.coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, abs(v))
        return [v // g for v in ints]

    def primitive(self) -> "UniPoly":
        """Content-1 integer form with positive leading coefficient."""
        ints = self.int_coeffs()
        if ints and ints[-1] < 0:
            ints = [-v for v in ints]
        return UniPoly(ints, self.var)


def _as_poly(x, var: str) -> UniPoly:
    if isinstance(x, UniPoly):
        return x
    return UniPoly.constant(Rational(x) if isinstance(x, int) else x, var)


# -- gcd and square-free machinery -----------------------------------------


def _int_primitive(p: list[int]) -> list[int]:
    g = 0
    for v in p:
        g = math.gcd(g, abs(v))
    if g == 0:
        return []
    return [v // g for v in p]


def _int_divexact(a: list[int], b: list[int]) -> list[int]:
    """Exact division of integer polynomials (raises if inexact)."""
    if not b:
        raise ZeroDivisionError
    r = list(a)
    db = len(b) - 1
    q = [0] * max(0, len(r) - db)
    lb = b[-1]
    while len(r) - 1 >= db and r:
        if r[-1] == 0:
            r.pop()
            continue
        f, rem = divmod(r[-1], lb)
        if rem:
            raise ArithmeticError("inexact integer polynomial division")
        q[len(r) - 1 - db] = f
        for i in range(db + 1):
            r[len(r) - 1 - db + i] -= f * b[i]
        r.pop()
    while r and r[-1] == 0:
        r.pop()
    if r:
        raise ArithmeticError("inexact integer polynomial division")
    return q


def _int_gcd(a: list[int], b: list[int]) -> list[int]:
    """Primitive positive-lc gcd of integer polynomials (primitive PRS)."""
    a = _int_primitive(a)
    b = _int_primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = prs.pseudo_rem(prs.INT_RING, a, b)
        a, b = b, _int_primitive(r)
    if a and a[-1] < 0:
        a = [-v for v in a]
    return a


def poly_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Primitive positive-lc gcd over Q (up to the natural normalization)."""
    var = f.var if not f.is_constant() else g.var
    if f.is_zero():
        return g.primitive()
    if g.is_zero():
        return f.primitive()
    return UniPoly(_int_gcd(f.int_coeffs(), g.int_coeffs()), var)


def _int_deriv(p: list[int]) -> list[int]:
    return [p[i] * i for i in range(1, len(p))]


def _int_sub(a: list[int], b: list[int]) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, v in enumerate(a):
        out[i] += v
    for i, v in enumerate(b):
        out[i] -= v
    while out and out[-1] == 0:
        out.pop()
    return out


def squarefree_decomposition(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: [(q_k, k)] with p ~ prod q_k^k, q_k square-free,
    pairwise coprime, primitive with positive leading coefficient."""
    if p.is_zero():
        raise ValueError("square-free decomposition of the zero polynomial")
    if p.is_constant():
        return []
    f = p.int_coeffs()
    if f[-1] < 0:
        f = [-v for v in f]
    fp = _int_deriv(f)
    g = _int_gcd(f, fp)
    if len(g) == 1:
        return [(UniPoly(f, p.var), 1)]
    out: list[tuple[UniPoly, int]] = []
    w = _int_divexact(f, g)
    z = _int_sub(_int_divexact(fp, g), _int_deriv(w))
    i = 1
    while len(w) > 1:
        h = _int_gcd(w, z)
        if len(h) > 1:
            out.append((UniPoly(h, p.var), i))
            w = _int_divexact(w, h)
            z = _int_sub(_int_divexact(z, h), _int_deriv(w))
        else:
            z = _int_sub(z, _int_deriv(w))
        i += 1
    return out


def squarefree_part(p: UniPoly) -> UniPoly:
    """p / gcd(p, p'): same roots, all simple; primitive, positive lc."""
    if p.is_zero():
        raise ValueError("square-free part of the zero polynomial")
    if p.is_constant():
        return UniPoly.constant(1, p.var)
    acc = [1]
    for q, _ in squarefree_decomposition(p):
        acc = _int_mul(acc, q.int_coeffs())
    if acc[-1] < 0:
        acc = [-v for v in acc]
    return UniPoly(acc, p.var)


def _int_mul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def sign_at(p: UniPoly, x) -> int:
    """Exact sign of p(x) at a rational point."""
    if p.is_zero():
        return 0
    ints = p.int_coeffs()
    sign_fix = 1 if p.lc > 0 else -1
    if ints[-1] < 0:
        sign_fix = -sign_fix
        ints = [-v for v in ints]
    x = x if isinstance(x, Rational) else Rational(x)
    v = kernels.eval_rat_scaled(ints, int(x.numerator), int(x.denominator))
    return sign_fix * ((v > 0) - (v < 0))


def count_real_roots(p: UniPoly) -> int:
    """Number of distinct real roots, by sign variations of the principal
    Sturm-Habicht coefficients at +/-infinity (no isolation performed)."""
    if p.is_zero():
        raise ValueError("root count of the zero polynomial")
    if p.is_constant():
        return 0
    ints = p.int_coeffs()
    chain = prs.sturm_habicht_chain(prs.INT_RING, ints, [1])
    pcs = prs.principal_coefficients(chain, len(ints) - 1)
    signs = [0 if c is None else (1 if c > 0 else -1 if c < 0 else 0) for c in pcs]
    return prs.pmv(signs)


# -- isolating intervals ----------------------------------------------------


@dataclass(frozen=True)
class IsolatingInterval:
    """Open interval ]lo, hi[ (a point when lo == hi) containing exactly one
    real root of the square-free witness polynomial."""

    lo: Rational
    hi: Rational
    polynomial: UniPoly
    multiplicity: int = 1

    def is_point(self) -> bool:
        return self.lo == self.hi

    def width(self):
        return self.hi - self.lo

    def contains(self, x) -> bool:
        if self.is_point():
            return x == self.lo
        return self.lo < x < self.hi

    def __str__(self) -> str:
        return f"]{self.lo}, {self.hi}[ (mult {self.multiplicity})"


def _cauchy_pow2(ints: list[int]) -> int:
    """Exponent m with all real roots of the integer polynomial strictly
    inside (-2^m, 2^m)."""
    lead = abs(ints[-1])
    worst = max(abs(c) for c in ints[:-1]) if len(ints) > 1 else 0
    # |root| < 1 + worst/lead <= 2^m
    m = 1
    while (1 << m) * lead < lead + worst:
        m += 1
    return m


def _vca_01(f: list[int]) -> list[tuple[str, int, int]]:
    """Isolate roots of the square-free integer polynomial f in (0, 1).

    Returns ("open", c, k) for the dyadic interval (c/2^k, (c+1)/2^k) and
    ("point", c, k) for an exact root c/2^k.
    """
    out: list[tuple[str, int, int]] = []
    stack = [(0, 0, f)]
    while stack:
        c, k, g = stack.pop()
        v = kernels.descartes_bound_01(g)
        if v == 0:
            continue
        if v == 1:
            out.append(("open", c, k))
            continue
        gl = kernels.half_scale(g)
        gr = kernels.taylor_shift1(gl)
        if gr[0] == 0:
            out.append(("point", 2 * c + 1, k + 1))
            gr = gr[1:]
        stack.append((2 * c, k + 1, gl))
        stack.append((2 * c + 1, k + 1, gr))
    return out


def _small_divisors(n: int) -> list[int] | None:
    """All positive divisors of n, or None when n resists the factoring
    budget (trial division then a primality check)."""
    if n == 0:
        return None
    n = abs(n)
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n and d <= _TRIAL_LIMIT:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        if n > _TRIAL_LIMIT * _TRIAL_LIMIT and not _is_probable_prime(n):
            return None
        factors[n] = factors.get(n, 0) + 1
    divs = [1]
    for prime, mult in factors.items():
        divs = [d * prime**e for d in divs for e in range(mult + 1)]
        if len(divs) > _DIVISOR_BUDGET:
            return None
    return sorted(divs)


def _is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for word-sized-ish inputs, probabilistic
    beyond; only used to bound the rational-root search."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _rational_roots(ints: list[int]) -> tuple[list, list[int]]:
    """Best-effort exact rational roots of a square-free integer polynomial.

    Returns (roots, deflated coefficients).  Gives up silently when the
    divisor enumeration exceeds the budget; missed rational roots are then
    isolated as ordinary open intervals.
    """
    roots = []
    while ints[0] == 0:
        roots.append(ZERO)
        ints = ints[1:]
    if len(ints) <= 1:
        return roots, ints
    nums = _small_divisors(ints[0])
    dens = _small_divisors(ints[-1])
    if nums is None or dens is None:
        return roots, ints
    for num in nums:
        for den in dens:
            if math.gcd(num, den) != 1:
                continue
            for s in (1, -1):
                if len(ints) <= 1:
                    return roots, ints
                if kernels.eval_rat_scaled(ints, s * num, den) == 0:
                    roots.append(Rational(s * num, den))
                    ints = _int_divexact(ints, [-s * num, den])
    return roots, ints


def _isolate_squarefree(ints: list[int]) -> list[tuple]:
    """Isolate all real roots of a primitive square-free integer polynomial.

    Returns (lo, hi, defining UniPoly) triples, points encoded as lo == hi;
    the defining polynomial (the input with any exactly-found rational
    roots divided out) has exactly one root in each open interval and is
    the correct bisection witness for it.
    """
    out = []
    roots, ints = _rational_roots(ints)
    deflated = UniPoly(ints)
    out.extend((r, r, deflated) for r in roots)
    if len(ints) > 1:
        m = _cauchy_pow2(ints)
        bound = Rational(1 << m)
        pos = kernels.scale_pow2(ints, m)
        for kind, c, k in _vca_01(pos):
            lo = bound * Rational(c, 1 << k)
            if kind == "point":
                out.append((lo, lo, deflated))
            else:
                out.append((lo, bound * Rational(c + 1, 1 << k), deflated))
        neg = [(-1) ** i * c for i, c in enumerate(ints)]
        negs = kernels.scale_pow2(neg, m)
        for kind, c, k in _vca_01(negs):
            hi = -bound * Rational(c, 1 << k)
            if kind == "point":
                out.append((hi, hi, deflated))
            else:
                out.append((-bound * Rational(c + 1, 1 << k), hi, deflated))
    return out


def _bisect_once(lo, hi, q: UniPoly):
    """One exact bisection step; requires q(lo) * q(hi) < 0."""
    mid = (lo + hi) / 2
    s = sign_at(q, mid)
    if s == 0:
        return mid, mid
    if sign_at(q, lo) * s < 0:
        return lo, mid
    return mid, hi


def _deflate_at(q: UniPoly, r) -> UniPoly:
    """Divide out the linear factor of a rational root until q(r) != 0."""
    lin = UniPoly([-r, ONE], q.var)
    while not q.is_constant() and sign_at(q, r) == 0:
        q = q.exact_div(lin)
    return q


def _narrow(item) -> None:
    """Halve an open interval toward its unique interior root.

    Endpoints may coincide with *other* roots of the factor; those are
    deflated (exactly, endpoints are rational) before the sign bisection.
    """
    lo, hi, q = item[0], item[1], item[2]
    qq = q
    for r in (lo, hi):
        qq = _deflate_at(qq, r)
    item[0], item[1] = _bisect_once(lo, hi, qq)


def isolate_real_roots(p: UniPoly) -> list[IsolatingInterval]:
    """Certified isolation of all real roots of p.

    Intervals are pairwise disjoint, sorted ascending, carry multiplicities
    from the square-free decomposition, and reference the square-free
    witness of p (which changes sign across every open interval).
    """
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    if p.is_constant():
        return []
    decomp = squarefree_decomposition(p)
    witness = squarefree_part(p)
    items = []  # [lo, hi, local bisection witness, mult]
    for q, mult in decomp:
        for lo, hi, defpoly in _isolate_squarefree(q.int_coeffs()):
            items.append([lo, hi, defpoly, mult])
    # refine until closed intervals are pairwise disjoint and no endpoint
    # of an open interval is a root of the full witness
    changed = True
    while changed:
        changed = False
        items.sort(key=lambda it: (it[0], it[1]))
        for i in range(len(items) - 1):
            a, b = items[i], items[i + 1]
            if not a[1] < b[0]:
                if a[0] == a[1] and b[0] == b[1]:
                    raise PolycertError("duplicate root across square-free factors")
                for it in (a, b):
                    if it[0] != it[1]:
                        _narrow(it)
                        changed = True
        for it in items:
            if it[0] != it[1]:
                while sign_at(witness, it[0]) == 0 or sign_at(witness, it[1]) == 0:
                    _narrow(it)
                    changed = True
                    if it[0] == it[1]:
                        break
    return [IsolatingInterval(lo, hi, witness, mult) for lo, hi, _, mult in items]


def refine_root(iv: IsolatingInterval, target_width) -> IsolatingInterval:
    """Shrink an isolating interval to width <= target_width.

    Bisection with exact sign evaluation, switching to interval-Newton
    steps whenever the derivative interval excludes zero.  Newton
    endpoints are rounded outward to dyadics whose precision is tied to
    the target width, so coordinate sizes stay bounded while containment
    and the sign-change invariant are preserved.
    """
    if iv.is_point():
        return iv
    q = iv.polynomial
    target = target_width if isinstance(target_width, Rational) else Rational(target_width)
    if target <= 0:
        raise ValueError("target width must be positive")
    lo, hi = iv.lo, iv.hi
    dq = q.derivative()
    from .intervals import round_rational

    scale = int(target.denominator) // max(1, int(target.numerator))
    prec = max(64, scale.bit_length() + 16)
    while hi - lo > target:
        dlo, dhi = rational_interval_eval(dq.coeffs, lo, hi)
        stepped = False
        if dlo > 0 or dhi < 0:
            mid = (lo + hi) / 2
            v = q(mid)
            if v == 0:
                lo = hi = mid
                break
            c1 = mid - v / dlo
            c2 = mid - v / dhi
            nlo, nhi = (c1, c2) if c1 <= c2 else (c2, c1)
            nlo = max(round_rational(nlo, prec, False).as_rational(), lo)
            nhi = min(round_rational(nhi, prec, True).as_rational(), hi)
            if nlo <= nhi and (nhi - nlo) * 2 <= hi - lo:
                slo = sign_at(q, nlo)
                shi = sign_at(q, nhi)
                if slo == 0:
                    lo = hi = nlo
                    break
                if shi == 0:
                    lo = hi = nhi
                    break
                if slo * shi < 0:
                    lo, hi = nlo, nhi
                    stepped = True
        if not stepped:
            lo, hi = _bisect_once(lo, hi, q)
            if lo == hi:
                break
    return IsolatingInterval(lo, hi, q, iv.multiplicity)
