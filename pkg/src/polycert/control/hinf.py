"""Certified enclosure of the H-infinity (L-infinity) norm.

For a proper real rational transfer matrix G with no poles on the
imaginary axis, gamma exceeds the norm iff gamma > sigma(G(i*inf)) and
det(Phi_gamma(i*w)) never vanishes for real w, where
Phi_gamma(s) = gamma^2 I - G^T(-s) G(s).  Writing det Phi = n(w, g)/d(w)
with coprime real polynomials, the norm is the largest real g that is
either a root of the leading w-coefficient of the square-free part of n
or the g-coordinate of a real critical point of the curve n = 0; the
latter are filtered by real-root counts of the specialized Sturm-Habicht
sequence just below each candidate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..errors import PolycertError, UnsupportedInput
from ..intervals import DEFAULT_PRECISION, MPInterval
from ..multipoly import (
    MultiPoly,
    mp_gcd,
    mp_squarefree_part,
    primitive_part,
    sturm_habicht_sequence,
    tarski_query,
    to_unipoly,
    _divexact_mp,
)
from ..rationals import ONE, Rational, ZERO
from ..unipoly import (
    UniPoly,
    count_real_roots,
    isolate_real_roots,
    poly_gcd,
    refine_root,
    sign_at,
    squarefree_part,
)
from ..zdsolve import charpoly


@dataclass(frozen=True)
class RatFun:
    """Reduced rational function num/den over Q in one variable."""

    num: UniPoly
    den: UniPoly

    @staticmethod
    def make(num: UniPoly, den: UniPoly) -> "RatFun":
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num.exact_div(g), den.exact_div(g)
        if den.lc < 0:
            num, den = -num, -den
        return RatFun(num, den)

    def substitute_negated(self) -> "RatFun":
        """G(-s) from G(s)."""
        flip = lambda p: UniPoly([(-ONE) ** k * c for k, c in enumerate(p.coeffs)], p.var)
        return RatFun.make(flip(self.num), flip(self.den))

    def is_proper(self) -> bool:
        return self.num.is_zero() or self.num.degree <= self.den.degree

    def limit_at_infinity(self):
        """lim |s|->inf (proper entries only)."""
        if self.num.is_zero() or self.num.degree < self.den.degree:
            return ZERO
        return self.num.lc / self.den.lc

    def is_zero(self) -> bool:
        return self.num.is_zero()


def _iw_split(p: UniPoly):
    """p(i*w) = A(w) + i*B(w) for a real polynomial p."""
    a = [ZERO] * (p.degree + 1)
    b = [ZERO] * (p.degree + 1)
    for k, c in enumerate(p.coeffs):
        r = k % 4
        if r == 0:
            a[k] = c
        elif r == 1:
            b[k] = c
        elif r == 2:
            a[k] = -c
        else:
            b[k] = -c
    return UniPoly(a, "w"), UniPoly(b, "w")


def _check_entry(f: RatFun) -> None:
    if not f.is_proper():
        raise UnsupportedInput("transfer matrix entry is not proper")
    c, e = _iw_split(f.den)
    g = poly_gcd(c, e)
    if g.degree >= 1 and count_real_roots(g) > 0:
        raise UnsupportedInput("pole on the imaginary axis")


# -- fractions over Q[s, g] -----------------------------------------------------

_RING = ("s", "g")


@dataclass(frozen=True)
class _Frac:
    num: MultiPoly
    den: MultiPoly

    @staticmethod
    def make(num: MultiPoly, den: MultiPoly) -> "_Frac":
        if den.is_zero():
            raise ZeroDivisionError
        if num.is_zero():
            return _Frac(num, MultiPoly.constant(ONE, num.vars))
        g = mp_gcd(num, den)
        if not g.is_constant():
            num = _divexact_mp(num, g)
            den = _divexact_mp(den, g)
        return _Frac(num, den)

    def __add__(self, other):
        return _Frac.make(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        return _Frac.make(self.num * other.den - other.num * self.den, self.den * other.den)

    def __mul__(self, other):
        return _Frac.make(self.num * other.num, self.den * other.den)


def _frac_from_ratfun(f: RatFun) -> _Frac:
    return _Frac.make(
        MultiPoly.from_unipoly(UniPoly(f.num.coeffs, "s"), _RING),
        MultiPoly.from_unipoly(UniPoly(f.den.coeffs, "s"), _RING),
    )


def _det_frac(m: list[list[_Frac]]) -> _Frac:
    n = len(m)
    if n == 1:
        return m[0][0]
    zero = _Frac.make(MultiPoly.zero(_RING), MultiPoly.constant(ONE, _RING))
    acc = zero
    for j in range(n):
        sub = [[m[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = m[0][j] * _det_frac(sub)
        acc = acc - term if j % 2 else acc + term
    return acc


# -- the norm ---------------------------------------------------------------------


def sigma_at_infinity_polynomial(G: Sequence[Sequence[RatFun]]) -> UniPoly:
    """det(g^2 I - Ginf^T Ginf) as a polynomial in g; its largest real
    root is sigma(G(i*inf))."""
    rows = len(G)
    cols = len(G[0])
    ginf = [[G[i][j].limit_at_infinity() for j in range(cols)] for i in range(rows)]
    m = [[sum((ginf[k][i] * ginf[k][j] for k in range(rows)), ZERO) for j in range(cols)] for i in range(cols)]
    cp = charpoly(m, "g")  # det(lambda I - M), monic in lambda
    gsq = UniPoly([ZERO, ZERO, ONE], "g")
    return cp.compose(gsq)


def _phi_determinant(G: Sequence[Sequence[RatFun]]):
    """Numerator/denominator of det(g^2 I - G^T(-s) G(s)) over Q[s, g]."""
    rows = len(G)
    cols = len(G[0])
    gneg = [[G[i][j].substitute_negated() for j in range(cols)] for i in range(rows)]
    gsq = _Frac.make(
        MultiPoly.variable("g", _RING) ** 2, MultiPoly.constant(ONE, _RING)
    )
    zero = _Frac.make(MultiPoly.zero(_RING), MultiPoly.constant(ONE, _RING))
    phi = []
    for i in range(cols):
        row = []
        for j in range(cols):
            acc = zero
            for k in range(rows):
                acc = acc + _frac_from_ratfun(gneg[k][i]) * _frac_from_ratfun(G[k][j])
            entry = (gsq - acc) if i == j else (zero - acc)
            row.append(entry)
        phi.append(row)
    det = _det_frac(phi)
    return det.num, det.den


def _vanishes_at_root(candidate_poly: UniPoly, iv, query: UniPoly) -> bool:
    """Whether ``query`` vanishes at the root of candidate_poly isolated
    by ``iv`` (gcd sign-change test; endpoints are never roots)."""
    if query.is_zero():
        return True
    if query.is_constant():
        return False
    g = poly_gcd(candidate_poly, query)
    if g.degree < 1:
        return False
    if iv.is_point():
        return sign_at(g, iv.lo) == 0
    return sign_at(g, iv.lo) * sign_at(g, iv.hi) < 0 or sign_at(g, iv.lo) == 0 or sign_at(g, iv.hi) == 0


def hinf_norm(G: Sequence[Sequence[RatFun]], starting_precision: int | None = None) -> MPInterval:
    """Certified interval containing the H-infinity norm of G.

    ``starting_precision`` is a binary precision: the enclosure is refined
    to width at most 2**-starting_precision (a defensible default is used
    when omitted, mirroring minimum-isolation output).
    """
    rows = len(G)
    cols = len(G[0])
    if any(len(r) != cols for r in G):
        raise ValueError("ragged transfer matrix")
    for row in G:
        for f in row:
            _check_entry(f)
    if all(f.is_zero() for row in G for f in row):
        z = MPInterval.from_int(0)
        return z
    num, den = _phi_determinant(G)
    # substitute s = i*w; the determinant is real on the axis
    wring = ("w", "g")
    a, b = _mp_iw_split(num, wring)
    c, e = _mp_iw_split(den, wring)
    n_raw = a * c + b * e
    if not (b * c - a * e).is_zero():
        raise PolycertError("determinant not real on the imaginary axis")
    d_raw = c * c + e * e
    g0 = mp_gcd(n_raw, d_raw)
    n = primitive_part(_divexact_mp(n_raw, g0)) if not g0.is_constant() else primitive_part(n_raw)
    # candidate polynomials in g; unconditional qualifiers are those whose
    # real roots are provably <= the norm
    cont_u: UniPoly | None = None
    lcw_u: UniPoly | None = None
    stha0_u: UniPoly | None = None
    seq = None
    if n.degree("w") > 0:
        cont = _w_content(n)
        if not cont.is_constant():
            cont_u = to_unipoly(cont.reorder(("g",)), "g")
            n = primitive_part(_divexact_mp(n, cont))
    if n.degree("w") > 0:
        ntilde = mp_squarefree_part(n)
        seq = sturm_habicht_sequence(ntilde, MultiPoly.constant(ONE, wring), "w")
        stha0 = seq.entries[0]
        if not stha0.is_constant():
            stha0_u = to_unipoly(stha0.reorder(("g",)), "g")
        lcw = ntilde.leading_coefficient("w")
        if not lcw.is_constant():
            lcw_u = to_unipoly(lcw.reorder(("g",)), "g")
    else:
        gamma_only = mp_squarefree_part(n)
        if not gamma_only.is_constant():
            cont_u = to_unipoly(gamma_only.reorder(("g",)), "g")
    ginf_poly = sigma_at_infinity_polynomial(G)
    # merged square-free witness for all candidate values
    prod = UniPoly.constant(1, "g")
    for p in (cont_u, lcw_u, stha0_u, ginf_poly):
        if p is not None and p.degree >= 1:
            prod = prod * p
    witness = squarefree_part(prod)
    if witness.degree < 1:
        raise PolycertError("no norm candidates (unexpected)")
    ivs = isolate_real_roots(witness)
    # keep nonnegative candidates, refined until sign-determined
    kept = []
    for iv in ivs:
        while not iv.is_point() and iv.lo < 0 < iv.hi:
            iv = refine_root(iv, iv.width() / 4)
        if iv.is_point() and iv.lo < 0:
            continue
        if not iv.is_point() and iv.hi <= 0:
            continue
        kept.append(iv)
    unconditional = [p for p in (lcw_u, ginf_poly, cont_u) if p is not None and p.degree >= 1]
    qualified = None
    for idx in range(len(kept) - 1, -1, -1):
        iv = kept[idx]
        if any(_vanishes_at_root(witness, iv, p) for p in unconditional):
            qualified = iv
            break
        if seq is not None:
            # real w-root count of n(., r) is constant between consecutive
            # candidate values; query just below this candidate
            below = kept[idx - 1].hi if idx > 0 else max(ZERO, iv.lo - 1)
            while not iv.lo > below:
                iv = refine_root(iv, iv.width() / 4)
            r = (below + iv.lo) / 2
            if tarski_query(seq, {"g": r}) > 0:
                qualified = iv
                break
    if qualified is None:
        raise PolycertError("no qualified norm candidate (unexpected)")
    target = starting_precision if starting_precision is not None else 5
    width = Rational(1, 2**target)
    if not qualified.is_point() and qualified.width() > width:
        qualified = refine_root(qualified, width)
    prec = max(DEFAULT_PRECISION, target + 32)
    return MPInterval.from_endpoints(qualified.lo, qualified.hi, prec)


def _mp_iw_split(p: MultiPoly, wring):
    """p(i*w, g) = A(w, g) + i*B(w, g) for real p over (s, g)."""
    a = MultiPoly.zero(wring)
    b = MultiPoly.zero(wring)
    w = MultiPoly.variable("w", wring)
    for k, cf in enumerate(p.coeffs_in("s")):
        cw = cf.reorder(("g",)).extend(wring) if not cf.is_zero() else None
        if cw is None:
            continue
        term = cw * w**k
        r = k % 4
        if r == 0:
            a = a + term
        elif r == 1:
            b = b + term
        elif r == 2:
            a = a - term
        else:
            b = b - term
    return a, b


def _w_content(p: MultiPoly) -> MultiPoly:
    acc = MultiPoly.zero(p.vars)
    for cf in p.coeffs_in("w"):
        if cf.is_zero():
            continue
        acc = cf if acc.is_zero() else mp_gcd(acc, cf)
        if acc.is_constant():
            break
    return acc


def parse_transfer_matrix(rows: Sequence[str], var: str = "s") -> list[list[RatFun]]:
    """Rows of ';'-separated rational-function entries."""
    from ..parsing import parse_rational_function

    out = []
    for line in rows:
        entries = [e.strip() for e in line.split(";")]
        out.append([RatFun.make(*parse_rational_function(e, var)) for e in entries])
    if len({len(r) for r in out}) != 1:
        raise ValueError("ragged transfer matrix")
    return out
