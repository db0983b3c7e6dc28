"""Sparse multivariate polynomials over Q.

Serves two roles: the polynomial ring for Groebner/elimination work, and
the parametric coefficient ring Q[U][X] for subresultant and Sturm-Habicht
sequences (computed by the subresultant pseudo-remainder algorithm, never
fraction-field Euclid).  Tarski queries evaluate sign variations of the
principal Sturm-Habicht coefficients, with the good-specialization fast
path and a recompute fallback for degenerate parameter values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from . import prs
from .errors import PolycertError
from .rationals import ONE, Rational, ZERO, rational_sign
from .unipoly import UniPoly


class MultiPoly:
    """Immutable sparse polynomial: exponent vector -> nonzero Rational."""

    __slots__ = ("vars", "terms")

    def __init__(self, terms: Mapping[tuple[int, ...], object], variables: Sequence[str]):
        vs = tuple(variables)
        clean: dict[tuple[int, ...], Rational] = {}
        for exps, c in terms.items():
            if len(exps) != len(vs):
                raise ValueError("exponent vector length mismatch")
            c = c if isinstance(c, Rational) else Rational(c)
            if c != 0:
                clean[tuple(int(e) for e in exps)] = c
        self.vars = vs
        self.terms = clean

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(variables: Sequence[str]) -> "MultiPoly":
        return MultiPoly({}, variables)

    @staticmethod
    def constant(c, variables: Sequence[str]) -> "MultiPoly":
        vs = tuple(variables)
        return MultiPoly({(0,) * len(vs): c}, vs)

    @staticmethod
    def variable(name: str, variables: Sequence[str]) -> "MultiPoly":
        vs = tuple(variables)
        if name not in vs:
            raise ValueError(f"{name!r} not among {vs}")
        e = [0] * len(vs)
        e[vs.index(name)] = 1
        return MultiPoly({tuple(e): ONE}, vs)

    @staticmethod
    def from_unipoly(p: UniPoly, variables: Sequence[str] | None = None) -> "MultiPoly":
        vs = tuple(variables) if variables is not None else (p.var,)
        i = vs.index(p.var)
        terms = {}
        for k, c in enumerate(p.coeffs):
            if c != 0:
                e = [0] * len(vs)
                e[i] = k
                terms[tuple(e)] = c
        return MultiPoly(terms, vs)

    # -- queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        if self.is_zero():
            return ZERO
        if not self.is_constant():
            raise ValueError(f"not a constant: {self}")
        return next(iter(self.terms.values()))

    def degree(self, var: str) -> int:
        """Degree in one variable; -1 for the zero polynomial."""
        if self.is_zero():
            return -1
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def total_degree(self) -> int:
        if self.is_zero():
            return -1
        return max(sum(e) for e in self.terms)

    def uses(self, var: str) -> bool:
        return self.degree(var) > 0

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiPoly)
            and self.vars == other.vars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __str__(self) -> str:
        from .parsing import format_multipoly

        return format_multipoly(self)

    def __repr__(self) -> str:
        return f"MultiPoly({self})"

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                raise ValueError(f"ring mismatch: {self.vars} vs {other.vars}")
            return other
        return MultiPoly.constant(other, self.vars)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, ZERO) + c
        return MultiPoly(terms, self.vars)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __neg__(self):
        return MultiPoly({e: -c for e, c in self.terms.items()}, self.vars)

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return MultiPoly({e: c * other for e, c in self.terms.items()}, self.vars)
        other = self._coerce(other)
        terms: dict[tuple[int, ...], Rational] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, ZERO) + c1 * c2
        return MultiPoly(terms, self.vars)

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(ONE, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- structure wrt one variable -----------------------------------------

    def coeffs_in(self, var: str) -> list["MultiPoly"]:
        """Dense coefficient list (ascending) wrt var; coefficients live in
        the same ring with var-exponent zero."""
        i = self.vars.index(var)
        d = self.degree(var)
        if d < 0:
            return []
        buckets: list[dict] = [dict() for _ in range(d + 1)]
        for e, c in self.terms.items():
            rest = list(e)
            k = rest[i]
            rest[i] = 0
            buckets[k][tuple(rest)] = c
        return [MultiPoly(b, self.vars) for b in buckets]

    @staticmethod
    def from_coeffs_in(coeffs: Sequence["MultiPoly"], var: str, variables: Sequence[str]) -> "MultiPoly":
        vs = tuple(variables)
        i = vs.index(var)
        terms: dict[tuple[int, ...], Rational] = {}
        for k, c in enumerate(coeffs):
            if c is None or c.is_zero():
                continue
            for e, v in c.terms.items():
                ee = list(e)
                if ee[i]:
                    raise ValueError("coefficient uses the main variable")
                ee[i] = k
                terms[tuple(ee)] = terms.get(tuple(ee), ZERO) + v
        return MultiPoly(terms, vs)

    def leading_coefficient(self, var: str) -> "MultiPoly":
        cs = self.coeffs_in(var)
        if not cs:
            return MultiPoly.zero(self.vars)
        return cs[-1]

    def partial_derivative(self, var: str) -> "MultiPoly":
        i = self.vars.index(var)
        terms = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ee = list(e)
            ee[i] -= 1
            terms[tuple(ee)] = terms.get(tuple(ee), ZERO) + c * e[i]
        return MultiPoly(terms, self.vars)

    def specialize(self, assignment: Mapping[str, object]) -> "MultiPoly":
        """Substitute rationals for a subset of the variables; the result
        lives over the remaining variables."""
        for name in assignment:
            if name not in self.vars:
                raise ValueError(f"unknown variable {name!r}")
        keep = tuple(v for v in self.vars if v not in assignment)
        vals = {self.vars.index(k): Rational(v) if isinstance(v, int) else v for k, v in assignment.items()}
        keep_idx = [i for i, v in enumerate(self.vars) if v in keep]
        terms: dict[tuple[int, ...], Rational] = {}
        for e, c in self.terms.items():
            factor = c
            for i, val in vals.items():
                if e[i]:
                    factor = factor * val ** e[i]
            key = tuple(e[i] for i in keep_idx)
            if factor != 0:
                terms[key] = terms.get(key, ZERO) + factor
        return MultiPoly(terms, keep)

    def eval(self, assignment: Mapping[str, object]):
        """Full evaluation at a rational point."""
        value = self.specialize(assignment)
        return value.constant_value()

    def reorder(self, new_vars: Sequence[str]) -> "MultiPoly":
        nv = tuple(new_vars)
        perm = [self.vars.index(v) for v in nv]
        leftover = [v for v in self.vars if v not in nv]
        for v in leftover:
            if self.uses(v):
                raise ValueError(f"cannot drop used variable {v!r}")
        terms = {tuple(e[i] for i in perm): c for e, c in self.terms.items()}
        return MultiPoly(terms, nv)

    def extend(self, new_vars: Sequence[str]) -> "MultiPoly":
        """View in a larger ring containing all current variables."""
        nv = tuple(new_vars)
        pos = {v: i for i, v in enumerate(nv)}
        terms = {}
        for e, c in self.terms.items():
            ee = [0] * len(nv)
            for v, k in zip(self.vars, e):
                if k:
                    ee[pos[v]] = k
            terms[tuple(ee)] = c
        return MultiPoly(terms, nv)


def to_unipoly(p: MultiPoly, var: str) -> UniPoly:
    """Convert a polynomial using only ``var`` to a UniPoly."""
    i = p.vars.index(var)
    coeffs: list = []
    for e, c in p.terms.items():
        if any(e[j] for j in range(len(e)) if j != i):
            raise ValueError(f"{p} is not univariate in {var}")
        k = e[i]
        if len(coeffs) <= k:
            coeffs.extend([ZERO] * (k + 1 - len(coeffs)))
        coeffs[k] = c
    return UniPoly(coeffs, var)


# -- normalization -----------------------------------------------------------


def _lead_key(p: MultiPoly):
    return max(p.terms, key=lambda e: (sum(e), e))


def primitive_part(p: MultiPoly) -> MultiPoly:
    """Integer-primitive scalar normal form with positive leading
    (graded-lex) coefficient; zero stays zero."""
    if p.is_zero():
        return p
    lcm = 1
    for c in p.terms.values():
        lcm = lcm * int(c.denominator) // math.gcd(lcm, int(c.denominator))
    g = 0
    for c in p.terms.values():
        g = math.gcd(g, abs(int(c.numerator) * (lcm // int(c.denominator))))
    scale = Rational(lcm, g)
    q = p * scale
    if q.terms[_lead_key(q)] < 0:
        q = -q
    return q


# -- ring adapter for remainder sequences -------------------------------------


def _divexact_mp(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Exact division in Q[vars] (raises if inexact)."""
    if b.is_zero():
        raise ZeroDivisionError("exact division by zero polynomial")
    if b.is_constant():
        return a * (ONE / b.constant_value())
    vars_ = a.vars
    rem = a
    out: dict[tuple[int, ...], Rational] = {}
    bl = _lead_key(b)
    blc = b.terms[bl]
    while not rem.is_zero():
        rl = _lead_key(rem)
        e = tuple(x - y for x, y in zip(rl, bl))
        if any(x < 0 for x in e):
            raise ArithmeticError("inexact multivariate division")
        c = rem.terms[rl] / blc
        out[e] = out.get(e, ZERO) + c
        rem = rem - MultiPoly({e: c}, vars_) * b
    return MultiPoly(out, vars_)


def mp_ring(variables: Sequence[str]) -> prs.Ring:
    vs = tuple(variables)
    return prs.Ring(
        zero=MultiPoly.zero(vs),
        one=MultiPoly.constant(ONE, vs),
        add=lambda a, b: a + b,
        sub=lambda a, b: a - b,
        mul=lambda a, b: a * b,
        neg=lambda a: -a,
        exact_div=_divexact_mp,
        is_zero=lambda a: a.is_zero(),
        from_int=lambda n: MultiPoly.constant(Rational(n), vs),
    )


# -- gcd / square-free -------------------------------------------------------


def mp_gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Primitive gcd over Q[vars] (up to the scalar normal form)."""
    if f.is_zero():
        return primitive_part(g)
    if g.is_zero():
        return primitive_part(f)
    if f.is_constant() or g.is_constant():
        return MultiPoly.constant(ONE, f.vars)
    used = [v for v in f.vars if f.uses(v) or g.uses(v)]
    return primitive_part(_gcd_recursive(f, g, used))


def _gcd_recursive(f: MultiPoly, g: MultiPoly, used: list[str]) -> MultiPoly:
    if f.is_zero():
        return g
    if g.is_zero():
        return f
    if f.is_constant() or g.is_constant():
        return MultiPoly.constant(ONE, f.vars)
    var = next(v for v in used if f.uses(v) or g.uses(v))
    fc = f.coeffs_in(var)
    gc = g.coeffs_in(var)
    sub_used = [v for v in used if v != var]
    cont_f = _content_of(fc, sub_used, f.vars)
    cont_g = _content_of(gc, sub_used, f.vars)
    pf = [_divexact_mp(c, cont_f) for c in fc]
    pg = [_divexact_mp(c, cont_g) for c in gc]
    cont = _gcd_recursive(cont_f, cont_g, sub_used)
    # primitive PRS in var
    a, b = pf, pg
    if len(a) < len(b):
        a, b = b, a
    ring = mp_ring(f.vars)
    while b:
        r = prs.pseudo_rem(ring, a, b)
        if r:
            rc = _content_of(r, sub_used, f.vars)
            r = [_divexact_mp(c, rc) for c in r]
        a, b = b, r
    gpoly = MultiPoly.from_coeffs_in(a, var, f.vars)
    return cont * gpoly


def _content_of(coeffs: list[MultiPoly], used: list[str], vars_) -> MultiPoly:
    acc = MultiPoly.zero(vars_)
    for c in coeffs:
        if c.is_zero():
            continue
        acc = _gcd_recursive(acc, c, used) if not acc.is_zero() else c
        if acc.is_constant():
            break
    if acc.is_zero():
        raise ArithmeticError("content of the zero polynomial")
    return primitive_part(acc) if not acc.is_constant() else MultiPoly.constant(ONE, vars_)


def mp_squarefree_part(p: MultiPoly) -> MultiPoly:
    """Product of the distinct irreducible factors, normalized."""
    if p.is_zero():
        raise ValueError("square-free part of zero")
    if p.is_constant():
        return MultiPoly.constant(ONE, p.vars)
    g = MultiPoly.zero(p.vars)
    for v in p.vars:
        if p.uses(v):
            d = p.partial_derivative(v)
            g = mp_gcd(g, d) if not g.is_zero() else mp_gcd(p, d)
    if g.is_zero() or g.is_constant():
        return primitive_part(p)
    g = mp_gcd(p, g)
    return primitive_part(_divexact_mp(p, g))


# -- subresultants and Sturm-Habicht ------------------------------------------


@dataclass(frozen=True)
class SubresSequence:
    """Defined subresultants S_d..S_0 wrt the main variable.

    ``entries[j]`` is S_j (ascending index); entry 0 is the resultant with
    its textbook sign, and missing (zero) subresultants are zero polys.
    """

    entries: tuple[MultiPoly, ...]
    main_var: str

    @property
    def top_index(self) -> int:
        return len(self.entries) - 1

    def entry(self, j: int) -> MultiPoly:
        return self.entries[j]

    @property
    def sres0(self) -> MultiPoly:
        return self.entries[0]


@dataclass(frozen=True)
class SturmHabichtSequence:
    """Sturm-Habicht sequence StHa_p..StHa_0 plus principal coefficients.

    ``principal[j]`` is the coefficient of main_var^j in StHa_j (a
    polynomial in the parameters; zero when the entry is defective).
    """

    entries: tuple[MultiPoly, ...]
    principal: tuple[MultiPoly, ...]
    main_var: str
    p1: MultiPoly
    p2: MultiPoly


def _chain_to_entries(chain: dict[int, list[MultiPoly]], top: int, var: str, vars_) -> list[MultiPoly]:
    zero = MultiPoly.zero(vars_)
    out = []
    for j in range(top + 1):
        entry = chain.get(j)
        out.append(MultiPoly.from_coeffs_in(entry, var, vars_) if entry else zero)
    return out


def subresultant_sequence(p1: MultiPoly, p2: MultiPoly, var: str) -> SubresSequence:
    """Defined subresultant sequence of (p1, p2) wrt ``var``.

    Under any parameter specialization the sequence specializes, up to
    nonzero scalars, to the Euclidean remainder sequence of the
    specialized pair; the lowest nonvanishing entry is proportional to
    their gcd.
    """
    d1, d2 = p1.degree(var), p2.degree(var)
    if d1 <= 0 and d2 <= 0:
        raise PolycertError(f"neither argument uses {var!r}")
    ring = mp_ring(p1.vars)
    a = p1.coeffs_in(var)
    b = p2.coeffs_in(var)
    if d1 > d2:
        chain = prs.subresultant_chain(ring, a, b)
        return SubresSequence(tuple(_chain_to_entries(chain, max(d2, 0), var, p1.vars)), var)
    if d2 > d1:
        chain = prs.subresultant_chain(ring, b, a)
        entries = _chain_to_entries(chain, max(d1, 0), var, p1.vars)
        out = []
        for j, s in enumerate(entries):
            if ((d1 - j) * (d2 - j)) % 2:
                out.append(-s)
            else:
                out.append(s)
        return SubresSequence(tuple(out), var)
    # equal degrees: determinant-polynomial definition (Bareiss), indices d-1..0
    entries = [_detpol_subresultant(p1, p2, var, j) for j in range(d1)]
    return SubresSequence(tuple(entries), var)


def _detpol_subresultant(p1: MultiPoly, p2: MultiPoly, var: str, j: int) -> MultiPoly:
    """S_j of (p1, p2) from the determinant-polynomial definition."""
    d1, d2 = p1.degree(var), p2.degree(var)
    rows = []
    a = p1.coeffs_in(var)
    b = p2.coeffs_in(var)
    width = d1 + d2 - j
    for k in range(d2 - j):
        rows.append(_shifted_row(a, d1, width, d2 - j - 1 - k))
    for k in range(d1 - j):
        rows.append(_shifted_row(b, d2, width, d1 - j - 1 - k))
    m = len(rows)
    ring = mp_ring(p1.vars)
    coeffs = []
    for i in range(j + 1):
        cols = list(range(m - 1)) + [width - 1 - i]
        sq = [[row[c] for c in cols] for row in rows]
        coeffs.append(_bareiss_det(sq, ring))
    # coeffs[i] multiplies var^i
    return MultiPoly.from_coeffs_in(coeffs, var, p1.vars)


def _shifted_row(coeffs: list[MultiPoly], d: int, width: int, shift: int) -> list[MultiPoly]:
    """Row of x^shift * p in descending-degree columns of given width."""
    vars_ = coeffs[0].vars
    zero = MultiPoly.zero(vars_)
    row = [zero] * width
    for k, c in enumerate(coeffs):
        col = width - 1 - (k + shift)
        row[col] = c
    return row


def _bareiss_det(matrix: list[list[MultiPoly]], ring: prs.Ring) -> MultiPoly:
    """Fraction-free determinant over an integral domain."""
    n = len(matrix)
    if n == 0:
        return ring.one
    m = [row[:] for row in matrix]
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        if ring.is_zero(m[k][k]):
            for r in range(k + 1, n):
                if not ring.is_zero(m[r][k]):
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return ring.zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = ring.sub(ring.mul(m[i][j], m[k][k]), ring.mul(m[i][k], m[k][j]))
                m[i][j] = ring.exact_div(num, prev)
            m[i][k] = ring.zero
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return ring.neg(det) if sign < 0 else det


def sturm_habicht_sequence(p1: MultiPoly, p2: MultiPoly, var: str) -> SturmHabichtSequence:
    """Sturm-Habicht sequence of (p1, p2) wrt ``var``.

    Suitable for Tarski queries; specialization-stable (signs are computed
    from principal coefficients after substituting parameter values).
    """
    dp = p1.degree(var)
    if dp < 1:
        raise PolycertError(f"first argument must have positive degree in {var!r}")
    ring = mp_ring(p1.vars)
    chain = prs.sturm_habicht_chain(ring, p1.coeffs_in(var), p2.coeffs_in(var))
    entries = _chain_to_entries(chain, dp, var, p1.vars)
    principal = []
    for j, e in enumerate(entries):
        cs = e.coeffs_in(var)
        principal.append(cs[j] if len(cs) > j else MultiPoly.zero(p1.vars))
    return SturmHabichtSequence(tuple(entries), tuple(principal), var, p1, p2)


def tarski_query(seq: SturmHabichtSequence, specialization: Mapping[str, object] | None = None) -> int:
    """#{x : P1(x)=0, P2(x)>0} - #{x : P1(x)=0, P2(x)<0} over the reals.

    ``specialization`` must cover every parameter present in the sequence
    (empty/None when there are none).  Degenerate specializations that kill
    the leading coefficient of P1 fall back to recomputing the sequence on
    the specialized pair; a specialization annihilating P1 is an error.
    """
    spec = dict(specialization or {})
    p1 = seq.p1.specialize(spec) if spec else seq.p1
    if p1.is_zero():
        raise PolycertError("P1 vanishes identically under the specialization")
    var = seq.main_var
    lead = seq.principal[-1].specialize(spec) if spec else seq.principal[-1]
    if not lead.is_zero():
        signs = []
        for pc in reversed(seq.principal):
            v = pc.specialize(spec) if spec else pc
            signs.append(rational_sign(v.constant_value()))
        return prs.pmv(signs)
    # degenerate: recompute on the specialized pair
    p2 = seq.p2.specialize(spec) if spec else seq.p2
    if p1.degree(var) < 1:
        return 0
    return tarski_query(sturm_habicht_sequence(p1, p2, var), None)


def resultant(p1: MultiPoly, p2: MultiPoly, var: str) -> MultiPoly:
    """Sres_0 of the pair (the Sylvester determinant, including sign)."""
    d1, d2 = p1.degree(var), p2.degree(var)
    if d1 <= 0 and d2 <= 0:
        raise PolycertError(f"neither argument uses {var!r}")
    if d1 < 0 or d2 < 0:
        return MultiPoly.zero(p1.vars)
    if d1 == 0:
        return p1**d2
    if d2 == 0:
        return p2**d1
    return subresultant_sequence(p1, p2, var).sres0


def discriminant(p: MultiPoly, var: str) -> MultiPoly:
    """disc(p) = (-1)^(d(d-1)/2) * res(p, dp/dvar) / lc(p)."""
    d = p.degree(var)
    if d < 1:
        raise PolycertError(f"{var!r} does not appear in the polynomial")
    res = resultant(p, p.partial_derivative(var), var)
    res = _divexact_mp(res, p.leading_coefficient(var))
    if (d * (d - 1) // 2) % 2:
        res = -res
    return res


def partial_derivative(p: MultiPoly, var: str) -> MultiPoly:
    return p.partial_derivative(var)


def specialize(p: MultiPoly, assignment: Mapping[str, object]) -> MultiPoly:
    return p.specialize(assignment)
