"""Zero-dimensional system solving.

Pipeline: separating linear form -> Rational Univariate Representation
(via exact linear algebra on the multiplication matrices of the quotient
ring) -> certified real-solution boxes by interval evaluation over refined
isolating intervals.  An interval-Newton (Krawczyk) refiner certifies and
sharpens approximate solutions of square systems.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import NonSeparatingForm, NotZeroDimensional, PolycertError
from .groebner import GroebnerBasis, buchberger, normal_form, quotient_basis
from .intervals import DEFAULT_PRECISION, MPInterval, SolutionBox, iv_arith, iv_eval_poly
from .multipoly import MultiPoly
from .rationals import ONE, Rational, ZERO
from .unipoly import UniPoly, isolate_real_roots, refine_root, squarefree_part


@dataclass(frozen=True)
class RUR:
    """Rational Univariate Representation of a zero-dimensional system.

    The separating form t = sum(sep[i] * X_i) maps the solution set
    bijectively onto the roots of f_t (multiplicities preserved), and
    coordinate i of the solution above a root b of the square-free part
    fbar_t is numerators[i](b) / fbar_t'(b).
    """

    vars: tuple[str, ...]
    sep: tuple[Rational, ...]
    f_t: UniPoly
    fbar_t: UniPoly
    numerators: tuple[UniPoly, ...]

    @property
    def denominator(self) -> UniPoly:
        return self.fbar_t.derivative()


# -- quotient-ring linear algebra ---------------------------------------------


def multiplication_matrices(gb: GroebnerBasis):
    """Quotient basis and, per variable, the matrix of multiplication by
    that variable (columns are images of basis monomials)."""
    qb = quotient_basis(gb)
    if not qb:
        raise NotZeroDimensional("no solutions: trivial ideal")
    index = {e: i for i, e in enumerate(qb)}
    n = len(gb.vars)
    mats = []
    for v in range(n):
        mat = [[ZERO] * len(qb) for _ in range(len(qb))]
        for j, e in enumerate(qb):
            ee = list(e)
            ee[v] += 1
            nf = normal_form(MultiPoly({tuple(ee): ONE}, gb.vars), gb)
            for mono, c in nf.terms.items():
                mat[index[mono]][j] = c
        mats.append(mat)
    return qb, mats


def _mat_mul(a, b):
    n = len(a)
    out = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        ai = a[i]
        for k in range(n):
            c = ai[k]
            if c == 0:
                continue
            bk = b[k]
            oi = out[i]
            for j in range(n):
                if bk[j] != 0:
                    oi[j] = oi[j] + c * bk[j]
    return out


def _trace(a) -> Rational:
    return sum((a[i][i] for i in range(len(a))), ZERO)


def _trace_product(a, b) -> Rational:
    acc = ZERO
    n = len(a)
    for i in range(n):
        for j in range(n):
            if a[i][j] != 0 and b[j][i] != 0:
                acc = acc + a[i][j] * b[j][i]
    return acc


def charpoly(mat, var: str = "T") -> UniPoly:
    """Monic characteristic polynomial by Faddeev-LeVerrier (exact)."""
    n = len(mat)
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    ak = [row[:] for row in mat]
    for k in range(1, n + 1):
        ck = -_trace(ak) / k
        coeffs[n - k] = ck
        if k < n:
            for i in range(n):
                ak[i][i] = ak[i][i] + ck
            ak = _mat_mul(mat, ak)
    return UniPoly(coeffs, var)


# -- separating forms ----------------------------------------------------------


def _candidate_forms(n: int, limit: int = 50):
    for i in range(n):
        coeffs = [ZERO] * n
        coeffs[i] = ONE
        yield tuple(coeffs)
    for j in range(1, limit):
        yield tuple(Rational(i + 1) ** j for i in range(n))


def _distinct_root_count(gb: GroebnerBasis, mats) -> int:
    """dim of the radical quotient: quotient size after adjoining the
    square-free parts of each coordinate's characteristic polynomial."""
    extra = []
    for v, mat in zip(gb.vars, mats):
        cp = charpoly(mat, v)
        sf = squarefree_part(cp)
        if sf.degree < cp.degree:
            extra.append(MultiPoly.from_unipoly(sf, gb.vars))
    if not extra:
        return len(quotient_basis(gb))
    gb2 = buchberger(list(gb.generators) + extra, gb.order)
    return len(quotient_basis(gb2))


def separating_element(gb: GroebnerBasis):
    """First linear form of the deterministic schedule X_1, ..., X_n,
    sum((i+1)^j X_i) whose minimal polynomial has degree equal to the
    number of distinct complex roots."""
    qb, mats = multiplication_matrices(gb)
    target = _distinct_root_count(gb, mats)
    for coeffs in _candidate_forms(len(gb.vars)):
        ft = _form_charpoly(mats, coeffs)
        if squarefree_part(ft).degree == target:
            return coeffs
    raise PolycertError("separating-form schedule exhausted")


def _form_charpoly(mats, coeffs) -> UniPoly:
    n = len(mats[0])
    mt = [[ZERO] * n for _ in range(n)]
    for c, mat in zip(coeffs, mats):
        if c == 0:
            continue
        for i in range(n):
            for j in range(n):
                if mat[i][j] != 0:
                    mt[i][j] = mt[i][j] + c * mat[i][j]
    return charpoly(mt)


# -- RUR construction -----------------------------------------------------------


def _poly_invmod(u: UniPoly, m: UniPoly) -> UniPoly:
    """Inverse of u modulo m over Q (extended Euclid)."""
    r0, r1 = m, u % m
    s0, s1 = UniPoly.zero(m.var), UniPoly.constant(1, m.var)
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    if r0.degree != 0:
        raise NonSeparatingForm("denominator not invertible modulo fbar_t")
    return s0 * (ONE / r0.coeffs[0])


def _eval_at_unipolys(F: MultiPoly, gs: Sequence[UniPoly], modulus: UniPoly) -> UniPoly:
    """F(g_1(T), ..., g_n(T)) reduced modulo ``modulus``."""
    var = modulus.var
    cache: dict[tuple[int, int], UniPoly] = {}

    def power(i: int, e: int) -> UniPoly:
        if e == 0:
            return UniPoly.constant(1, var)
        key = (i, e)
        if key not in cache:
            half = power(i, e // 2)
            acc = (half * half) % modulus
            if e % 2:
                acc = (acc * gs[i]) % modulus
            cache[key] = acc
        return cache[key]

    acc = UniPoly.zero(var)
    for exps, c in F.terms.items():
        term = UniPoly.constant(c, var)
        for i, e in enumerate(exps):
            if e:
                term = (term * power(i, e)) % modulus
        acc = acc + term
    return acc % modulus


def compute_rur(gb: GroebnerBasis, sep) -> RUR:
    """RUR for a zero-dimensional basis and a separating form.

    f_t is the characteristic polynomial of multiplication by t (degree =
    quotient dimension); numerators are f_i = (g_i * fbar_t') mod fbar_t
    where X_i = g_i(t) on the solution set.  A non-separating form is
    detected and signalled for retry.
    """
    qb, mats = multiplication_matrices(gb)
    sep = tuple(Rational(c) if isinstance(c, int) else c for c in sep)
    n = len(gb.vars)
    d = len(qb)
    ft = _form_charpoly(mats, sep)
    fbar = squarefree_part(ft)
    db = fbar.degree
    # power traces Tr(M_v * M_t^k), k < deg fbar
    mt = [[ZERO] * d for _ in range(d)]
    for c, mat in zip(sep, mats):
        if c == 0:
            continue
        for i in range(d):
            for j in range(d):
                mt[i][j] = mt[i][j] + c * mat[i][j]
    powers = []
    acc = [[ONE if i == j else ZERO for j in range(d)] for i in range(d)]
    for _ in range(db):
        powers.append(acc)
        acc = _mat_mul(acc, mt)
    c = fbar.coeffs
    # Horner tails H_k(T) = sum_{m<=k} c[db-k+m] T^m
    horner = []
    for k in range(db):
        horner.append(UniPoly([c[db - k + m] for m in range(k + 1)], ft.var))
    def weighted(traces):
        acc = UniPoly.zero(ft.var)
        for i, tr in enumerate(traces):
            if tr != 0:
                acc = acc + horner[db - 1 - i] * tr
        return acc

    u = weighted([_trace(p) for p in powers])
    uinv = _poly_invmod(u, fbar)
    fbar_d = fbar.derivative()
    gs = []
    numerators = []
    for mat in mats:
        gv = weighted([_trace_product(mat, p) for p in powers])
        gi = (gv * uinv) % fbar
        gs.append(gi)
        numerators.append((gi * fbar_d) % fbar)
    # separation checks: t(g) = T and the system vanishes on the image
    tpoly = UniPoly.zero(ft.var)
    for ci, gi in zip(sep, gs):
        tpoly = tpoly + gi * ci
    if not (tpoly % fbar) == (UniPoly.variable(ft.var) % fbar):
        raise NonSeparatingForm("candidate form does not invert on the image")
    for F in gb.generators:
        if not _eval_at_unipolys(F, gs, fbar).is_zero():
            raise NonSeparatingForm("system does not vanish on the parametrized image")
    return RUR(gb.vars, sep, ft, fbar, tuple(numerators))


def solve_rur(gb: GroebnerBasis) -> RUR:
    """Separating-form search and RUR construction in one step."""
    qb, mats = multiplication_matrices(gb)
    target = _distinct_root_count(gb, mats)
    for coeffs in _candidate_forms(len(gb.vars)):
        ft = _form_charpoly(mats, coeffs)
        if squarefree_part(ft).degree != target:
            continue
        try:
            return compute_rur(gb, coeffs)
        except NonSeparatingForm:
            continue
    raise PolycertError("separating-form schedule exhausted")


# -- solution boxing -----------------------------------------------------------


def isolate_system(rur: RUR, output_precision: int = DEFAULT_PRECISION) -> list[SolutionBox]:
    """One certified SolutionBox per real solution, coordinate widths at
    most 2^-output_precision, ordered by the t-coordinate."""
    if rur.fbar_t.degree < 1:
        return []
    den = rur.denominator
    boxes = []
    for iv in isolate_real_roots(rur.fbar_t):
        width = iv.width() if not iv.is_point() else ZERO
        target = Rational(1, 2 ** (output_precision + 4))
        if width > target:
            iv = refine_root(iv, target)
        prec = output_precision + 48
        for _ in range(64):
            jiv = MPInterval.from_endpoints(iv.lo, iv.hi, prec)
            dv = iv_eval_poly(den, jiv, prec)
            if not dv.contains_zero():
                coords = [
                    iv_arith(iv_eval_poly(num, jiv, prec), dv, "div", prec)
                    for num in rur.numerators
                ]
                if all(cv.width() <= Rational(1, 2**output_precision) for cv in coords):
                    boxes.append(SolutionBox(tuple(coords), certified=True))
                    break
            if iv.is_point():
                prec *= 2
            else:
                iv = refine_root(iv, iv.width() / Rational(2**8))
                prec += 32
        else:
            raise PolycertError("failed to shrink solution box (unexpected)")
    return boxes


def solve_system(system: Sequence[MultiPoly], output_precision: int = DEFAULT_PRECISION):
    """Groebner -> RUR -> boxes for a zero-dimensional system."""
    gb = buchberger(system)
    if not gb.is_trivial():
        from .groebner import is_zero_dimensional

        if not is_zero_dimensional(gb):
            raise NotZeroDimensional("system is not zero-dimensional")
    rur = solve_rur(gb) if not gb.is_trivial() else None
    if rur is None:
        return gb, None, []
    return gb, rur, isolate_system(rur, output_precision)


# -- interval Newton / Krawczyk -------------------------------------------------


def iv_eval_multipoly(F: MultiPoly, box: Sequence[MPInterval], prec: int) -> MPInterval:
    """Interval evaluation of a sparse polynomial over a box."""
    total = MPInterval.from_int(0, prec)
    pow_cache: list[dict[int, MPInterval]] = [dict() for _ in box]

    def power(i: int, e: int) -> MPInterval:
        if e == 0:
            return MPInterval.from_int(1, prec)
        cache = pow_cache[i]
        if e not in cache:
            acc = box[i]
            for _ in range(e - 1):
                acc = iv_arith(acc, box[i], "mul", prec)
            cache[e] = acc
        return cache[e]

    for exps, c in F.terms.items():
        term = MPInterval.from_rational(c, prec)
        for i, e in enumerate(exps):
            if e:
                term = iv_arith(term, power(i, e), "mul", prec)
        total = iv_arith(total, term, "add", prec)
    return total


def _rat_inverse(mat):
    """Exact inverse of a rational matrix; None when singular."""
    n = len(mat)
    a = [row[:] + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = ONE / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def interval_newton(
    system: Sequence[MultiPoly],
    initial_point: Sequence,
    precision: int = DEFAULT_PRECISION,
) -> SolutionBox:
    """Certified refinement of an approximate solution of a square system.

    A strict Krawczyk contraction proves existence and uniqueness in the
    box; on contraction failure (after a widening schedule) the box around
    the initial point is returned with ``certified=False``.
    """
    vars_ = system[0].vars
    n = len(vars_)
    if len(system) != n:
        raise PolycertError("interval_newton requires a square system")
    x0 = [Rational(v) if isinstance(v, int) else v for v in initial_point]
    jac = [[F.partial_derivative(v) for v in vars_] for F in system]
    prec = precision + 64
    target = Rational(1, 2**precision)
    for wexp in (10, 6, 3, 1):
        w = Rational(1, 2**wexp)
        box = [MPInterval.from_endpoints(c - w, c + w, prec) for c in x0]
        certified = False
        for _ in range(precision + 60):
            mid = [b.midpoint() for b in box]
            fm = [F.eval(dict(zip(vars_, mid))) for F in system]
            jm = [[g.eval(dict(zip(vars_, mid))) for g in row] for row in jac]
            y = _rat_inverse(jm)
            if y is None:
                break
            jx = [[iv_eval_multipoly(g, box, prec) for g in row] for row in jac]
            k = []
            for i in range(n):
                acc = MPInterval.from_rational(
                    mid[i] - sum((y[i][j] * fm[j] for j in range(n)), ZERO), prec
                )
                for j in range(n):
                    coef = iv_arith(
                        MPInterval.from_rational(ONE if i == j else ZERO, prec),
                        _iv_scale_row(y[i], jx, j, prec),
                        "sub",
                        prec,
                    )
                    dx = iv_arith(box[j], MPInterval.from_rational(mid[j], prec), "sub", prec)
                    acc = iv_arith(acc, iv_arith(coef, dx, "mul", prec), "add", prec)
                k.append(acc)
            if all(box[i].strictly_contains(k[i]) for i in range(n)):
                certified = True
            new_box = []
            ok = True
            for i in range(n):
                inter = k[i].intersect(box[i])
                if inter is None:
                    ok = False
                    break
                new_box.append(inter)
            if not ok:
                break
            if certified and all(b.width() == nb.width() for b, nb in zip(box, new_box)):
                prec *= 2
            box = new_box
            if certified and all(b.width() <= target for b in box):
                return SolutionBox(tuple(box), certified=True)
        if certified:
            return SolutionBox(tuple(box), certified=True)
    w = Rational(1, 2**precision)
    fallback = [MPInterval.from_endpoints(c - w, c + w, prec) for c in x0]
    return SolutionBox(tuple(fallback), certified=False)


def _iv_scale_row(yrow, jx, col: int, prec: int) -> MPInterval:
    """(Y . J(X))[row][col] as an interval."""
    acc = MPInterval.from_int(0, prec)
    for j, c in enumerate(yrow):
        if c == 0:
            continue
        acc = iv_arith(acc, iv_arith(MPInterval.from_rational(c, prec), jx[j][col], "mul", prec), "add", prec)
    return acc


def residual_contains_zero(system: Sequence[MultiPoly], box: SolutionBox, prec: int = DEFAULT_PRECISION) -> bool:
    """Interval residual check: every system polynomial evaluated over the
    box contains zero."""
    return all(iv_eval_multipoly(F, list(box.coords), prec).contains_zero() for F in system)
