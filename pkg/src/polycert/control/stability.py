"""Structural stability of 2-D discrete systems.

A system with denominator D(z1, z2) is structurally stable when D has no
zeros in the closed unit polydisc.  The test decomposes (DeCarlo) into two
univariate closed-disk conditions on the edges D(z1, 1), D(1, z2) and a
torus condition, which a Moebius change of variables z = (x - i)/(x + i)
turns into the real system R = I = 0 solved by the zero-dimensional kernel.

The univariate closed-disk test maps the disk to a half-plane with
z = (1 + s)/(1 - s) and decides the Hurwitz condition by Hermite-Biehler:
the real/imaginary parts of h(i*w) must have all-real, simple, strictly
interlacing roots (counted by Sturm-Habicht sign variations, located by
certified isolation) with a positive phase Wronskian.  Boundary roots
(|z| = 1) count as unstable.

For parametric denominators, the parameter space is decomposed by an open
CAD adapted to the discriminant variety of the torus system plus the
parametric boundary polynomials of the edge criteria; each top-cell sample
point is classified with the exact non-parametric test.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..errors import PolycertError, UnsupportedInput
from ..groebner import buchberger, is_zero_dimensional
from ..multipoly import MultiPoly, discriminant, resultant, to_unipoly
from ..paramspace import CadTree, discriminant_variety, open_cad, sample_points
from ..rationals import ONE, Rational, ZERO
from ..unipoly import (
    IsolatingInterval,
    UniPoly,
    count_real_roots,
    isolate_real_roots,
    poly_gcd,
    refine_root,
    sign_at,
    squarefree_part,
)
from ..zdsolve import solve_rur


@dataclass(frozen=True)
class StabilityVerdict:
    """Per-cell classifications; ``global_verdict`` is set for the
    non-parametric case (single implicit cell)."""

    entries: tuple[tuple[tuple[Rational, ...], str], ...]
    global_verdict: bool | None = None
    cad: CadTree | None = None

    @property
    def stable_points(self):
        return [pt for pt, v in self.entries if v == "stable"]

    @property
    def unstable_points(self):
        return [pt for pt, v in self.entries if v == "unstable"]


# -- complex pair helpers -------------------------------------------------------


def _cpx_mul(a, b):
    (ar, ai), (br, bi) = a, b
    return (ar * br - ai * bi, ar * bi + ai * br)


def moebius_split(D: MultiPoly, torus_vars: Sequence[str] | None = None):
    """Real and imaginary parts of the numerator of D((x-i)/(x+i), ...).

    The substituted variables are renamed x1..xn; any remaining variables
    (parameters) ride along.  Torus zeros of D with every z_k != 1 biject
    with the real solutions of R = I = 0.
    """
    tv = list(torus_vars) if torus_vars is not None else list(D.vars)
    params = [v for v in D.vars if v not in tv]
    xnames = [f"x{i + 1}" for i in range(len(tv))]
    ring = tuple(xnames) + tuple(params)
    degs = [max(0, D.degree(z)) for z in tv]
    xpolys = [MultiPoly.variable(x, ring) for x in xnames]
    one = MultiPoly.constant(ONE, ring)
    zero = MultiPoly.zero(ring)

    minus_pows: list[dict[int, tuple]] = [dict() for _ in tv]
    plus_pows: list[dict[int, tuple]] = [dict() for _ in tv]

    def _pow(cache, base, e):
        if e not in cache:
            acc = (one, zero)
            for _ in range(e):
                acc = _cpx_mul(acc, base)
            cache[e] = acc
        return cache[e]

    tidx = [D.vars.index(z) for z in tv]
    pidx = [D.vars.index(p) for p in params]
    rtot, itot = zero, zero
    for exps, c in D.terms.items():
        mono = [0] * len(ring)
        for j, i in enumerate(pidx):
            mono[len(tv) + j] = exps[i]
        term = (MultiPoly({tuple(mono): c}, ring), zero)
        for k, i in enumerate(tidx):
            e = exps[i]
            term = _cpx_mul(term, _pow(minus_pows[k], (xpolys[k], -one), e))
            term = _cpx_mul(term, _pow(plus_pows[k], (xpolys[k], one), degs[k] - e))
        rtot = rtot + term[0]
        itot = itot + term[1]
    return rtot, itot


# -- univariate closed-disk test --------------------------------------------------


def _cross_disjoin(a: list[IsolatingInterval], b: list[IsolatingInterval]):
    """Refine two families of isolating intervals (for coprime polynomials)
    until all intervals are pairwise disjoint."""
    work = [(0, iv) for iv in a] + [(1, iv) for iv in b]
    changed = True
    while changed:
        changed = False
        work.sort(key=lambda t: (t[1].lo, t[1].hi))
        for i in range(len(work) - 1):
            (la, iva), (lb, ivb) = work[i], work[i + 1]
            if iva.hi < ivb.lo:
                continue
            if iva.is_point() and ivb.is_point():
                raise PolycertError("coprime polynomials share a root (impossible)")
            work[i] = (la, refine_root(iva, iva.width() / 4) if not iva.is_point() else iva)
            work[i + 1] = (lb, refine_root(ivb, ivb.width() / 4) if not ivb.is_point() else ivb)
            changed = True
    work.sort(key=lambda t: (t[1].lo, t[1].hi))
    return work


def _strictly_interlacing(p: UniPoly, q: UniPoly) -> bool:
    """True when the (all real, simple) roots of p and q strictly
    alternate; the polynomial with more roots must own both extremes."""
    if p.degree < 1 or q.degree < 1:
        return True
    pa = isolate_real_roots(p)
    qa = isolate_real_roots(q)
    if abs(len(pa) - len(qa)) != 1:
        return False
    labels = [tag for tag, _ in _cross_disjoin(pa, qa)]
    longer = 0 if len(pa) > len(qa) else 1
    expected = longer
    for tag in labels:
        if tag != expected:
            return False
        expected = 1 - expected
    return labels[-1] == longer


def _hurwitz(h: UniPoly) -> bool:
    """Hermite-Biehler: h (square-free, no roots on the imaginary axis,
    checked by the caller) has all roots in the open left half-plane iff
    the real/imaginary parts of h(i w) form a positive pair."""
    n = h.degree
    if n == 0:
        return True
    if h.lc < 0:
        h = -h
    p, qt = _halfplane_split(h)
    if n % 2 == 0:
        if p.degree != n or qt.degree != n - 1:
            return False
    else:
        if qt.degree != n or p.degree != n - 1:
            return False
    if count_real_roots(p) != p.degree or count_real_roots(qt) != qt.degree:
        return False
    if poly_gcd(p, qt).degree >= 1:
        return False
    if not _strictly_interlacing(p, qt):
        return False
    w0 = qt.derivative()(ZERO) * p(ZERO) - qt(ZERO) * p.derivative()(ZERO)
    if w0 == 0:
        raise PolycertError("degenerate Wronskian for an interlacing pair")
    return w0 > 0


def _halfplane_split(h: UniPoly):
    """h(i*w) = P(w) + i*Q(w) with real P, Q."""
    pc, qc = [], []
    for k, c in enumerate(h.coeffs):
        r = k % 4
        if r == 0:
            pc.append((k, c))
        elif r == 1:
            qc.append((k, c))
        elif r == 2:
            pc.append((k, -c))
        else:
            qc.append((k, -c))
    n = h.degree

    def build(pairs):
        out = [ZERO] * (n + 1)
        for k, c in pairs:
            out[k] = c
        return UniPoly(out, "w")

    return build(pc), build(qc)


def _bilinear_to_halfplane(d: UniPoly) -> UniPoly:
    """(1 - s)^n * d((1 + s)/(1 - s)); degree preserved when d(-1) != 0."""
    n = d.degree
    s = UniPoly.variable("s")
    up = UniPoly([ONE, ONE], "s")  # 1 + s
    um = UniPoly([ONE, -ONE], "s")  # 1 - s
    acc = UniPoly.zero("s")
    for k, c in enumerate(d.coeffs):
        if c == 0:
            continue
        acc = acc + (up**k) * (um ** (n - k)) * c
    return acc


def unit_disk_stability_1d(d: UniPoly) -> bool:
    """True iff d has no roots in the closed unit disk.

    Boundary roots count as unstable.  Constants are vacuously stable.
    """
    if d.is_zero():
        raise ValueError("zero polynomial has no stability verdict")
    if d.is_constant():
        return True
    d = squarefree_part(d)
    n = d.degree
    if n == 0:
        return True
    if sign_at(d, Rational(1)) == 0 or sign_at(d, Rational(-1)) == 0:
        return False
    # roots on the circle away from z = 1 (x = 0 covers z = -1 as well)
    dm = MultiPoly.from_unipoly(d)
    r, im = moebius_split(dm, (d.var,))
    ru = to_unipoly(r, "x1") if not r.is_zero() else UniPoly.zero("x1")
    iu = to_unipoly(im, "x1") if not im.is_zero() else UniPoly.zero("x1")
    g = poly_gcd(ru, iu)
    if g.degree >= 1 and count_real_roots(g) > 0:
        return False
    # interior roots: d stable iff q(-s) is Hurwitz for the transformed q
    q = _bilinear_to_halfplane(d)
    h = UniPoly([(-ONE) ** k * c for k, c in enumerate(q.coeffs)], "s")  # q(-s)
    return _hurwitz(h)


# -- the 2-D tests ---------------------------------------------------------------


def _edge_poly(D: MultiPoly, z_keep: str, z_other: str) -> MultiPoly:
    return D.specialize({z_other: ONE})


def _torus_has_real_solutions(R: MultiPoly, I: MultiPoly, xvars: Sequence[str]) -> bool:
    """Decide whether {R = I = 0} has real solutions (zero-dimensional
    systems only)."""
    nontrivial = [p for p in (R, I) if not p.is_zero()]
    if not nontrivial:
        raise UnsupportedInput("zero numerator in the Moebius chart")
    for p in (R, I):
        if p.is_zero():
            other = I if p is R else R
            if other.is_constant():
                return other.constant_value() == 0
            raise UnsupportedInput("positive-dimensional torus system")
    if R.is_constant() or I.is_constant():
        cr = R if R.is_constant() else I
        if cr.constant_value() != 0:
            return False
        raise UnsupportedInput("degenerate torus system")
    gb = buchberger([R, I])
    if gb.is_trivial():
        return False
    if not is_zero_dimensional(gb):
        raise UnsupportedInput("positive-dimensional torus system (degenerate D)")
    rur = solve_rur(gb)
    return count_real_roots(rur.fbar_t) > 0


def stability_2d(D: MultiPoly, z_vars: Sequence[str] | None = None) -> bool:
    """Structural stability of a parameter-free denominator D(z1, z2)."""
    zv = tuple(z_vars) if z_vars is not None else D.vars
    if len(zv) != 2:
        raise ValueError("stability_2d expects exactly two variables")
    z1, z2 = zv
    if D.eval({z1: ONE, z2: ONE}) == 0:
        raise UnsupportedInput("D(1, 1) = 0: test precondition violated")
    for keep, other in ((z1, z2), (z2, z1)):
        edge = _edge_poly(D, keep, other)
        eu = (
            to_unipoly(edge.reorder((keep,)), keep)
            if edge.uses(keep)
            else UniPoly.constant(edge.constant_value(), keep)
        )
        if eu.is_zero():
            raise UnsupportedInput("edge polynomial vanishes identically")
        if not unit_disk_stability_1d(eu):
            return False
    r, im = moebius_split(D, zv)
    xvars = [v for v in r.vars if v.startswith("x")]
    return not _torus_has_real_solutions(r, im, xvars)


# -- parametric classification -----------------------------------------------------


def _edge_condition_polys(E: MultiPoly, z: str, params: Sequence[str]) -> list[MultiPoly]:
    """Parameter-space polynomials across which the edge verdict can flip:
    values at z = +/-1, and the boundary structure of the half-plane
    criterion for the transformed polynomial (leading coefficient,
    discriminant and resultant of the Cauchy-index pair)."""
    n = E.degree(z)
    if n <= 0:
        return []
    pvars = tuple(params)
    ring = ("s",) + pvars
    coeffs = [c.reorder(pvars).extend(ring) for c in E.coeffs_in(z)]
    out = []
    for val in (ONE, -ONE):
        v = MultiPoly.zero(ring)
        for k, c in enumerate(coeffs):
            v = v + c * (val**k)
        out.append(v)
    s = MultiPoly.variable("s", ring)
    up = MultiPoly.constant(ONE, ring) + s
    um = MultiPoly.constant(ONE, ring) - s
    q = MultiPoly.zero(ring)
    for k, c in enumerate(coeffs):
        if c.is_zero():
            continue
        q = q + c * up**k * um ** (n - k)
    # h = q(-s): flip odd s-coefficients, then split h(i*w) into P + i*Q
    wring = ("w",) + pvars
    P = MultiPoly.zero(wring)
    Q = MultiPoly.zero(wring)
    w = MultiPoly.variable("w", wring)
    for k, c in enumerate(q.coeffs_in("s")):
        cw = c.reorder(pvars).extend(wring)
        if k % 2:
            cw = -cw
        r = k % 4
        if r == 0:
            P = P + cw * w**k
        elif r == 1:
            Q = Q + cw * w**k
        elif r == 2:
            P = P - cw * w**k
        else:
            Q = Q - cw * w**k
    for g in (P, Q):
        if not g.is_zero() and g.uses("w"):
            out.append(g.leading_coefficient("w"))
            if g.degree("w") >= 2:
                out.append(discriminant(g, "w"))
    if not P.is_zero() and not Q.is_zero() and (P.uses("w") or Q.uses("w")):
        out.append(resultant(P, Q, "w"))
    polys = []
    for p in out:
        p = p.reorder(pvars)
        if not p.is_constant():
            polys.append(p)
    return polys


def stability_parametric(D: MultiPoly, params: Sequence[str]) -> StabilityVerdict:
    """Stability classification of every maximal open parameter cell.

    Builds the discriminant variety of the torus system, augments it with
    the parametric edge-criterion boundaries and D(1,1), samples each top
    cell of the open CAD, and classifies the samples with the exact test.
    """
    params = tuple(params)
    zv = tuple(v for v in D.vars if v not in params)
    if len(zv) != 2:
        raise ValueError("expected exactly two main variables")
    z1, z2 = zv
    if not any(D.uses(p) for p in params):
        d0 = D.reorder(zv)
        verdict = stability_2d(d0, zv)
        origin = tuple(ZERO for _ in params)
        return StabilityVerdict(((origin, "stable" if verdict else "unstable"),), verdict, None)
    conds: list[MultiPoly] = []
    r, im = moebius_split(D, zv)
    xvars = [v for v in r.vars if v.startswith("x")]
    dv = discriminant_variety([r, im], xvars, params)
    conds.extend(dv.polys)
    for keep, other in ((z1, z2), (z2, z1)):
        edge = D.specialize({other: ONE})
        conds.extend(_edge_condition_polys(edge, keep, params))
    d11 = D.specialize({z1: ONE, z2: ONE})
    d11 = d11.reorder(params)
    if not d11.is_constant():
        conds.append(d11)
    elif d11.constant_value() == 0:
        raise UnsupportedInput("D(1,1) vanishes identically")
    cad = open_cad(conds, params) if conds else None
    points = sample_points(cad) if cad else [tuple(ZERO for _ in params)]
    entries = []
    for pt in points:
        spec = D.specialize(dict(zip(params, pt))).reorder(zv)
        ok = stability_2d(spec, zv)
        entries.append((tuple(pt), "stable" if ok else "unstable"))
    return StabilityVerdict(tuple(entries), None, cad)
