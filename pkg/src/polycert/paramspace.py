"""Parametric machinery: discriminant varieties and the open-cell CAD.

The discriminant variety computed here is a certified *superset* of the
minimal one: the projection of the critical locus plus the solutions-at-
infinity component (per projective chart).  A superset preserves the
covering property of the complement, at the cost of possibly splitting
cells.

The open CAD describes the complement's maximal open cells by a chain of
polynomial families Po_l..Po_1 (iterated resultants/discriminants, with
leading coefficients added so specializations never collapse) and nested
rational sample points Pt_1..Pt_l interleaving the real roots level by
level.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import UnsupportedInput
from .groebner import buchberger, elimination_ideal, is_zero_dimensional
from .multipoly import (
    MultiPoly,
    mp_gcd,
    mp_squarefree_part,
    primitive_part,
    resultant,
    to_unipoly,
    _divexact_mp,
)
from .rationals import ONE, Rational, ZERO
from .unipoly import UniPoly, isolate_real_roots, refine_root


@dataclass(frozen=True)
class DiscriminantVariety:
    """Zero set union of parameter-space polynomials outside which the
    system's solutions form an analytic covering."""

    polys: tuple[MultiPoly, ...]
    params: tuple[str, ...]

    def is_empty(self) -> bool:
        return not self.polys


@dataclass(frozen=True)
class CadTree:
    """Po_1..Po_l polynomial families and Pt_1..Pt_l nested sample points."""

    po: tuple[tuple[MultiPoly, ...], ...]  # po[k-1] lives in params[:k]
    pt: tuple[tuple[tuple[Rational, ...], ...], ...]
    params: tuple[str, ...]


# -- discriminant variety ------------------------------------------------------


_GENERIC_TRIALS = (
    (Rational(3), Rational(5), Rational(7)),
    (Rational(-2), Rational(9), Rational(-5)),
    (Rational(11, 3), Rational(-7, 2), Rational(13, 5)),
)


def _generically_zero_dimensional(system, vars_, params) -> bool:
    for trial in _GENERIC_TRIALS:
        point = {p: trial[i % len(trial)] * (i + 1) for i, p in enumerate(params)}
        spec = [q.specialize(point) for q in system]
        spec = [q for q in spec if not q.is_zero()]
        if not spec:
            continue
        gb = buchberger(spec)
        if is_zero_dimensional(gb):
            return True
    return False


def _jacobian_minors(system, vars_) -> list[MultiPoly]:
    """det for square systems, all maximal minors otherwise."""
    from itertools import combinations

    rows = [[F.partial_derivative(v) for v in vars_] for F in system]
    n = len(vars_)
    minors = []
    for chosen in combinations(range(len(system)), n):
        sub = [rows[i] for i in chosen]
        minors.append(_det(sub))
    return minors


def _det(m: list[list[MultiPoly]]) -> MultiPoly:
    n = len(m)
    if n == 1:
        return m[0][0]
    acc = MultiPoly.zero(m[0][0].vars)
    for j in range(n):
        sub = [[m[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = m[0][j] * _det(sub)
        acc = acc - term if j % 2 else acc + term
    return acc


def _homogeneous_top(p: MultiPoly, vars_: Sequence[str]) -> MultiPoly:
    """Top-degree form wrt the solution variables."""
    idx = [p.vars.index(v) for v in vars_]
    d = max(sum(e[i] for i in idx) for e in p.terms)
    terms = {e: c for e, c in p.terms.items() if sum(e[i] for i in idx) == d}
    return MultiPoly(terms, p.vars)


def _postprocess(polys, params) -> tuple[MultiPoly, ...]:
    """Square-free, pairwise gcd-reduced, constant-free, deduplicated."""
    work = []
    for p in polys:
        if p.is_zero() or p.is_constant():
            continue
        work.append(mp_squarefree_part(p))
    changed = True
    while changed:
        changed = False
        out = []
        for p in work:
            if p.is_constant():
                continue
            for i, q in enumerate(out):
                g = mp_gcd(p, q)
                if not g.is_constant():
                    p2 = _divexact_mp(p, g)
                    q2 = _divexact_mp(q, g)
                    out[i] = g
                    for extra in (primitive_part(p2), primitive_part(q2)):
                        if not extra.is_constant():
                            out.append(extra)
                    changed = True
                    p = None
                    break
            if p is not None and not any(p == q for q in out):
                out.append(p)
        work = out
    work.sort(key=lambda p: (p.total_degree(), sorted(p.terms)))
    return tuple(work)


def discriminant_variety(system: Sequence[MultiPoly], vars_: Sequence[str], params: Sequence[str]) -> DiscriminantVariety:
    """Superset discriminant variety of a generically zero-dimensional
    parametric system: critical-locus projection plus the infinity
    component (degree-drop / escape to infinity)."""
    vars_ = tuple(vars_)
    params = tuple(params)
    system = list(system)
    if not _generically_zero_dimensional(system, vars_, params):
        raise UnsupportedInput("system is not generically zero-dimensional")
    components: list[MultiPoly] = []
    # critical locus: system = 0 and all maximal Jacobian minors vanish
    minors = [m for m in _jacobian_minors(system, vars_) if not m.is_zero()]
    if not minors:
        raise UnsupportedInput("Jacobian vanishes identically (degenerate system)")
    crit = elimination_ideal(system + minors, keep=params)
    if not crit:
        raise UnsupportedInput("critical locus projects onto the parameter space")
    components.extend(g.reorder(params) for g in crit)
    # infinity component: projective solutions at x0 = 0, chart by chart
    tops = [_homogeneous_top(p, vars_) for p in system]
    for chart in vars_:
        chart_sys = [t.specialize({chart: ONE}).extend(system[0].vars) for t in tops]
        chart_sys = [t for t in chart_sys if not t.is_zero()]
        if not chart_sys:
            raise UnsupportedInput("solutions at infinity for all parameter values")
        if all(t.is_constant() for t in chart_sys):
            continue
        inf = elimination_ideal(chart_sys, keep=params)
        if not inf:
            raise UnsupportedInput("infinity locus covers the parameter space")
        components.extend(g.reorder(params) for g in inf)
    return DiscriminantVariety(_postprocess(components, params), params)


# -- open CAD -------------------------------------------------------------------


def open_cad(polys: Sequence[MultiPoly], params: Sequence[str] | None = None) -> CadTree:
    """Open-cell CAD of the parameter space adapted to ``polys``.

    Po recursion: Po_{k-1} collects Sres_0(P, dP/dU_k), Sres_0(P, Q) over
    the level-k family, plus leading coefficients wrt U_k (the standard
    projection repair); constants and repeated factors are dropped.  Pt_1
    interleaves the real roots of the level-1 product, and Pt_j lifts each
    base point by the same interleaving.
    """
    polys = list(polys)
    if params is None:
        if not polys:
            raise ValueError("need polynomials or an explicit parameter list")
        params = polys[0].vars
    params = tuple(params)
    l = len(params)
    po: list[tuple[MultiPoly, ...]] = [()] * l
    level = _postprocess([p.extend(params) if p.vars != params else p for p in polys], params)
    po[l - 1] = level
    for k in range(l - 1, 0, -1):
        uk = params[k]
        nxt: list[MultiPoly] = []
        active = []
        for p in level:
            if not p.uses(uk):
                nxt.append(p)
                continue
            # split off the uk-free content: it projects down unchanged and
            # would annihilate the discriminant otherwise
            cont = _uk_content(p, uk)
            if not cont.is_constant():
                nxt.append(cont)
                p = primitive_part(_divexact_mp(p, cont))
            active.append(p)
        for p in active:
            lc = p.leading_coefficient(uk)
            if not lc.is_constant():
                nxt.append(lc)
            if p.degree(uk) >= 2:
                nxt.append(resultant(p, p.partial_derivative(uk), uk))
        for i, p in enumerate(active):
            for q in active[i + 1:]:
                nxt.append(resultant(p, q, uk))
        level = _postprocess(nxt, params[:k])
        level = tuple(p.reorder(params[:k]) for p in level)
        po[k - 1] = level
    # sample points, level by level
    pts: list[tuple[tuple[Rational, ...], ...]] = []
    base: list[tuple[Rational, ...]] = [()]
    for k in range(l):
        uk = params[k]
        new_pts: list[tuple[Rational, ...]] = []
        for b in base:
            assignment = dict(zip(params[:k], b))
            roots = _level_roots(po[k], assignment, uk)
            for a in _interleave(roots):
                new_pts.append(b + (a,))
        pts.append(tuple(new_pts))
        base = new_pts
    return CadTree(tuple(po), tuple(pts), params)


def _uk_content(p: MultiPoly, var: str) -> MultiPoly:
    """gcd of the coefficients of p viewed in (Q[rest])[var]."""
    acc = MultiPoly.zero(p.vars)
    for c in p.coeffs_in(var):
        if c.is_zero():
            continue
        acc = c if acc.is_zero() else mp_gcd(acc, c)
        if acc.is_constant():
            break
    return acc


def _level_roots(family: Sequence[MultiPoly], assignment, var: str) -> list[Rational]:
    """Sorted real roots of prod(p(assignment, var)); exact rationals are
    taken as interval midpoints after refinement to pairwise disjointness."""
    prod = UniPoly.constant(1, var)
    for p in family:
        spec = p.specialize(assignment) if assignment else p
        u = to_unipoly(spec.reorder((var,)) if spec.vars != (var,) else spec, var)
        if u.is_zero():
            raise UnsupportedInput(
                "family member vanishes identically above a sample point; "
                "leading-coefficient projection should have prevented this"
            )
        if u.degree >= 1:
            prod = prod * u
    if prod.degree < 1:
        return []
    ivs = isolate_real_roots(prod)
    ivs = [refine_root(iv, Rational(1, 64)) if not iv.is_point() else iv for iv in ivs]
    return [iv for iv in ivs]


def _interleave(ivs) -> list[Rational]:
    """One rational strictly between consecutive roots, plus outer points
    at (leftmost - 1) and (rightmost + 1)."""
    if not ivs:
        return [ZERO]
    # ensure strict gaps between closed intervals
    changed = True
    while changed:
        changed = False
        for a, b in zip(ivs, ivs[1:]):
            if not a.hi < b.lo:
                ivs = [refine_root(iv, iv.width() / 4) if not iv.is_point() else iv for iv in ivs]
                changed = True
                break
    out = [ivs[0].lo - 1]
    for a, b in zip(ivs, ivs[1:]):
        out.append((a.hi + b.lo) / 2)
    out.append(ivs[-1].hi + 1)
    return out


def sample_points(cad: CadTree) -> list[tuple[Rational, ...]]:
    """Flat list of the top-dimension sample points Pt_l."""
    return list(cad.pt[-1])
