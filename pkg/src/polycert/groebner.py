"""Buchberger Groebner-basis engine over Q.

Orders: degrevlex, lex, and block elimination (two degrevlex blocks).
Pair selection follows the normal strategy (minimal lcm total degree,
deterministic tie-break); the product and chain criteria prune pairs.
Coefficients stay rational with content stripping after each reduction.
Output bases are reduced, monic and deterministically sorted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import NotZeroDimensional
from .multipoly import MultiPoly, primitive_part
from .rationals import ONE, Rational, ZERO


@dataclass(frozen=True)
class MonomialOrder:
    """Total, multiplicative, well-founded order on exponent vectors."""

    kind: str = "degrevlex"  # degrevlex | lex | block
    split: int = 0  # for block orders: first `split` variables are eliminated

    def key(self, e: tuple[int, ...]):
        if self.kind == "degrevlex":
            return _drl_key(e)
        if self.kind == "lex":
            return tuple(e)
        if self.kind == "block":
            return (_drl_key(e[: self.split]), _drl_key(e[self.split:]))
        raise ValueError(f"unknown order {self.kind!r}")


def _drl_key(e: tuple[int, ...]):
    return (sum(e), tuple(-x for x in reversed(e)))


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


def block_elimination(split: int) -> MonomialOrder:
    return MonomialOrder("block", split)


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced monic Groebner basis with its order and variable tuple."""

    generators: tuple[MultiPoly, ...]
    order: MonomialOrder

    @property
    def vars(self) -> tuple[str, ...]:
        return self.generators[0].vars

    def leading_monomials(self) -> list[tuple[int, ...]]:
        return [_lm(g, self.order) for g in self.generators]

    def is_trivial(self) -> bool:
        """True when the ideal is the whole ring."""
        return len(self.generators) == 1 and self.generators[0].is_constant()


def _lm(p: MultiPoly, order: MonomialOrder) -> tuple[int, ...]:
    return max(p.terms, key=order.key)


def _divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(max(x, y) for x, y in zip(a, b))


def _mono_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def _reduce(p: MultiPoly, basis: list[MultiPoly], lms: list[tuple[int, ...]], order: MonomialOrder) -> MultiPoly:
    """Full multivariate division remainder (deterministic reducer choice)."""
    vars_ = p.vars
    rem_terms: dict[tuple[int, ...], Rational] = {}
    work = dict(p.terms)
    while work:
        e = max(work, key=order.key)
        c = work.pop(e)
        if c == 0:
            continue
        for g, lm in zip(basis, lms):
            if _divides(lm, e):
                shift = tuple(x - y for x, y in zip(e, lm))
                factor = c / g.terms[lm]
                for ge, gc in g.terms.items():
                    key = _mono_mul(ge, shift)
                    work[key] = work.get(key, ZERO) - factor * gc
                work.pop(e, None)
                break
        else:
            rem_terms[e] = rem_terms.get(e, ZERO) + c
    return MultiPoly(rem_terms, vars_)


def _s_poly(f: MultiPoly, g: MultiPoly, order: MonomialOrder) -> MultiPoly:
    lf, lg = _lm(f, order), _lm(g, order)
    l = _lcm(lf, lg)
    mf = MultiPoly({tuple(x - y for x, y in zip(l, lf)): ONE / f.terms[lf]}, f.vars)
    mg = MultiPoly({tuple(x - y for x, y in zip(l, lg)): ONE / g.terms[lg]}, g.vars)
    return mf * f - mg * g


def buchberger(system: Sequence[MultiPoly], order: MonomialOrder = DEGREVLEX) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``system``.

    Deterministic for a fixed input and order.  The inconsistent ideal
    yields the basis [1].
    """
    polys = [primitive_part(p) for p in system if not p.is_zero()]
    if not polys:
        raise ValueError("empty polynomial system")
    vars_ = polys[0].vars
    basis: list[MultiPoly] = []
    lms: list[tuple[int, ...]] = []
    for p in sorted(polys, key=lambda q: order.key(_lm(q, order))):
        r = _reduce(p, basis, lms, order)
        if not r.is_zero():
            basis.append(primitive_part(r))
            lms.append(_lm(basis[-1], order))
    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}
    while pairs:
        # normal strategy: minimal lcm total degree, deterministic tie-break
        best = min(
            pairs,
            key=lambda ij: (
                sum(_lcm(lms[ij[0]], lms[ij[1]])),
                order.key(_lcm(lms[ij[0]], lms[ij[1]])),
                ij,
            ),
        )
        pairs.discard(best)
        i, j = best
        li, lj = lms[i], lms[j]
        l = _lcm(li, lj)
        if l == _mono_mul(li, lj):
            continue  # product criterion: coprime leading monomials
        if any(
            k != i and k != j
            and _divides(lms[k], l)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(basis))
        ):
            continue  # chain criterion
        r = _reduce(_s_poly(basis[i], basis[j], order), basis, lms, order)
        if r.is_zero():
            continue
        r = primitive_part(r)
        basis.append(r)
        lms.append(_lm(r, order))
        k = len(basis) - 1
        pairs.update((m, k) for m in range(k))
    # minimize: drop generators whose lm is divisible by another's
    keep = []
    for i, lm in enumerate(lms):
        if not any(j != i and _divides(lms[j], lm) and (lms[j] != lm or j < i) for j in range(len(basis))):
            keep.append(i)
    gens = [basis[i] for i in keep]
    gens.sort(key=lambda g: order.key(_lm(g, order)))
    # one-pass interreduction against the updated set, then normalize monic
    reduced: list[MultiPoly] = []
    for i, g in enumerate(gens):
        others = reduced + gens[i + 1:]
        r = _reduce(g, others, [_lm(h, order) for h in others], order)
        if not r.is_zero():
            reduced.append(r * (ONE / r.terms[_lm(r, order)]))
    reduced.sort(key=lambda g: order.key(_lm(g, order)))
    if not reduced:
        reduced = [MultiPoly.constant(ONE, vars_)]
    return GroebnerBasis(tuple(reduced), order)


def normal_form(p: MultiPoly, gb: GroebnerBasis) -> MultiPoly:
    """Remainder of multivariate division by the basis; zero iff p is in
    the ideal."""
    gens = list(gb.generators)
    return _reduce(p, gens, [_lm(g, gb.order) for g in gens], gb.order)


def is_zero_dimensional(gb: GroebnerBasis) -> bool:
    """True iff every variable has a pure power among the leading
    monomials (always true for the trivial ideal)."""
    if gb.is_trivial():
        return True
    lms = gb.leading_monomials()
    n = len(gb.vars)
    for i in range(n):
        if not any(lm[i] > 0 and all(lm[j] == 0 for j in range(n) if j != i) for lm in lms):
            return False
    return True


def quotient_basis(gb: GroebnerBasis) -> list[tuple[int, ...]]:
    """Monomials under the staircase; the size equals the number of complex
    roots counted with multiplicity."""
    if not is_zero_dimensional(gb):
        raise NotZeroDimensional("quotient basis of a positive-dimensional ideal")
    if gb.is_trivial():
        return []
    lms = gb.leading_monomials()
    n = len(gb.vars)
    seen: set[tuple[int, ...]] = set()
    out: list[tuple[int, ...]] = []
    stack = [(0,) * n]
    while stack:
        e = stack.pop()
        if e in seen or any(_divides(lm, e) for lm in lms):
            continue
        seen.add(e)
        out.append(e)
        for i in range(n):
            ee = list(e)
            ee[i] += 1
            stack.append(tuple(ee))
    out.sort(key=gb.order.key)
    return out


def elimination_ideal(system: Sequence[MultiPoly], keep: Iterable[str]) -> list[MultiPoly]:
    """Generators of the ideal's intersection with Q[keep].

    Block elimination order with the dropped variables in the first block;
    returns the generators free of eliminated variables, re-expressed over
    the kept variables (empty list for the zero ideal).
    """
    polys = list(system)
    vars_ = polys[0].vars
    keep = [v for v in vars_ if v in set(keep)]
    drop = [v for v in vars_ if v not in keep]
    new_order_vars = tuple(drop + keep)
    reordered = [p.reorder(new_order_vars) if p.vars != new_order_vars else p for p in polys]
    gb = buchberger(reordered, block_elimination(len(drop)))
    out = []
    for g in gb.generators:
        if all(not g.uses(v) for v in drop):
            q = MultiPoly({tuple(e[len(drop):]): c for e, c in g.terms.items()}, tuple(keep))
            if not q.is_constant() or not q.constant_value() == 0:
                out.append(q)
    return out
