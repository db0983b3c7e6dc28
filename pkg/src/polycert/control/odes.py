"""ODE parameter identification through polynomial system solving.

The output of a polynomial state-space model is differentiated h times
with the dynamics substituted formally (Lie derivatives over derivative
symbols), the measured output and its derivatives are estimated by exact
Newton interpolation of the data, and the resulting square polynomial
system in (parameters, initial conditions and their formal derivatives)
is solved by the certified zero-dimensional kernel.  Candidates are
ranked by the squared data residual of the truncated output Taylor model.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from ..errors import NotZeroDimensional, PolycertError, UnsupportedInput
from ..groebner import buchberger, is_zero_dimensional
from ..intervals import SolutionBox
from ..multipoly import MultiPoly
from ..rationals import ONE, Rational, ZERO
from ..unipoly import UniPoly
from ..zdsolve import isolate_system, solve_rur

_MAX_PROLONGED_VARS = 96


def deriv_symbol(name: str, order: int) -> str:
    return name if order == 0 else f"d{order}_{name}"


@dataclass(frozen=True)
class OdeModel:
    """Polynomial state-space model x' = f(x, mu, u), y = g(x, mu, u)."""

    states: tuple[str, ...]
    params: tuple[str, ...]
    dynamics: tuple[MultiPoly, ...]
    output: MultiPoly
    controls: tuple[str, ...] = ()
    control_inputs: Mapping[str, UniPoly] | None = None

    def __post_init__(self):
        if len(self.dynamics) != len(self.states):
            raise ValueError("one dynamics polynomial per state required")

    @property
    def ring(self) -> tuple[str, ...]:
        return tuple(self.states) + tuple(self.params) + tuple(self.controls)


@dataclass(frozen=True)
class Prolongation:
    equations: tuple[MultiPoly, ...]  # output equations then dynamics
    output_rhs: tuple[MultiPoly, ...]  # g, g', ..., g^(h)
    y_symbols: tuple[str, ...]
    unknowns: tuple[str, ...]  # params then state derivative symbols
    ring: tuple[str, ...]
    h: int


def _prolong(model: OdeModel, h: int) -> Prolongation:
    if h < 0:
        raise ValueError("h must be nonnegative")
    n = len(model.states)
    ysyms = tuple(deriv_symbol("y", j) for j in range(h + 1))
    state_syms = tuple(
        deriv_symbol(x, j) for j in range(h + 1) for x in model.states
    )
    ctrl_syms = tuple(
        deriv_symbol(u, j) for j in range(h + 1) for u in model.controls
    )
    ring = ysyms + tuple(model.params) + state_syms + ctrl_syms
    if len(ring) > _MAX_PROLONGED_VARS:
        raise UnsupportedInput(
            f"prolonged system would need {len(ring)} symbols (budget {_MAX_PROLONGED_VARS})"
        )

    def lift(p: MultiPoly) -> MultiPoly:
        return p.extend(ring)

    succ = {}
    for j in range(h):
        for x in model.states + model.controls:
            succ[deriv_symbol(x, j)] = deriv_symbol(x, j + 1)

    def lie(p: MultiPoly) -> MultiPoly:
        acc = MultiPoly.zero(ring)
        for v, vnext in succ.items():
            dp = p.partial_derivative(v)
            if not dp.is_zero():
                acc = acc + dp * MultiPoly.variable(vnext, ring)
        return acc

    gjs = [lift(model.output)]
    for _ in range(h):
        gjs.append(lie(gjs[-1]))
    outputs = [
        MultiPoly.variable(ysyms[j], ring) - gjs[j] for j in range(h + 1)
    ]
    dynamics = []
    fj = [lift(f) for f in model.dynamics]
    for j in range(h):
        for i, x in enumerate(model.states):
            lhs = MultiPoly.variable(deriv_symbol(x, j + 1), ring)
            dynamics.append(lhs - fj[i])
        fj = [lie(f) for f in fj]
    unknowns = tuple(model.params) + state_syms
    return Prolongation(
        tuple(outputs + dynamics), tuple(gjs), ysyms, unknowns, ring, h
    )


def prolong_ode(model: OdeModel, h: int) -> list[MultiPoly]:
    """The prolonged polynomial system: output equations y^(j) - g^(j)
    (y^(j) left as symbols) followed by the formal dynamics
    x^(j+1) - (d/dt)^j f."""
    return list(_prolong(model, h).equations)


def interpolate_data(data: Sequence[tuple], var: str = "t") -> UniPoly:
    """Newton divided-difference interpolation through all points, exact."""
    xs = [Rational(a) if isinstance(a, int) else a for a, _ in data]
    ys = [Rational(b) if isinstance(b, int) else b for _, b in data]
    if len(set(xs)) != len(xs):
        raise PolycertError("repeated abscissae in the data")
    coefs = list(ys)
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coefs[i] = (coefs[i] - coefs[i - 1]) / (xs[i] - xs[i - j])
    poly = UniPoly.zero(var)
    basis = UniPoly.constant(1, var)
    for i in range(n):
        poly = poly + basis * coefs[i]
        basis = basis * UniPoly([-xs[i], ONE], var)
    return poly


@dataclass(frozen=True)
class Candidate:
    """One real solution of the identification system."""

    unknowns: tuple[str, ...]
    point: tuple[Rational, ...]  # box midpoints, exact rationals
    box: SolutionBox
    residual: Rational

    def value(self, name: str):
        return self.point[self.unknowns.index(name)]


def identify_parameters(
    model: OdeModel,
    data: Sequence[tuple],
    h: int,
    t0,
    output_precision: int = 30,
    prefer_nonnegative: bool = False,
) -> list[Candidate]:
    """All real candidates for (parameters, initial state), ranked by the
    sum of squared residuals of the truncated output Taylor model against
    the data (ties broken toward nonnegative candidates when asked, then
    lexicographically).  Each candidate carries its certified box."""
    if len(data) < h + 1:
        raise PolycertError(f"need at least {h + 1} data points for h = {h}")
    t0 = Rational(t0) if isinstance(t0, int) else t0
    pro = _prolong(model, h)
    yhat = interpolate_data(data)
    subs: dict[str, Rational] = {}
    deriv = yhat
    for j in range(h + 1):
        subs[deriv_symbol("y", j)] = deriv(t0)
        deriv = deriv.derivative()
    if model.controls:
        if not model.control_inputs:
            raise PolycertError("model has controls but no control_inputs")
        for u in model.controls:
            up = model.control_inputs[u]
            for j in range(h + 1):
                subs[deriv_symbol(u, j)] = up(t0)
                up = up.derivative()
    unknowns = pro.unknowns
    system = [eq.specialize(subs).reorder(unknowns) for eq in pro.equations]
    if len(system) < len(unknowns):
        raise UnsupportedInput("prolonged system is underdetermined; raise h")
    square = system[: len(unknowns)]
    gb = buchberger(square)
    if gb.is_trivial():
        return []
    if not is_zero_dimensional(gb):
        raise NotZeroDimensional("square identification subsystem is not zero-dimensional")
    rur = solve_rur(gb)
    boxes = isolate_system(rur, output_precision)
    gj_specs = [g.specialize(subs).reorder(unknowns) for g in pro.output_rhs]
    candidates = []
    for box in boxes:
        mid = box.midpoint()
        assign = dict(zip(unknowns, mid))
        taylor = [g.eval(assign) for g in gj_specs]
        resid = ZERO
        fact = [ONE]
        for j in range(1, h + 1):
            fact.append(fact[-1] * j)
        for t, y in data:
            t = Rational(t) if isinstance(t, int) else t
            y = Rational(y) if isinstance(y, int) else y
            pred = ZERO
            for j, val in enumerate(taylor):
                pred = pred + val * (t - t0) ** j / fact[j]
            resid = resid + (y - pred) ** 2
        candidates.append(Candidate(unknowns, tuple(mid), box, resid))

    def key(c: Candidate):
        negs = sum(1 for v in c.point if v < 0) if prefer_nonnegative else 0
        return (negs, c.residual, c.point)

    candidates.sort(key=key)
    return candidates
