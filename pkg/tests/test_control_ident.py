import pytest

from polycert.control.odes import (
    OdeModel,
    identify_parameters,
    interpolate_data,
    prolong_ode,
)
from polycert.errors import PolycertError
from polycert.multipoly import MultiPoly
from polycert.parsing import parse_multipoly
from polycert.rationals import Rational, rational_from_decimal as rd
from polycert.unipoly import UniPoly


def toy_model() -> OdeModel:
    ring = ("x", "mu")
    return OdeModel(
        states=("x",),
        params=("mu",),
        dynamics=(parse_multipoly("mu^2*x", ring),),
        output=parse_multipoly("x^2 + x", ring),
    )


class TestProlongation:
    def test_toy_displayed_system(self):
        eqs = prolong_ode(toy_model(), 2)
        ring = eqs[0].vars
        want = [
            parse_multipoly("y - x^2 - x", ring),
            parse_multipoly("d1_y - 2*x*d1_x - d1_x", ring),
            parse_multipoly("d2_y - 2*d1_x^2 - 2*x*d2_x - d2_x", ring),
            parse_multipoly("d1_x - mu^2*x", ring),
            parse_multipoly("d2_x - mu^2*d1_x", ring),
        ]
        assert list(eqs) == want

    def test_h_zero(self):
        eqs = prolong_ode(toy_model(), 0)
        assert len(eqs) == 1
        assert str(eqs[0]) in ("-x^2 + y - x", "y - x^2 - x")

    def test_linear_chain(self):
        ring = ("x",)
        model = OdeModel(
            states=("x",),
            params=(),
            dynamics=(parse_multipoly("x", ring),),
            output=parse_multipoly("x", ring),
        )
        eqs = prolong_ode(model, 1)
        r = eqs[0].vars
        assert eqs[0] == parse_multipoly("y - x", r)
        assert eqs[1] == parse_multipoly("d1_y - d1_x", r)
        assert eqs[2] == parse_multipoly("d1_x - x", r)

    def test_prefix_stability(self):
        """Output equations for h and h+1 agree on the shared prefix."""
        e2 = prolong_ode(toy_model(), 2)
        e3 = prolong_ode(toy_model(), 3)
        ring3 = e3[0].vars
        for j in range(3):
            assert e2[j].extend(ring3) == e3[j]

    def test_budget(self):
        from polycert.errors import UnsupportedInput

        with pytest.raises(UnsupportedInput):
            prolong_ode(toy_model(), 60)


class TestInterpolation:
    def test_exact_polynomial_recovery(self):
        p = UniPoly([Rational(2), Rational(-1), Rational(3, 4)], "t")
        data = [(Rational(t), p(Rational(t))) for t in (0, 1, 2)]
        assert interpolate_data(data) == p

    def test_repeated_abscissae_error(self):
        with pytest.raises(PolycertError):
            interpolate_data([(Rational(1), Rational(2)), (Rational(1), Rational(3))])


def _taylor_data(values, times, t0=Rational(0)):
    """Data sampled from the polynomial with given derivatives at t0."""
    out = []
    fact = 1
    coeffs = []
    for j, v in enumerate(values):
        if j:
            fact *= j
        coeffs.append(v / fact)
    for t in times:
        t = Rational(t) if isinstance(t, int) else t
        acc = Rational(0)
        for j, c in enumerate(coeffs):
            acc += c * (t - t0) ** j
        out.append((t, acc))
    return out


TIMES = (0, Rational(1, 3), Rational(2, 3), 1)


class TestIdentify:
    def test_paper_substituted_values_give_four_solutions(self):
        data = _taylor_data([rd("1.000"), rd("0.608"), rd("0.227")], TIMES)
        cands = identify_parameters(toy_model(), data, 2, 0)
        assert len(cands) == 4
        mus = sorted(float(c.value("mu")) for c in cands)
        x0s = sorted({round(float(c.value("x")), 6) for c in cands})
        # the golden-ratio pair forced by x^2 + x = 1
        assert x0s == [round(-1.618034, 6), round(0.618034, 6)]
        assert mus[0] == -mus[3] and mus[1] == -mus[2]

    def test_consistent_values_reproduce_paper_solutions(self):
        """With y(t0) = 2.000 and y'(t0) = 1.094 (the values consistent
        with the published solution list) the four candidates match
        (+-0.604, 1.000), (+-0.427, -2.000) to three decimals."""
        data = _taylor_data([rd("2.000"), rd("1.094"), rd("0.227")], TIMES)
        cands = identify_parameters(toy_model(), data, 2, 0)
        assert len(cands) == 4
        got = sorted((round(float(c.value("mu")), 3), round(float(c.value("x")), 3)) for c in cands)
        assert got == [(-0.604, 1.0), (-0.427, -2.0), (0.427, -2.0), (0.604, 1.0)]

    def test_nonnegative_preference(self):
        data = _taylor_data([rd("2.000"), rd("1.094"), rd("0.227")], TIMES)
        cands = identify_parameters(toy_model(), data, 2, 0, prefer_nonnegative=True)
        top = cands[0]
        assert round(float(top.value("mu")), 3) == 0.604
        assert round(float(top.value("x")), 3) == 1.0

    def test_planted_exact_recovery(self):
        """Exact data from a planted rational solution is recovered to box
        precision and ranked first (zero residual)."""
        ring = ("x", "mu")
        model = OdeModel(
            states=("x",),
            params=("mu",),
            dynamics=(parse_multipoly("mu*x", ring),),
            output=parse_multipoly("x^2 + x", ring),
        )
        mu0, x0 = Rational(3, 5), Rational(2)
        # derivatives of y = x^2 + x along x' = mu x at t0:
        # y' = (2x + 1) mu x,  y'' = 2 mu^2 x^2 + (2x + 1) mu^2 x
        y0 = x0 * x0 + x0
        y1 = (2 * x0 + 1) * mu0 * x0
        y2 = 2 * mu0**2 * x0**2 + (2 * x0 + 1) * mu0**2 * x0
        data = _taylor_data([y0, y1, y2], TIMES)
        cands = identify_parameters(model, data, 2, 0, output_precision=40)
        assert cands
        hits = [
            c
            for c in cands
            if c.box.coords[c.unknowns.index("mu")].contains_rational(mu0)
            and c.box.coords[c.unknowns.index("x")].contains_rational(x0)
        ]
        assert len(hits) == 1
        assert hits[0].box.max_width() <= Rational(1, 2**40)

    def test_no_real_solutions_is_empty(self):
        ring = ("x", "mu")
        model = OdeModel(
            states=("x",),
            params=("mu",),
            dynamics=(parse_multipoly("mu*x", ring),),
            output=parse_multipoly("x^2", ring),
        )
        # y(t0) < 0 forces x0^2 < 0: no real candidates
        data = _taylor_data([Rational(-1), Rational(0), Rational(0)], TIMES)
        assert identify_parameters(model, data, 2, 0) == []

    def test_not_enough_data(self):
        with pytest.raises(PolycertError):
            identify_parameters(toy_model(), [(Rational(0), Rational(2))], 2, 0)

    def test_residual_boxes_certified(self):
        data = _taylor_data([rd("2.000"), rd("1.094"), rd("0.227")], TIMES)
        for c in identify_parameters(toy_model(), data, 2, 0):
            assert c.box.certified

    def test_candidates_satisfy_substituted_system(self):
        """Interval residuals of the substituted square subsystem contain
        zero over every candidate box."""
        from polycert.control.odes import _prolong, deriv_symbol, interpolate_data
        from polycert.zdsolve import residual_contains_zero

        model = toy_model()
        data = _taylor_data([rd("2.000"), rd("1.094"), rd("0.227")], TIMES)
        pro = _prolong(model, 2)
        yhat = interpolate_data(data)
        subs = {}
        deriv = yhat
        for j in range(3):
            subs[deriv_symbol("y", j)] = deriv(Rational(0))
            deriv = deriv.derivative()
        system = [eq.specialize(subs).reorder(pro.unknowns) for eq in pro.equations]
        square = system[: len(pro.unknowns)]
        for c in identify_parameters(model, data, 2, 0, output_precision=40):
            assert residual_contains_zero(square, c.box, 100)
