import random

import pytest

from polycert.errors import NonSeparatingForm, NotZeroDimensional
from polycert.groebner import buchberger, quotient_basis
from polycert.multipoly import MultiPoly
from polycert.parsing import parse_multipoly
from polycert.rationals import Rational
from polycert.unipoly import UniPoly, count_real_roots, squarefree_part
from polycert.zdsolve import (
    charpoly,
    compute_rur,
    interval_newton,
    isolate_system,
    iv_eval_multipoly,
    multiplication_matrices,
    residual_contains_zero,
    separating_element,
    solve_rur,
    solve_system,
)


def P(text, vars_):
    return parse_multipoly(text, vars_)


V2 = ("X", "Y")


class TestCharpoly:
    def test_small(self):
        m = [[Rational(2), Rational(0)], [Rational(0), Rational(3)]]
        cp = charpoly(m)
        assert cp == UniPoly([6, -5, 1], "T")

    def test_nilpotent(self):
        m = [[Rational(0), Rational(1)], [Rational(0), Rational(0)]]
        assert charpoly(m) == UniPoly([0, 0, 1], "T")


class TestSeparating:
    def test_x_works(self):
        gb = buchberger([P("X^2 - 1", V2), P("Y - X", V2)])
        sep = separating_element(gb)
        assert tuple(sep) == (Rational(1), Rational(0))

    def test_x_fails_on_square_grid(self):
        gb = buchberger([P("X^2 - 1", V2), P("Y^2 - 1", V2)])
        sep = separating_element(gb)
        # schedule: X fails (2 values), Y fails, X + 2Y succeeds
        assert tuple(sep) == (Rational(1), Rational(2))
        with pytest.raises(NonSeparatingForm):
            compute_rur(gb, (Rational(1), Rational(0)))

    def test_single_point_any_form(self):
        gb = buchberger([P("X - 1", V2), P("Y - 2", V2)])
        assert tuple(separating_element(gb)) == (Rational(1), Rational(0))


class TestRUR:
    def test_spec_example(self):
        gb = buchberger([P("X^2 - 1", V2), P("Y - X", V2)])
        rur = compute_rur(gb, (Rational(1), Rational(0)))
        assert rur.f_t == UniPoly([-1, 0, 1], "T")
        assert rur.denominator == UniPoly([0, 2], "T")
        assert rur.numerators[0] == UniPoly([2], "T")
        assert rur.numerators[1] == UniPoly([2], "T")

    def test_single_point(self):
        gb = buchberger([P("X - 1", V2), P("Y - 2", V2)])
        rur = solve_rur(gb)
        assert rur.f_t == UniPoly([-1, 1], "T")
        boxes = isolate_system(rur, 20)
        assert len(boxes) == 1
        assert boxes[0].coords[0].contains_rational(Rational(1))
        assert boxes[0].coords[1].contains_rational(Rational(2))

    def test_degree_equals_quotient_dimension(self):
        systems = [
            [P("X^2 - 1", V2), P("Y - X", V2)],
            [P("X^2 - 1", V2), P("Y^2 - 1", V2)],
            [P("X^2", V2), P("Y - 1", V2)],  # multiplicity 2
            [P("X^3 - 2*X", V2), P("Y^2 - X", V2)],
        ]
        for system in systems:
            gb = buchberger(system)
            rur = solve_rur(gb)
            assert rur.f_t.degree == len(quotient_basis(gb))

    def test_multiplicity_preserved(self):
        gb = buchberger([P("X^2", V2), P("Y - 1", V2)])
        rur = solve_rur(gb)
        assert rur.f_t.degree == 2
        assert rur.fbar_t.degree == 1
        boxes = isolate_system(rur, 20)
        assert len(boxes) == 1
        assert boxes[0].coords[0].contains_rational(Rational(0))


class TestIsolateSystem:
    def test_two_solutions(self):
        gb = buchberger([P("X^2 - 1", V2), P("Y - X", V2)])
        rur = solve_rur(gb)
        boxes = isolate_system(rur, 20)
        assert len(boxes) == 2
        for b in boxes:
            assert b.certified
            assert b.max_width() <= Rational(1, 2**20)
        assert boxes[0].coords[0].contains_rational(Rational(-1))
        assert boxes[1].coords[0].contains_rational(Rational(1))

    def test_no_real_roots(self):
        gb = buchberger([P("X^2 + 1", V2), P("Y - X", V2)])
        rur = solve_rur(gb)
        assert isolate_system(rur, 10) == []

    def test_planted_rational_solutions(self):
        """Systems built from products of linear forms recover exactly the
        planted real solutions."""
        rng = random.Random(88)
        for _ in range(8):
            xs = sorted({Rational(rng.randrange(-5, 6)) for _ in range(2)})
            ys = sorted({Rational(rng.randrange(-5, 6)) for _ in range(2)})
            fx = MultiPoly.constant(1, V2)
            for a in xs:
                fx = fx * (P("X", V2) - MultiPoly.constant(a, V2))
            fy = MultiPoly.constant(1, V2)
            for b in ys:
                fy = fy * (P("Y", V2) - MultiPoly.constant(b, V2))
            gb = buchberger([fx, fy])
            rur = solve_rur(gb)
            boxes = isolate_system(rur, 30)
            assert len(boxes) == len(xs) * len(ys)
            planted = {(a, b) for a in xs for b in ys}
            for box in boxes:
                hit = [
                    pt
                    for pt in planted
                    if box.coords[0].contains_rational(pt[0])
                    and box.coords[1].contains_rational(pt[1])
                ]
                assert len(hit) == 1
                planted.discard(hit[0])

    def test_residuals_contain_zero(self):
        """Acceptance: interval evaluation of every input polynomial over
        every returned box contains zero."""
        systems = [
            [P("X^2 - 1", V2), P("Y - X", V2)],
            [P("X^2 - 1", V2), P("Y^2 - 1", V2)],
            [P("X^2 + Y^2 - 4", V2), P("X*Y - 1", V2)],
            [P("X^3 - 2*X", V2), P("Y^2 - X", V2)],
        ]
        for system in systems:
            gb = buchberger(system)
            rur = solve_rur(gb)
            for box in isolate_system(rur, 30):
                assert residual_contains_zero(system, box, 80)

    def test_solve_system_wrapper(self):
        gb, rur, boxes = solve_system([P("X", V2), P("X + 1", V2)])
        assert gb.is_trivial() and rur is None and boxes == []
        with pytest.raises(NotZeroDimensional):
            solve_system([P("X*Y - 1", V2)])


class TestIntervalNewton:
    def test_sqrt2_certified_to_40_bits(self):
        box = interval_newton([P("X^2 - 2", ("X",))], [Rational(14, 10)], 40)
        assert box.certified
        assert box.max_width() <= Rational(1, 2**40)
        # contains the high-precision bisection limit
        from polycert.unipoly import isolate_real_roots, refine_root

        iv = [i for i in isolate_real_roots(UniPoly([-2, 0, 1], "X")) if i.lo > 0][0]
        tight = refine_root(iv, Rational(1, 2**60))
        assert box.coords[0].contains_rational((tight.lo + tight.hi) / 2)

    def test_linear_exact(self):
        box = interval_newton([P("X - 1", ("X",))], [Rational(1)], 30)
        assert box.certified
        assert box.coords[0].contains_rational(Rational(1))

    def test_2d_system(self):
        system = [P("X^2 + Y^2 - 4", V2), P("X*Y - 1", V2)]
        box = interval_newton(system, [Rational(19, 10), Rational(52, 100)], 35)
        assert box.certified
        assert box.max_width() <= Rational(1, 2**35)
        assert residual_contains_zero(system, box, 90)

    def test_contraction_failure_returns_uncertified(self):
        # x^2 = 0: derivative vanishes at the root; Krawczyk cannot certify
        box = interval_newton([P("X^2", ("X",))], [Rational(1, 100)], 20)
        assert not box.certified
