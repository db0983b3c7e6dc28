import random
from fractions import Fraction

import pytest

import oracles
from polycert.errors import PolycertError
from polycert.multipoly import (
    MultiPoly,
    discriminant,
    mp_gcd,
    mp_squarefree_part,
    resultant,
    specialize,
    sturm_habicht_sequence,
    subresultant_sequence,
    tarski_query,
    to_unipoly,
)
from polycert.parsing import parse_multipoly
from polycert.rationals import Rational
from polycert.unipoly import UniPoly, count_real_roots


def P(text, vars_):
    return parse_multipoly(text, vars_)


def frac_coeffs(u: UniPoly):
    return [Fraction(int(c.numerator), int(c.denominator)) for c in u.coeffs]


class TestBasics:
    def test_specialize(self):
        p = P("X^2 + u", ("X", "u"))
        assert p.specialize({"u": Rational(-2)}) == P("X^2 - 2", ("X",))

    def test_eval(self):
        p = P("X*Y - 3", ("X", "Y"))
        assert p.eval({"X": Rational(2), "Y": Rational(5)}) == Rational(7)

    def test_partial_derivative(self):
        p = P("X^2*u + X", ("X", "u"))
        assert p.partial_derivative("X") == P("2*X*u + 1", ("X", "u"))

    def test_round_trip_print_parse(self):
        texts = ["u2*z1*z2 - u1*z2 - u2*z1 + z1*z2 - z1 + 1", "x^2 - 2", "3/4*a*b^2 - a + 1"]
        for t, vs in zip(texts, (("z1", "z2", "u1", "u2"), ("x",), ("a", "b"))):
            p = P(t, vs)
            assert P(str(p), vs) == p


class TestGcdSquarefree:
    def test_gcd(self):
        f = P("(X^2 - 1)*u", ("X", "u"))
        g = P("X - 1", ("X", "u"))
        assert mp_gcd(f, g) == P("X - 1", ("X", "u"))

    def test_squarefree_part(self):
        p = P("(X - u)^2*(X + 1)", ("X", "u"))
        assert mp_squarefree_part(p) == P("(X - u)*(X + 1)", ("X", "u"))


class TestSubresultants:
    def test_sres0_parametric(self):
        seq = subresultant_sequence(P("X^2 + u", ("X", "u")), P("2*X", ("X", "u")), "X")
        assert seq.sres0 == P("4*u", ("X", "u"))

    def test_zero_resultant_on_common_root(self):
        seq = subresultant_sequence(P("X^2 - 1", ("X",)), P("X - 1", ("X",)), "X")
        assert seq.sres0.is_zero()

    def test_linear_pair(self):
        r = resultant(P("X - a", ("X", "a", "b")), P("X - b", ("X", "a", "b")), "X")
        assert r == P("a - b", ("X", "a", "b")) or r == P("b - a", ("X", "a", "b"))

    def test_resultant_matches_sylvester_oracle(self):
        rng = random.Random(11)
        for _ in range(30):
            d1, d2 = rng.randrange(1, 5), rng.randrange(1, 5)
            f = [rng.randrange(-6, 7) for _ in range(d1)] + [rng.randrange(1, 7)]
            g = [rng.randrange(-6, 7) for _ in range(d2)] + [rng.randrange(1, 7)]
            pf = UniPoly(f)
            pg = UniPoly(g)
            mine = resultant(
                MultiPoly.from_unipoly(pf), MultiPoly.from_unipoly(pg), "x"
            )
            expect = oracles.sylvester_resultant(
                [Fraction(c) for c in f], [Fraction(c) for c in g]
            )
            got = mine.constant_value()
            assert Fraction(int(got.numerator), int(got.denominator)) == expect

    def test_specialization_property(self):
        """Acceptance: 50 random parametric pairs x 10 rational parameter
        points: the specialized subresultant chain agrees entry-by-entry
        (up to nonzero scalars) with the Euclidean remainder sequence."""
        rng = random.Random(2718)
        done = 0
        while done < 50:
            d1 = rng.randrange(2, 5)
            d2 = rng.randrange(1, d1)
            vars_ = ("X", "u")

            def rand_coeff():
                return P(
                    f"{rng.randrange(-4, 5)} + {rng.randrange(-3, 4)}*u", vars_
                )

            f = MultiPoly.from_coeffs_in(
                [rand_coeff() for _ in range(d1)]
                + [P(str(rng.randrange(1, 5)), vars_)],
                "X",
                vars_,
            )
            g = MultiPoly.from_coeffs_in(
                [rand_coeff() for _ in range(d2)]
                + [P(str(rng.randrange(1, 5)), vars_)],
                "X",
                vars_,
            )
            seq = subresultant_sequence(f, g, "X")
            done += 1
            for _ in range(10):
                a = Rational(rng.randrange(-8, 9), rng.randrange(1, 4))
                fs = frac_coeffs(to_unipoly(f.specialize({"u": a}), "X"))
                gs = frac_coeffs(to_unipoly(g.specialize({"u": a}), "X"))
                rem_seq = oracles.remainder_sequence(fs, gs)
                spec_entries = []
                for j in range(seq.top_index, -1, -1):
                    e = seq.entry(j).specialize({"u": a})
                    u = to_unipoly(e, "X") if not e.is_zero() else UniPoly.zero("X")
                    spec_entries.append(frac_coeffs(u))
                # every nonzero remainder beyond the inputs appears (up to
                # scalar) among the specialized chain entries
                for r in rem_seq[2:]:
                    assert any(
                        oracles.proportional(r, e) for e in spec_entries if e
                    ), (str(f), str(g), a)

    def test_lowest_nonzero_entry_proportional_to_gcd(self):
        f = P("(X - u)*(X - 1)", ("X", "u"))
        g = P("(X - u)*(X + 1)", ("X", "u"))
        seq = subresultant_sequence(f, g, "X")
        a = Rational(3)
        # at u = 3 the gcd is X - 3
        for j in range(seq.top_index + 1):
            e = seq.entry(j).specialize({"u": a})
            if not e.is_zero():
                u = to_unipoly(e, "X")
                assert u.degree == 1
                assert u(Rational(3)) == 0
                break

    def test_error_when_var_unused(self):
        with pytest.raises(PolycertError):
            subresultant_sequence(P("u", ("X", "u")), P("u + 1", ("X", "u")), "X")

    def test_resultant_vanishes_iff_common_root(self):
        """res(f, g)(a) = 0 exactly when the specialized pair has a
        nonconstant gcd, on random small instances."""
        rng = random.Random(314)
        from polycert.unipoly import poly_gcd

        for _ in range(25):
            vars_ = ("X", "u")
            # f carries the factor (X - u), g carries (X - 2u): common root
            # exactly at u = 0 plus whatever the random tails add
            f = P("(X - u)", vars_) * P(f"X - {rng.randrange(1, 5)}", vars_)
            g = P("(X - 2*u)", vars_) * P(f"X + {rng.randrange(1, 5)}", vars_)
            res = resultant(f, g, "X")
            for a in (Rational(0), Rational(1), Rational(rng.randrange(2, 7))):
                fs = to_unipoly(f.specialize({"u": a}), "X")
                gs = to_unipoly(g.specialize({"u": a}), "X")
                has_common = poly_gcd(fs, gs).degree > 0
                vanishes = res.specialize({"u": a}).constant_value() == 0
                assert has_common == vanishes, (str(f), str(g), a)


class TestDiscriminant:
    def test_spec_example(self):
        assert discriminant(P("X^2 + u", ("X", "u")), "X") == P("-4*u", ("X", "u"))

    def test_quadratic_formula(self):
        d = discriminant(P("a*X^2 + b*X + c", ("X", "a", "b", "c")), "X")
        assert d == P("b^2 - 4*a*c", ("X", "a", "b", "c"))

    def test_vanishes_iff_multiple_root(self):
        p = P("(X - 2)^2", ("X",))
        assert discriminant(p, "X").is_zero()


class TestSturmHabicht:
    def test_counts_match_unipoly(self):
        rng = random.Random(6)
        for _ in range(60):
            deg = rng.randrange(1, 7)
            coeffs = [rng.randrange(-8, 9) for _ in range(deg)] + [rng.randrange(1, 9)]
            u = UniPoly(coeffs)
            seq = sturm_habicht_sequence(
                MultiPoly.from_unipoly(u), MultiPoly.constant(1, (u.var,)), "x"
            )
            assert tarski_query(seq, {}) == count_real_roots(u), str(u)

    def test_parametric_specialization(self):
        seq = sturm_habicht_sequence(
            P("X^2 + u", ("X", "u")), MultiPoly.constant(1, ("X", "u")), "X"
        )
        assert tarski_query(seq, {"u": Rational(1)}) == 0
        assert tarski_query(seq, {"u": Rational(-1)}) == 2
        assert tarski_query(seq, {"u": Rational(0)}) == 1

    def test_query_with_sign_weight(self):
        seq = sturm_habicht_sequence(P("X^2 - 1", ("X",)), P("X", ("X",)), "X")
        assert tarski_query(seq, {}) == 0
        seq2 = sturm_habicht_sequence(P("X^3 - 3*X", ("X",)), MultiPoly.constant(1, ("X",)), "X")
        assert tarski_query(seq2, {}) == 3
        # P2 = X weights roots by sign: roots of X^2-4 are +-2
        seq3 = sturm_habicht_sequence(P("X^2 - 4", ("X",)), P("X + 3", ("X",)), "X")
        assert tarski_query(seq3, {}) == 2  # both roots have X+3 > 0

    def test_degenerate_specialization_recomputes(self):
        # leading coefficient vanishes at u = 0
        seq = sturm_habicht_sequence(
            P("u*X^2 - 1 + X", ("X", "u")), MultiPoly.constant(1, ("X", "u")), "X"
        )
        assert tarski_query(seq, {"u": Rational(0)}) == 1  # X - 1
        assert tarski_query(seq, {"u": Rational(1)}) == count_real_roots(
            UniPoly([-1, 1, 1], "X")
        )

    def test_annihilating_specialization_is_error(self):
        seq = sturm_habicht_sequence(
            P("u*X^2 + u*X", ("X", "u")), MultiPoly.constant(1, ("X", "u")), "X"
        )
        with pytest.raises(PolycertError):
            tarski_query(seq, {"u": Rational(0)})

    def test_random_tarski_queries_vs_root_signs(self):
        rng = random.Random(77)
        for _ in range(40):
            # build P1 with known rational roots, P2 random
            roots = sorted({Rational(rng.randrange(-6, 7)) for _ in range(rng.randrange(1, 4))})
            p1u = UniPoly.from_roots(roots)
            p2u = UniPoly([rng.randrange(-5, 6) for _ in range(3)] + [rng.randrange(1, 6)])
            expected = 0
            for r in roots:
                v = p2u(r)
                expected += (v > 0) - (v < 0)
            seq = sturm_habicht_sequence(
                MultiPoly.from_unipoly(p1u), MultiPoly.from_unipoly(p2u), "x"
            )
            assert tarski_query(seq, {}) == expected, (str(p1u), str(p2u))
