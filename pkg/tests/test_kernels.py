"""Equivalence of the compiled and pure kernels, plus basic contracts."""

import random

from hypothesis import given, settings, strategies as st

from polycert import _kernels_py as pure
from polycert import kernels

try:
    from polycert import _kernels as compiled
except ImportError:
    compiled = None

impls = [pure] + ([compiled] if compiled is not None else [])

coeff_lists = st.lists(st.integers(-(10**12), 10**12), min_size=1, max_size=24)


def test_selected_implementation_reported():
    assert kernels.IMPLEMENTATION in ("python", "cython")


@given(coeff_lists)
def test_twins_agree_shift(cs):
    results = {tuple(impl.taylor_shift1(cs)) for impl in impls}
    assert len(results) == 1


@given(coeff_lists)
def test_twins_agree_variations_and_descartes(cs):
    assert len({impl.sign_variations(cs) for impl in impls}) == 1
    assert len({impl.descartes_bound_01(cs) for impl in impls}) == 1


@given(coeff_lists, st.integers(0, 8))
def test_twins_agree_scale(cs, k):
    assert len({tuple(impl.scale_pow2(cs, k)) for impl in impls}) == 1
    assert len({tuple(impl.half_scale(cs)) for impl in impls}) == 1


@given(coeff_lists, st.integers(-50, 50), st.integers(1, 50))
def test_twins_agree_eval(cs, num, den):
    assert len({impl.eval_rat_scaled(cs, num, den) for impl in impls}) == 1
    assert len({impl.eval_int(cs, num) for impl in impls}) == 1


@given(coeff_lists)
def test_taylor_shift_is_shift(cs):
    shifted = pure.taylor_shift1(cs)
    x = 7
    assert pure.eval_int(shifted, x) == pure.eval_int(cs, x + 1)


@given(coeff_lists, st.integers(1, 6))
def test_scale_pow2_semantics(cs, k):
    scaled = pure.scale_pow2(cs, k)
    x = 3
    assert pure.eval_int(scaled, x) == pure.eval_int(cs, (1 << k) * x)


@given(coeff_lists)
def test_half_scale_semantics(cs):
    n = len(cs) - 1
    doubled = pure.half_scale(cs)
    # 2^n p(x/2) at even x
    x = 6
    assert pure.eval_int(doubled, x) == pure.eval_int(cs, x // 2) * (1 << n) if x % 2 == 0 else True


@given(coeff_lists, st.integers(-40, 40), st.integers(1, 40))
def test_eval_rat_scaled_sign(cs, num, den):
    from fractions import Fraction

    v = pure.eval_rat_scaled(cs, num, den)
    exact = sum(Fraction(c) * Fraction(num, den) ** i for i, c in enumerate(cs))
    assert (v > 0) == (exact > 0) and (v < 0) == (exact < 0)
