"""Pure-Python reference implementation of the dense integer kernels.

These functions are the hot inner loops of real-root isolation and
refinement: Taylor shifts, dyadic scalings, sign-variation counts and
homogeneous Horner evaluation on dense coefficient lists (ascending degree,
arbitrary-precision integers).  A Cython twin with identical semantics lives
in ``_kernels.pyx``; :mod:`polycert.kernels` selects one at import time.

All inputs are plain lists of Python ints and are never mutated.
"""

IMPLEMENTATION = "python"


def sign_variations(coeffs):
    """Number of sign changes in the sequence, zeros skipped."""
    count = 0
    prev = 0
    for c in coeffs:
        if c > 0:
            if prev < 0:
                count += 1
            prev = 1
        elif c < 0:
            if prev > 0:
                count += 1
            prev = -1
    return count


def taylor_shift1(coeffs):
    """Coefficients of p(x + 1).

    Classic Pascal-triangle accumulation, O(n^2) big-int additions.
    """
    out = list(coeffs)
    n = len(out)
    for i in range(1, n):
        for j in range(n - 2, i - 2, -1):
            out[j] += out[j + 1]
    return out


def scale_pow2(coeffs, k):
    """Coefficients of p(2**k * x); k may be negative if every shifted
    coefficient stays integral (caller's responsibility)."""
    if k >= 0:
        return [c << (i * k) for i, c in enumerate(coeffs)]
    return [c >> (i * (-k)) for i, c in enumerate(coeffs)]


def half_scale(coeffs):
    """Coefficients of 2**n * p(x / 2) for n = deg p (kept integral)."""
    n = len(coeffs) - 1
    return [c << (n - i) for i, c in enumerate(coeffs)]


def descartes_bound_01(coeffs):
    """Descartes bound for the number of roots of p in the open interval
    (0, 1): sign variations of (x+1)^n * p(1/(x+1))."""
    return sign_variations(taylor_shift1(list(reversed(coeffs))))


def eval_rat_scaled(coeffs, num, den):
    """p(num/den) * den**deg(p), an exact integer (den > 0).

    The sign of the result equals the sign of p(num/den).
    """
    n = len(coeffs)
    if n == 0:
        return 0
    acc = coeffs[-1]
    dpow = 1
    for i in range(n - 2, -1, -1):
        dpow *= den
        acc = acc * num + coeffs[i] * dpow
    return acc


def eval_int(coeffs, x):
    """p(x) for integer x, by Horner."""
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc
