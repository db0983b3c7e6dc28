# cython: language_level=3
"""Compiled twin of ``_kernels_py``: dense integer kernels for root
isolation and refinement.  Semantics must match the pure module exactly;
the equivalence is enforced by tests/test_kernels.py.

Coefficients are arbitrary-precision Python ints, so the win over pure
Python comes from removing interpreter dispatch in the O(n^2) loops, not
from machine arithmetic.
"""

IMPLEMENTATION = "cython"


def sign_variations(list coeffs):
    cdef Py_ssize_t i, n = len(coeffs)
    cdef int count = 0, prev = 0, s
    cdef object c
    for i in range(n):
        c = coeffs[i]
        if c > 0:
            s = 1
        elif c < 0:
            s = -1
        else:
            continue
        if prev != 0 and s != prev:
            count += 1
        prev = s
    return count


def taylor_shift1(coeffs):
    cdef list out = list(coeffs)
    cdef Py_ssize_t i, j, n = len(out)
    for i in range(1, n):
        for j in range(n - 2, i - 2, -1):
            out[j] = out[j] + out[j + 1]
    return out


def scale_pow2(coeffs, k):
    cdef list src = list(coeffs)
    cdef list out = []
    cdef Py_ssize_t i, n = len(src)
    cdef long kk = k
    if kk >= 0:
        for i in range(n):
            out.append(src[i] << (i * kk))
    else:
        for i in range(n):
            out.append(src[i] >> (i * (-kk)))
    return out


def half_scale(coeffs):
    cdef list src = list(coeffs)
    cdef list out = []
    cdef Py_ssize_t i, n = len(src)
    for i in range(n):
        out.append(src[i] << (n - 1 - i))
    return out


def descartes_bound_01(coeffs):
    cdef list rev = list(coeffs)
    rev.reverse()
    return sign_variations(taylor_shift1(rev))


def eval_rat_scaled(coeffs, num, den):
    cdef list src = list(coeffs)
    cdef Py_ssize_t i, n = len(src)
    if n == 0:
        return 0
    cdef object acc = src[n - 1]
    cdef object dpow = 1
    for i in range(n - 2, -1, -1):
        dpow = dpow * den
        acc = acc * num + src[i] * dpow
    return acc


def eval_int(coeffs, x):
    cdef list src = list(coeffs)
    cdef Py_ssize_t i, n = len(src)
    cdef object acc = 0
    for i in range(n - 1, -1, -1):
        acc = acc * x + src[i]
    return acc
