"""Subresultant polynomial remainder sequences over an abstract ring.

Polynomials are dense coefficient lists (ascending degree) over a
commutative ring supplied as a small protocol object; the two rings used in
the package are the integers (univariate layer) and multivariate
polynomials over Q (parametric layer).

``subresultant_chain`` computes the *defined* subresultants S_d..S_0 by the
pseudo-remainder algorithm of Ducos (J. Pure Appl. Algebra 145, 2000),
which produces them with textbook scalars: S_0 is the resultant including
its sign.  Fraction-field Euclid is never used; all divisions are exact in
the ring.  The chain, with the classical sign modifications applied on top,
yields Sturm-Habicht sequences; sign counts at +/-infinity go through the
generalized permanences-minus-variations rule, which tolerates zero gaps.
"""

from __future__ import annotations


class Ring:
    """Operations a coefficient ring must provide (all exact)."""

    def __init__(self, zero, one, add, sub, mul, neg, exact_div, is_zero, from_int):
        self.zero = zero
        self.one = one
        self.add = add
        self.sub = sub
        self.mul = mul
        self.neg = neg
        self.exact_div = exact_div
        self.is_zero = is_zero
        self.from_int = from_int


def _int_exact_div(a, b):
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError(f"inexact integer division {a} / {b}")
    return q


INT_RING = Ring(
    zero=0,
    one=1,
    add=lambda a, b: a + b,
    sub=lambda a, b: a - b,
    mul=lambda a, b: a * b,
    neg=lambda a: -a,
    exact_div=_int_exact_div,
    is_zero=lambda a: a == 0,
    from_int=lambda n: n,
)


def deg(p: list) -> int:
    """Degree; -1 for the zero polynomial."""
    return len(p) - 1


def strip(ring: Ring, p: list) -> list:
    while p and ring.is_zero(p[-1]):
        p.pop()
    return p


def neg_poly(ring: Ring, p: list) -> list:
    return [ring.neg(c) for c in p]


def scale_poly(ring: Ring, p: list, c) -> list:
    return [ring.mul(c, x) for x in p]


def exact_div_poly(ring: Ring, p: list, c) -> list:
    return [ring.exact_div(x, c) for x in p]


def poly_mul(ring: Ring, a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [ring.zero] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ring.is_zero(ca):
            continue
        for j, cb in enumerate(b):
            out[i + j] = ring.add(out[i + j], ring.mul(ca, cb))
    return strip(ring, out)


def derivative(ring: Ring, p: list) -> list:
    out = [ring.mul(p[i], ring.from_int(i)) for i in range(1, len(p))]
    return strip(ring, out)


def pseudo_rem(ring: Ring, a: list, b: list) -> list:
    """prem(a, b) = lc(b)^(deg a - deg b + 1) * a mod b, for deg a >= deg b.

    The multiplier power is the full deg a - deg b + 1 even when the degree
    drops early, matching the determinant definition of subresultants.
    """
    da, db = deg(a), deg(b)
    if db < 0:
        raise ZeroDivisionError("pseudo-remainder by zero polynomial")
    lb = b[-1]
    e = da - db + 1
    r = list(a)
    count = 0
    while True:
        strip(ring, r)
        dr = deg(r)
        if dr < db:
            break
        lead = r[-1]
        r = scale_poly(ring, r, lb)
        off = dr - db
        for i in range(db + 1):
            r[off + i] = ring.sub(r[off + i], ring.mul(lead, b[i]))
        r.pop()
        count += 1
    for _ in range(e - count):
        r = scale_poly(ring, r, lb)
    return strip(ring, r)


def pseudo_rem_even(ring: Ring, a: list, b: list) -> list:
    """lc(b)^e * a mod b with e = deg a - deg b + 1 rounded up to even.

    The even multiplier keeps signs stable under any real specialization of
    parametric coefficients (lc^even > 0 wherever lc != 0).
    """
    da, db = deg(a), deg(b)
    r = pseudo_rem(ring, a, b)
    if (da - db + 1) % 2 == 1:
        r = scale_poly(ring, r, b[-1])
    return r


def subresultant_chain(ring: Ring, p: list, q: list) -> dict[int, list]:
    """Defined subresultants of (p, q) with deg p > deg q >= 0.

    Returns {j: S_j} for the nonzero entries among j = deg q .. 0 (absent
    indices are zero polynomials).  S_0 is the resultant of p and q with
    the textbook sign.
    """
    dp, dq = deg(p), deg(q)
    if dp <= dq:
        raise ValueError("subresultant_chain requires deg p > deg q")
    if dq < 0:
        return {}
    chain: dict[int, list] = {}
    if dq == 0:
        s0 = ring.one
        for _ in range(dp):
            s0 = ring.mul(s0, q[0])
        chain[0] = [s0]
        return chain
    lq = q[-1]
    c = ring.one
    for _ in range(dp - dq - 1):
        c = ring.mul(c, lq)
    chain[dq] = scale_poly(ring, q, c)

    s = ring.one
    for _ in range(dp - dq):
        s = ring.mul(s, lq)
    a = list(q)
    b = pseudo_rem(ring, p, neg_poly(ring, q))
    while True:
        d, e = deg(a), deg(b)
        if e < 0:
            break
        chain[d - 1] = list(b)
        delta = d - e
        if delta > 1:
            # Lazard normalization of the next regular subresultant S_e
            lb = b[-1]
            num = list(b)
            for _ in range(delta - 1):
                num = scale_poly(ring, num, lb)
            den = ring.one
            for _ in range(delta - 1):
                den = ring.mul(den, s)
            cpoly = exact_div_poly(ring, num, den)
            chain[e] = cpoly
        else:
            cpoly = list(b)
        if e == 0:
            break
        nxt = pseudo_rem(ring, a, neg_poly(ring, b))
        den = a[-1]
        for _ in range(delta):
            den = ring.mul(den, s)
        b = exact_div_poly(ring, nxt, den)
        a = cpoly
        s = a[-1]
    return chain


def sturm_habicht_chain(ring: Ring, p: list, q: list) -> dict[int, list]:
    """Sturm-Habicht sequence of (p, q): indices deg p .. 0.

    Entry deg p is p; entry deg p - 1 is the (even-power pseudo) remainder
    w of p'q by p; below that the defined subresultants of (p, w) carry the
    classical sign modification (-1)^((p-j)(p-j-1)/2).
    """
    dp = deg(p)
    if dp < 1:
        raise ValueError("main polynomial must have positive degree")
    w = poly_mul(ring, derivative(ring, p), q)
    if deg(w) >= dp:
        w = pseudo_rem_even(ring, w, p)
    chain: dict[int, list] = {dp: list(p), dp - 1: list(w)}
    if deg(w) >= 0 and dp >= 2:
        for j, s in subresultant_chain(ring, p, w).items():
            if j >= dp - 1:
                continue
            eps = (dp - j) * (dp - j - 1) // 2
            chain[j] = neg_poly(ring, s) if eps % 2 else s
    return chain


def principal_coefficients(chain: dict[int, list], top: int) -> list:
    """Coefficient of x^j in entry j, for j = top .. 0.

    Zero entries and defective entries (degree < index) both yield None.
    """
    out = []
    for j in range(top, -1, -1):
        entry = chain.get(j)
        if entry is None or len(entry) <= j:
            out.append(None)
        else:
            out.append(entry[j])
    return out


def pmv(signs: list[int]) -> int:
    """Generalized permanences minus variations.

    ``signs`` is ordered from the top index downward with the first element
    nonzero.  Consecutive nonzero entries a, b separated by an even number
    q of zeros contribute (-1)^(q/2) * sign(a*b); odd gaps contribute 0.
    """
    nz = [(i, s) for i, s in enumerate(signs) if s != 0]
    if not nz:
        return 0
    total = 0
    for (i, a), (j, b) in zip(nz, nz[1:]):
        gap = j - i - 1
        if gap % 2 == 0:
            term = 1 if a * b > 0 else -1
            if (gap // 2) % 2 == 1:
                term = -term
            total += term
    return total
