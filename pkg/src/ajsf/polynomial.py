"""Exact polynomial arithmetic over the integers.

Univariate polynomials in z are tuples of coefficients, lowest degree
first; bivariate polynomials in (x, z) are tuples of z-polynomials indexed
by the x-degree.  Everything stays in exact integer arithmetic.
"""

from __future__ import annotations

from fractions import Fraction

ZPoly = tuple[int, ...]
BiPoly = tuple[ZPoly, ...]

Z_ZERO: ZPoly = ()
Z_ONE: ZPoly = (1,)


def zp_trim(p) -> ZPoly:
    p = tuple(p)
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def zp_add(a: ZPoly, b: ZPoly) -> ZPoly:
    if len(a) < len(b):
        a, b = b, a
    return zp_trim(tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)))


def zp_neg(a: ZPoly) -> ZPoly:
    return tuple(-x for x in a)

def zp_sub(a: ZPoly, b: ZPoly) -> ZPoly:
    return zp_add(a, zp_neg(b))


def zp_mul(a: ZPoly, b: ZPoly) -> ZPoly:
    if not a or not b:
        return Z_ZERO
    res = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                res[i + j] += x * y
    return zp_trim(res)


def zp_scale(a: ZPoly, c: int) -> ZPoly:
    return zp_trim(tuple(c * x for x in a))


def zp_eval(a: ZPoly, z):
    acc = 0
    for c in reversed(a):
        acc = acc * z + c
    return acc


def zp_deriv(a: ZPoly, order: int = 1) -> ZPoly:
    for _ in range(order):
        a = tuple(i * c for i, c in enumerate(a))[1:]
    return zp_trim(a)


def zp_exact_div(a: ZPoly, k: int) -> ZPoly:
    if any(c % k for c in a):
        raise ArithmeticError(f"coefficients {a} not divisible by {k}")
    return tuple(c // k for c in a)


def bp_trim(p) -> BiPoly:
    p = tuple(zp_trim(c) for c in p)
    while p and not p[-1]:
        p = p[:-1]
    return p


def bp_add(a: BiPoly, b: BiPoly) -> BiPoly:
    if len(a) < len(b):
        a, b = b, a
    return bp_trim(tuple(zp_add(c, b[i] if i < len(b) else Z_ZERO)
                         for i, c in enumerate(a)))


def bp_neg(a: BiPoly) -> BiPoly:
    return tuple(zp_neg(c) for c in a)

def bp_sub(a: BiPoly, b: BiPoly) -> BiPoly:
    return bp_add(a, bp_neg(b))


def bp_mul(a: BiPoly, b: BiPoly) -> BiPoly:
    a, b = bp_trim(a), bp_trim(b)
    if not a or not b:
        return ()
    res = [Z_ZERO] * (len(a) + len(b) - 1)
    for i, p in enumerate(a):
        if p:
            for j, q in enumerate(b):
                res[i + j] = zp_add(res[i + j], zp_mul(p, q))
    return bp_trim(res)


def bp_pow(a: BiPoly, k: int) -> BiPoly:
    res: BiPoly = (Z_ONE,)
    for _ in range(k):
        res = bp_mul(res, a)
    return res


def bp_from_terms(terms) -> BiPoly:
    """Build from {(x_deg, z_deg): coeff}."""
    if not terms:
        return ()
    nx = max(i for i, _ in terms) + 1
    nz = max(j for _, j in terms) + 1
    grid = [[0] * nz for _ in range(nx)]
    for (i, j), c in terms.items():
        grid[i][j] += c
    return bp_trim(tuple(tuple(row) for row in grid))


def bp_eval(a: BiPoly, x, z):
    acc = 0
    for c in reversed(a):
        acc = acc * x + zp_eval(c, z)
    return acc


def bp_divmod_monic(a: BiPoly, g: BiPoly) -> tuple[BiPoly, BiPoly]:
    """Divide by a divisor whose leading x-coefficient is the constant 1."""
    g = bp_trim(g)
    if not g or g[-1] != Z_ONE:
        raise ValueError("divisor must be monic in x")
    dg = len(g) - 1
    rem = list(bp_trim(a))
    quo = [Z_ZERO] * max(len(rem) - dg, 0)
    while len(rem) - 1 >= dg and any(rem):
        lead = rem[-1]
        if not lead:
            rem.pop()
            continue
        shift = len(rem) - 1 - dg
        quo[shift] = zp_add(quo[shift], lead)
        for i, gc in enumerate(g):
            rem[shift + i] = zp_sub(rem[shift + i], zp_mul(lead, gc))
        rem.pop()
    return bp_trim(quo), bp_trim(rem)


def bp_format(a: BiPoly, xname: str = "x", zname: str = "z") -> str:
    """Canonical sparse text, highest x-degree first."""
    terms = []
    for i in range(len(a) - 1, -1, -1):
        for j in range(len(a[i]) - 1, -1, -1):
            c = a[i][j]
            if not c:
                continue
            body = []
            if abs(c) != 1 or (i == j == 0):
                body.append(str(abs(c)))
            if i:
                body.append(xname if i == 1 else f"{xname}^{i}")
            if j:
                body.append(zname if j == 1 else f"{zname}^{j}")
            terms.append(("-" if c < 0 else "+", "*".join(body)))
    if not terms:
        return "0"
    sign, first = terms[0]
    out = ("-" if sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def frac_eval_bp(a: BiPoly, x: Fraction, z: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + sum((Fraction(cc) * z ** j for j, cc in enumerate(c)),
                            Fraction(0))
    return acc
