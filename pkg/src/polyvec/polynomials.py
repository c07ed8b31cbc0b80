"""Dict-backed multivariate polynomials with Fraction coefficients.

A polynomial in n variables is a mapping ``exponent tuple -> Fraction`` with
no explicit zero values.  These are only needed where coefficients stop being
single monomials: coordinate substitution in pushforwards and the polynomial
minors behind the generic rank.
"""

from fractions import Fraction


def poly_zero():
    return {}


def poly_const(c, n):
    c = Fraction(c)
    return {(0,) * n: c} if c else {}


def poly_add(p, q):
    out = dict(p)
    for mono, c in q.items():
        s = out.get(mono, Fraction(0)) + c
        if s:
            out[mono] = s
        else:
            out.pop(mono, None)
    return out


def poly_scale(p, c):
    c = Fraction(c)
    if not c:
        return {}
    return {mono: v * c for mono, v in p.items()}


def poly_mul(p, q):
    out = {}
    for ma, ca in p.items():
        for mb, cb in q.items():
            mono = tuple(a + b for a, b in zip(ma, mb))
            s = out.get(mono, Fraction(0)) + ca * cb
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
    return out


def poly_pow(p, e, n):
    out = poly_const(1, n)
    for _ in range(e):
        out = poly_mul(out, p)
    return out


def poly_neg(p):
    return {mono: -c for mono, c in p.items()}


def poly_is_zero(p):
    return not p


def poly_eval(p, point):
    total = Fraction(0)
    for mono, c in p.items():
        term = c
        for x, e in zip(point, mono):
            for _ in range(e):
                term *= x
        total += term
    return total
