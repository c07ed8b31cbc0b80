"""Shared builders for the test suite: deterministic random fields and the
catalog fixtures typed in from the printed tables."""

from fractions import Fraction
from itertools import combinations

from polyvec import (
    LinearMatrix,
    PolyDifferentialForm,
    PolyVectorField,
    monomial_exponents,
    parse_field,
)


def pv(text, n):
    return parse_field(text, n)


def sgn(e):
    return 1 if e % 2 == 0 else -1


def random_field(rng, n, k, ell, nterms=2):
    exps = monomial_exponents(n, k)
    idxs = list(combinations(range(1, n + 1), ell))
    terms = {}
    for _ in range(nterms):
        key = (rng.choice(exps), rng.choice(idxs))
        terms[key] = terms.get(key, Fraction(0)) + Fraction(
            rng.choice([1, 2, 3, -1, -2]), rng.choice([1, 1, 2, 3]))
    return PolyVectorField(n, terms)


def random_nonzero(rng, n, k, ell, nterms=2):
    while True:
        f = random_field(rng, n, k, ell, nterms)
        if not f.is_zero():
            return f


def random_invertible(rng, n, bound=3):
    while True:
        m = LinearMatrix([[Fraction(rng.randint(-bound, bound)) for _ in range(n)]
                          for _ in range(n)])
        if m.det() != 0:
            return m


def shifted_degree(u):
    return next(iter(u.vector_degrees())) - 1


def so3_bivector():
    return pv("x*d2/\\d3 - y*d1/\\d3 + z*d1/\\d2", 3)


def g_ab_bivector(alpha, beta):
    return PolyVectorField(3, {((0, 1, 0), (1, 2)): Fraction(alpha),
                               ((0, 0, 1), (1, 3)): Fraction(beta)})


# linear strata of the dimension-3 cubic catalog
CASE_A12 = LinearMatrix.diagonal([1, 2, -3])
CASE_A2 = LinearMatrix.diagonal([0, 1, -1])
CASE_A3 = LinearMatrix.diagonal([0, 0, 0])
CASE_B2 = LinearMatrix([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
CASE_C = LinearMatrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
CASE_D2 = LinearMatrix([[0, 1, 0], [-1, 0, 0], [0, 0, 0]])

# printed trace-free bases (B.2 verbatim; C and D.2 with the corrections
# derived in the regression tests: the catalog text's middle C element has a
# flipped sign and its third D.2 element is missing the -z^2 dz term)
PRINTED_BASIS_A12 = ["x^2*dy"]
PRINTED_BASIS_B2 = [
    "z^2*dz - x*z*dx - y*z*dy",
    "3*x*z*dz - x^2*dx - x*y*dy",
    "x^2*dy", "z^2*dy", "x*z*dy", "x^2*dz",
]
PRINTED_BASIS_C_VERBATIM = [
    "x^2*dz",
    "x*y*dz - x^2*dy",
    "x*y*dy + x^2*dx + 2*y^2*dz - 3*x*z*dz",
]
BASIS_C_CORRECTED = [
    "x^2*dz",
    "x*y*dz + x^2*dy",
    "x*y*dy + x^2*dx + 2*y^2*dz - 3*x*z*dz",
]
PRINTED_BASIS_D2_VERBATIM = [
    "y^2*dz + x^2*dz",
    "y*z*dx - x*z*dy",
    "x*z*dx + y*z*dy",
]
BASIS_D2_CORRECTED = [
    "y^2*dz + x^2*dz",
    "y*z*dx - x*z*dy",
    "x*z*dx + y*z*dy - z^2*dz",
]


def fields_from(texts, n=3):
    return [pv(t, n) for t in texts]


# dimension-4 strata
QUAD4_DIAGONAL = LinearMatrix.diagonal([1, 2, 4, -7])
QUAD4_NILPOTENT = LinearMatrix([[1, 1, 0, 0], [0, 1, 0, 0],
                                [0, 0, -1, 1], [0, 0, 0, -1]])
QUAD4_ROTATION = LinearMatrix([[1, 1, 0, 0], [-1, 1, 0, 0],
                               [0, 0, -1, 2], [0, 0, -2, -1]])


def poly_times_oneform(poly_terms, oneform_terms):
    """(sum_c x^e) * (sum_c x^e dx^k) as an exact 1-form in dimension 4."""
    terms = {}
    for pc, pe in poly_terms:
        for fc, fe, k in oneform_terms:
            key = (tuple(a + b for a, b in zip(pe, fe)), (k,))
            terms[key] = terms.get(key, Fraction(0)) + Fraction(pc) * Fraction(fc)
    return PolyDifferentialForm(4, terms)


_TY = [(1, (1, 0, 1, 0))]
_TZ_XY = [(1, (1, 0, 0, 1)), (-1, (0, 1, 1, 0))]
_Y_DT = [(1, (0, 0, 1, 0), 1)]
_T_DY = [(1, (1, 0, 0, 0), 3)]
_ZDT_YDX = [(1, (0, 0, 0, 1), 1), (-1, (0, 0, 1, 0), 2)]
_TDZ_XDY = [(1, (1, 0, 0, 0), 4), (-1, (0, 1, 0, 0), 3)]


def quad4_diagonal_family():
    """Kernel basis for the distinct-diagonal stratum: xyz dt, tyz dx, ..."""
    return [
        PolyDifferentialForm(4, {((0, 1, 1, 1), (1,)): 1}),
        PolyDifferentialForm(4, {((1, 0, 1, 1), (2,)): 1}),
        PolyDifferentialForm(4, {((1, 1, 0, 1), (3,)): 1}),
        PolyDifferentialForm(4, {((1, 1, 1, 0), (4,)): 1}),
    ]


def quad4_nilpotent_family():
    """The printed 8-parameter family (a1, a2, b1, b2, g1, g2, d1, d2)."""
    return [
        poly_times_oneform(_TY, _Y_DT),
        poly_times_oneform(_TY, _T_DY),
        poly_times_oneform(_TY, _ZDT_YDX),
        poly_times_oneform(_TY, _TDZ_XDY),
        poly_times_oneform(_TZ_XY, _Y_DT),
        poly_times_oneform(_TZ_XY, _T_DY),
        poly_times_oneform(_TZ_XY, _ZDT_YDX),
        poly_times_oneform(_TZ_XY, _TDZ_XDY),
    ]


def quad4_nilpotent_theta(a1, a2, b1, b2, g1, g2, d1, d2):
    basis = quad4_nilpotent_family()
    values = [a1, a2, b1, b2, g1, g2, d1, d2]
    out = PolyDifferentialForm.zero(4)
    for c, th in zip(values, basis):
        if c:
            out = out + th.scale(c)
    return out


def quad4_rotation_family():
    """The printed 4-parameter family (a1, a2, b1, b2)."""
    y2z2 = [(1, (0, 0, 2, 0)), (1, (0, 0, 0, 2))]
    t2x2 = [(1, (2, 0, 0, 0)), (1, (0, 2, 0, 0))]
    xdt_tdx = [(1, (0, 1, 0, 0), 1), (-1, (1, 0, 0, 0), 2)]
    tdt_xdx = [(1, (1, 0, 0, 0), 1), (1, (0, 1, 0, 0), 2)]
    zdy_ydz = [(1, (0, 0, 0, 1), 3), (-1, (0, 0, 1, 0), 4)]
    ydy_zdz = [(1, (0, 0, 1, 0), 3), (1, (0, 0, 0, 1), 4)]
    return [
        poly_times_oneform(y2z2, xdt_tdx),
        poly_times_oneform(y2z2, tdt_xdx),
        poly_times_oneform(t2x2, zdy_ydz),
        poly_times_oneform(t2x2, ydy_zdz),
    ]
