"""Poisson and Jacobi structure predicates and constructions.

All predicates are exact: a structure equation either holds identically or
it does not.  The component test mirrors the compatibility conditions on the
trace decomposition and is kept separate from the direct bracket test so the
two can cross-check each other.
"""

from fractions import Fraction
from itertools import combinations

from .errors import (
    DimensionError,
    ExceptionalDegreeError,
    IncompatibleSplittingError,
    ParityError,
    PreconditionError,
)
from .fields import PolyVectorField, euler, schouten, wedge
from .duality import trace_d
from .decomposition import decompose
from .polynomials import poly_add, poly_is_zero, poly_mul, poly_neg


class JacobiPair:
    """A candidate Jacobi structure: a 2l-vector and a (2l-1)-vector."""

    __slots__ = ("lam", "e_field")

    def __init__(self, lam, e_field):
        if lam.dim != e_field.dim:
            raise DimensionError(
                f"dimension mismatch: {lam.dim} vs {e_field.dim}")
        lam_degs = lam.vector_degrees()
        if len(lam_degs) > 1:
            raise ParityError("the even member must have a single vector degree")
        if lam_degs and next(iter(lam_degs)) % 2:
            raise ParityError("the even member must have even vector degree")
        e_degs = e_field.vector_degrees()
        if len(e_degs) > 1:
            raise ParityError("the odd member must have a single vector degree")
        if lam_degs and e_degs and next(iter(e_degs)) != next(iter(lam_degs)) - 1:
            raise ParityError("vector degrees must differ by one")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "e_field", e_field)

    def __setattr__(self, name, value):
        raise AttributeError("JacobiPair is immutable")

    def __iter__(self):
        return iter((self.lam, self.e_field))

    def __eq__(self, other):
        return (isinstance(other, JacobiPair)
                and self.lam == other.lam and self.e_field == other.e_field)


class RMatrix:
    """Element of Lambda^2(gl_n) on the matrix-unit basis E_ij /\\ E_kl.

    Stored with one coefficient per ordered pair of matrix units, the pairs
    sorted lexicographically; assigning to a swapped pair flips the sign and
    E_ij /\\ E_ij drops out.
    """

    __slots__ = ("dim", "coefficients")

    def __init__(self, dim, coefficients=None):
        if dim < 1:
            raise DimensionError(f"dimension must be >= 1, got {dim}")
        canonical = {}
        for (unit_a, unit_b), coeff in (coefficients or {}).items():
            coeff = Fraction(coeff)
            if not coeff:
                continue
            unit_a = tuple(int(t) for t in unit_a)
            unit_b = tuple(int(t) for t in unit_b)
            for i, j in (unit_a, unit_b):
                if not (1 <= i <= dim and 1 <= j <= dim):
                    raise DimensionError(f"matrix unit ({i},{j}) out of range")
            if unit_a == unit_b:
                continue
            sign = 1
            if unit_a > unit_b:
                unit_a, unit_b = unit_b, unit_a
                sign = -1
            key = (unit_a, unit_b)
            s = canonical.get(key, Fraction(0)) + sign * coeff
            if s:
                canonical[key] = s
            else:
                canonical.pop(key, None)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "coefficients", canonical)

    def __setattr__(self, name, value):
        raise AttributeError("RMatrix is immutable")


def _even_degrees(p):
    for ell in p.vector_degrees():
        if ell % 2:
            raise ParityError(f"vector degree {ell} is odd")


def is_poisson(p):
    """[P, P] = 0 for an even poly-vector field (generalized Poisson)."""
    _even_degrees(p)
    return schouten(p, p).is_zero()


def poisson_component_test(a):
    """Poisson test through the trace decomposition.

    For homogeneous even A: when k != l the single equation
    [A0, A0] = 2(l-k)/(n+k-l) DA /\\ A0 is equivalent to [A, A] = 0; for
    k = l the conditions are [A0, A0] = 0 and [DA, A0] = 0.
    """
    _even_degrees(a)
    if a.is_zero():
        return True
    k, ell = a.bidegree()
    n = a.dim
    parts = decompose(a)
    a0, da = parts.tracefree, parts.trace
    if da.is_zero():
        return schouten(a0, a0).is_zero()
    if k != ell:
        rhs = wedge(da, a0).scale(Fraction(2 * (ell - k), n + k - ell))
        return schouten(a0, a0) == rhs
    return schouten(a0, a0).is_zero() and schouten(da, a0).is_zero()


def is_simple(p):
    """Is the trace-free part of a homogeneous Poisson structure Poisson?"""
    if not is_poisson(p):
        raise PreconditionError("is_simple needs a Poisson structure")
    return is_poisson(decompose(p).tracefree)


def generic_rank(p):
    """Rank of the skew coefficient matrix of a bi-vector over the fraction
    field: the largest even r with a nonsingular principal r x r block."""
    for ell in p.vector_degrees():
        if ell != 2:
            raise ParityError(f"generic rank is defined for bi-vectors, got degree {ell}")
    n = p.dim
    zero_n = (0,) * n
    skew = [[{} for _ in range(n)] for _ in range(n)]
    for (exp, idx), c in p.terms.items():
        i, j = idx[0] - 1, idx[1] - 1
        skew[i][j] = poly_add(skew[i][j], {exp: c})
        skew[j][i] = poly_add(skew[j][i], {exp: -c})
    for r in range(n - n % 2, 0, -2):
        for rows in combinations(range(n), r):
            minor = [[skew[i][j] for j in rows] for i in rows]
            if not poly_is_zero(_poly_det(minor, n)):
                return r
    return 0


def _poly_det(m, n):
    size = len(m)
    if size == 1:
        return m[0][0]
    det = {}
    for col in range(size):
        entry = m[0][col]
        if poly_is_zero(entry):
            continue
        sub = [row[:col] + row[col + 1:] for row in m[1:]]
        term = poly_mul(entry, _poly_det(sub, n))
        det = poly_add(det, term if col % 2 == 0 else poly_neg(term))
    return det


def is_jacobi(pair):
    """[L, E] = 0 and [L, L] = 2 E /\\ L, checked exactly."""
    lam, e = pair.lam, pair.e_field
    if not schouten(lam, e).is_zero():
        return False
    return schouten(lam, lam) == wedge(e, lam).scale(2)


def _homogeneous_degree(pair):
    """Degrees (k, 2l) of a homogeneous pair, inferred from either member."""
    lam, e = pair.lam, pair.e_field
    if not lam.is_zero():
        deg = lam.bidegree()
        if not e.is_zero():
            edeg = e.bidegree()
            if (edeg.k, edeg.ell) != (deg.k - 1, deg.ell - 1):
                raise PreconditionError(
                    "pair is not homogeneous of a single degree")
        return deg.k, deg.ell
    if not e.is_zero():
        deg = e.bidegree()
        return deg.k + 1, deg.ell + 1
    return None


def poisson_from_jacobi(pair):
    """Poisson structure associated to a homogeneous Jacobi pair, k != 2l:

        P0 = L0,   DP = DL + (n + k - 2l)/(2l - k) E0.
    """
    if not is_jacobi(pair):
        raise PreconditionError("input pair is not a Jacobi structure")
    degree = _homogeneous_degree(pair)
    if degree is None:
        return PolyVectorField.zero(pair.lam.dim)
    k, two_ell = degree
    if k == two_ell:
        raise ExceptionalDegreeError(
            f"degree k = 2l = {k} is the exceptional combination")
    n = pair.lam.dim
    lam_parts = decompose(pair.lam)
    e0 = decompose(pair.e_field).tracefree
    trace = lam_parts.trace + e0.scale(Fraction(n + k - two_ell, two_ell - k))
    pi = lam_parts.tracefree
    if not trace.is_zero():
        pi = pi + wedge(trace, euler(n, k, two_ell))
    return pi


def jacobi_from_poisson(p, f0, xi):
    """Jacobi pair from a Poisson structure and a splitting DP = F0 + E~0.

    Requires trace-free F0, xi of bidegree (k-2, 2l-2) and the compatibility
    xi /\\ P0 = [P0, F0] + F0 /\\ E~0; returns

        L = P0 + F0 /\\ e^(k,2l),
        E = (2l - k)/(n + k - 2l) (E~0 + xi /\\ e^(k,2l)).
    """
    if not is_poisson(p):
        raise PreconditionError("input is not a Poisson structure")
    if p.is_zero():
        raise PreconditionError("zero structure has no degree to split")
    k, two_ell = p.bidegree()
    if k == two_ell:
        raise ExceptionalDegreeError(
            f"degree k = 2l = {k} is the exceptional combination")
    n = p.dim
    if not trace_d(f0).is_zero():
        raise PreconditionError("the split part F0 must be trace-free")
    if not f0.is_zero():
        fdeg = f0.bidegree()
        if (fdeg.k, fdeg.ell) != (k - 1, two_ell - 1):
            raise PreconditionError("F0 must have bidegree (k-1, 2l-1)")
    if not xi.is_zero():
        xdeg = xi.bidegree()
        if (xdeg.k, xdeg.ell) != (k - 2, two_ell - 2):
            raise PreconditionError("xi must have bidegree (k-2, 2l-2)")
    parts = decompose(p)
    p0, dp = parts.tracefree, parts.trace
    e_tilde = dp - f0
    lhs = wedge(xi, p0)
    rhs = schouten(p0, f0) + wedge(f0, e_tilde)
    if lhs != rhs:
        raise IncompatibleSplittingError(
            "xi /\\ P0 != [P0, F0] + F0 /\\ E~0 for the supplied splitting")
    e_kl = euler(n, k, two_ell)
    lam = p0 if f0.is_zero() else p0 + wedge(f0, e_kl)
    scale = Fraction(two_ell - k, n + k - two_ell)
    e_field = e_tilde + (wedge(xi, e_kl) if not xi.is_zero() else PolyVectorField.zero(n))
    return JacobiPair(lam, e_field.scale(scale))


def exceptional_pair_check(p, pair, eta):
    """Checker for the k = 2l case: associated pairs need E0 = 0,
    DL = DP + eta and [eta, L0] = -DE /\\ L0 for the supplied eta."""
    lam_parts = decompose(pair.lam)
    e_parts = decompose(pair.e_field)
    if not e_parts.tracefree.is_zero():
        return False
    if lam_parts.trace != trace_d(p) + eta:
        return False
    lhs = schouten(eta, lam_parts.tracefree)
    rhs = -wedge(e_parts.trace, lam_parts.tracefree)
    return lhs == rhs


def are_associated(p, pair):
    """Association between a Poisson structure and a Jacobi pair:

        P0 = L0  and  E0 = (k - 2l)/(n + k - 2l) (DL - DP).
    """
    lam = pair.lam
    if p.dim != lam.dim:
        raise DimensionError(f"dimension mismatch: {p.dim} vs {lam.dim}")
    if not p.is_zero() and not lam.is_zero() and p.bidegree() != lam.bidegree():
        raise DimensionError("structures must share the bidegree (k, 2l)")
    deg = p.bidegree() if not p.is_zero() else lam.bidegree()
    k, two_ell = deg
    p_parts = decompose(p)
    lam_parts = decompose(lam)
    if p_parts.tracefree != lam_parts.tracefree:
        return False
    e0 = decompose(pair.e_field).tracefree
    diff = lam_parts.trace - p_parts.trace
    if diff.is_zero():
        return e0.is_zero()
    n = p.dim
    return e0 == diff.scale(Fraction(k - two_ell, n + k - two_ell))


def r_matrix_to_bivector(r):
    """Quadratic bi-vector image of an element of Lambda^2(gl_n):
    E_ij /\\ E_kl -> x_i x_k d_j /\\ d_l."""
    n = r.dim
    out = PolyVectorField.zero(n)
    terms = {}
    for ((i, j), (k, l)), c in r.coefficients.items():
        if j == l:
            continue
        exp = [0] * n
        exp[i - 1] += 1
        exp[k - 1] += 1
        sign = 1
        jj, ll = j, l
        if jj > ll:
            jj, ll = ll, jj
            sign = -1
        key = (tuple(exp), (jj, ll))
        s = terms.get(key, Fraction(0)) + sign * c
        if s:
            terms[key] = s
        else:
            terms.pop(key, None)
    object.__setattr__(out, "terms", terms)
    return out
