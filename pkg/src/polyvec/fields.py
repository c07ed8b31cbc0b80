"""Sparse exact polynomial poly-vector fields on R^n.

A field is stored as a finitely supported mapping

    (exponent tuple of length n, strictly increasing partial-index tuple)
        -> nonzero Fraction

so each basis element ``x^a d_{j1}/\\.../\\d_{jl}`` with ``j1 < ... < jl``
appears at most once.  Coefficients are exact rationals throughout; there is
no floating-point mode.

The module provides the wedge product, the Schouten bracket (the unique
bi-derivation extension of the Lie bracket of vector fields), the scaled
radial fields and the action of linear diffeomorphisms.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import (
    DegenerateNormalizerError,
    DimensionError,
    HomogeneityError,
    SingularMatrixError,
)
from . import linalg
from .polynomials import poly_const, poly_mul, poly_pow


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def merge_indices(a, b):
    """Wedge-merge two strictly increasing index tuples.

    Returns ``(sign, merged)`` where ``sign`` is the parity of the shuffle
    sorting the concatenation, or ``None`` when the tuples intersect.
    """
    i, j = 0, 0
    sign = 1
    out = []
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            return None
        if a[i] < b[j]:
            out.append(a[i])
            i += 1
        else:
            if (len(a) - i) % 2:
                sign = -sign
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return sign, tuple(out)


@dataclass(frozen=True)
class BiDegree:
    """Polynomial degree k and multivector degree ell of a homogeneous field."""

    k: int
    ell: int

    @property
    def delta(self):
        return self.k - self.ell

    def __iter__(self):
        return iter((self.k, self.ell))


class PolyVectorField:
    """A polynomial poly-vector field with exact rational coefficients.

    Values are immutable after construction; all operations return new
    fields, so concurrent use needs no synchronization.  The zero field
    keeps its dimension tag so dimension mismatches stay detectable.
    """

    __slots__ = ("dim", "terms")

    def __init__(self, dim, terms=None):
        if dim < 1:
            raise DimensionError(f"ambient dimension must be >= 1, got {dim}")
        canonical = {}
        for (exp, idx), coeff in (terms or {}).items():
            coeff = _frac(coeff)
            if not coeff:
                continue
            exp = tuple(int(e) for e in exp)
            if len(exp) != dim or any(e < 0 for e in exp):
                raise DimensionError(f"bad exponent tuple {exp} for dimension {dim}")
            idx = tuple(int(j) for j in idx)
            if any(j < 1 or j > dim for j in idx):
                raise DimensionError(f"partial index out of range in {idx}")
            sign = 1
            if len(idx) > 1 and list(idx) != sorted(idx):
                sign, idx = _sort_with_sign(idx)
                if sign == 0:
                    continue
            elif len(set(idx)) != len(idx):
                continue
            key = (exp, idx)
            s = canonical.get(key, Fraction(0)) + sign * coeff
            if s:
                canonical[key] = s
            else:
                canonical.pop(key, None)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "terms", canonical)

    def __setattr__(self, name, value):
        raise AttributeError("PolyVectorField is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, dim):
        return cls(dim, {})

    @classmethod
    def constant(cls, value, dim):
        return cls(dim, {((0,) * dim, ()): _frac(value)})

    @classmethod
    def single(cls, dim, coeff, exponents, indices):
        return cls(dim, {(tuple(exponents), tuple(indices)): _frac(coeff)})

    # -- ring-ish structure ------------------------------------------------

    def _check_dim(self, other):
        if self.dim != other.dim:
            raise DimensionError(
                f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other):
        self._check_dim(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            s = terms.get(key, Fraction(0)) + c
            if s:
                terms[key] = s
            else:
                terms.pop(key, None)
        out = PolyVectorField.zero(self.dim)
        object.__setattr__(out, "terms", terms)
        return out

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = _frac(c)
        out = PolyVectorField.zero(self.dim)
        if c:
            object.__setattr__(out, "terms", {k: v * c for k, v in self.terms.items()})
        return out

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        return (isinstance(other, PolyVectorField)
                and self.dim == other.dim and self.terms == other.terms)

    def __hash__(self):
        return hash((self.dim, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    # -- grading -----------------------------------------------------------

    def bidegrees(self):
        return {BiDegree(sum(exp), len(idx)) for exp, idx in self.terms}

    def is_homogeneous(self):
        return len(self.bidegrees()) <= 1

    def bidegree(self):
        """The bidegree of a homogeneous field (zero counts as (0, 0))."""
        degs = self.bidegrees()
        if len(degs) > 1:
            raise HomogeneityError(f"field mixes bidegrees {sorted((d.k, d.ell) for d in degs)}")
        return next(iter(degs)) if degs else BiDegree(0, 0)

    def vector_degrees(self):
        return {len(idx) for exp, idx in self.terms}

    def max_poly_degree(self):
        return max((sum(exp) for exp, idx in self.terms), default=0)

    def wedge(self, other):
        return wedge(self, other)

    def bracket(self, other):
        return schouten(self, other)

    def __repr__(self):
        if not self.terms:
            return f"PolyVectorField(dim={self.dim}, 0)"
        bits = []
        for (exp, idx), c in sorted(self.terms.items()):
            mono = "*".join(f"x{m + 1}^{e}" for m, e in enumerate(exp) if e)
            part = "/\\".join(f"d{j}" for j in idx)
            bits.append("*".join(s for s in (str(c), mono, part) if s))
        return f"PolyVectorField(dim={self.dim}, {' + '.join(bits)})"


def _sort_with_sign(idx):
    """Insertion-sort an index tuple, tracking the permutation sign.

    Returns ``(0, ())`` when an index repeats.
    """
    lst = list(idx)
    sign = 1
    for i in range(1, len(lst)):
        j = i
        while j > 0 and lst[j - 1] > lst[j]:
            lst[j - 1], lst[j] = lst[j], lst[j - 1]
            sign = -sign
            j -= 1
        if j > 0 and lst[j - 1] == lst[j]:
            return 0, ()
    return sign, tuple(lst)


def wedge(u, v):
    """Wedge product; adds bidegrees and is graded-commutative in the
    natural degree: ``u /\\ v = (-1)^(l l') v /\\ u``."""
    u._check_dim(v)
    terms = {}
    for (ea, ia), ca in u.terms.items():
        for (eb, ib), cb in v.terms.items():
            merged = merge_indices(ia, ib)
            if merged is None:
                continue
            sign, idx = merged
            exp = tuple(x + y for x, y in zip(ea, eb))
            key = (exp, idx)
            s = terms.get(key, Fraction(0)) + sign * ca * cb
            if s:
                terms[key] = s
            else:
                terms.pop(key, None)
    out = PolyVectorField.zero(u.dim)
    object.__setattr__(out, "terms", terms)
    return out


def _diff_monomial(exp, m):
    """d/dx_m of x^exp as (factor, new exponent) or None."""
    e = exp[m]
    if e == 0:
        return None
    return e, exp[:m] + (e - 1,) + exp[m + 1:]


def schouten(u, v):
    """Schouten bracket of two poly-vector fields.

    On vector fields this is the Lie bracket and ``[X, f] = X(f)`` for a
    function f; in general it is the bi-derivation extension, graded
    antisymmetric for the shifted degrees and mapping bidegrees
    ``(k, l) x (k', l') -> (k + k' - 1, l + l' - 1)``.
    """
    u._check_dim(v)
    n = u.dim
    terms = {}

    def _acc(coeff, exp, idx):
        if not coeff:
            return
        key = (exp, idx)
        s = terms.get(key, Fraction(0)) + coeff
        if s:
            terms[key] = s
        else:
            terms.pop(key, None)

    for (ea, ia), ca in u.terms.items():
        p = len(ia)
        for (eb, ib), cb in v.terms.items():
            q = len(ib)
            # derivatives of v's coefficient along u's partial slots
            for t in range(p):
                d = _diff_monomial(eb, ia[t] - 1)
                if d is None:
                    continue
                factor, new_eb = d
                merged = merge_indices(ia[:t] + ia[t + 1:], ib)
                if merged is None:
                    continue
                sign, idx = merged
                if (p - 1 - t) % 2:
                    sign = -sign
                exp = tuple(x + y for x, y in zip(ea, new_eb))
                _acc(sign * factor * ca * cb, exp, idx)
            # derivatives of u's coefficient along v's partial slots
            outer = -1 if ((p - 1) * (q - 1)) % 2 == 0 else 1
            for s_pos in range(q):
                d = _diff_monomial(ea, ib[s_pos] - 1)
                if d is None:
                    continue
                factor, new_ea = d
                merged = merge_indices(ib[:s_pos] + ib[s_pos + 1:], ia)
                if merged is None:
                    continue
                sign, idx = merged
                if (q - 1 - s_pos) % 2:
                    sign = -sign
                exp = tuple(x + y for x, y in zip(new_ea, eb))
                _acc(outer * sign * factor * ca * cb, exp, idx)
    out = PolyVectorField.zero(n)
    object.__setattr__(out, "terms", terms)
    return out


def radial_field(n):
    """The radial vector field e0 = x^m d_m."""
    terms = {}
    for m in range(n):
        exp = tuple(1 if t == m else 0 for t in range(n))
        terms[(exp, (m + 1,))] = Fraction(1)
    return PolyVectorField(n, terms)


def euler(n, k, ell):
    """The scaled radial field e^(k,l) = e0 / (n + k - l), bidegree (1, 1)."""
    norm = n + k - ell
    if norm == 0:
        raise DegenerateNormalizerError(
            f"e^({k},{ell}) undefined in dimension {n}: n + k - l = 0")
    return radial_field(n).scale(Fraction(1, norm))


def homogeneous_components(u):
    """Split a field into its (k, l)-homogeneous pieces.

    Returns a mapping BiDegree -> field whose values sum back to ``u``; the
    zero field yields the empty mapping.
    """
    buckets = {}
    for (exp, idx), c in u.terms.items():
        deg = BiDegree(sum(exp), len(idx))
        buckets.setdefault(deg, {})[(exp, idx)] = c
    out = {}
    for deg, terms in buckets.items():
        f = PolyVectorField.zero(u.dim)
        object.__setattr__(f, "terms", terms)
        out[deg] = f
    return out


class LinearMatrix:
    """A square matrix of exact rationals (linear fields, diffeomorphisms)."""

    __slots__ = ("dim", "entries")

    def __init__(self, entries):
        rows = [tuple(_frac(x) for x in row) for row in entries]
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise DimensionError("matrix must be square and non-empty")
        object.__setattr__(self, "dim", n)
        object.__setattr__(self, "entries", tuple(rows))

    def __setattr__(self, name, value):
        raise AttributeError("LinearMatrix is immutable")

    @classmethod
    def identity(cls, n):
        return cls(linalg.identity(n))

    @classmethod
    def diagonal(cls, values):
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __eq__(self, other):
        return (isinstance(other, LinearMatrix)
                and self.dim == other.dim and self.entries == other.entries)

    def __hash__(self):
        return hash(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def trace(self):
        return sum((self.entries[i][i] for i in range(self.dim)), Fraction(0))

    def det(self):
        return linalg.determinant([list(r) for r in self.entries])

    def transpose(self):
        return LinearMatrix([[self.entries[j][i] for j in range(self.dim)]
                             for i in range(self.dim)])

    def inverse(self):
        inv = linalg.inverse([list(r) for r in self.entries])
        if inv is None:
            raise SingularMatrixError("matrix is singular")
        return LinearMatrix(inv)

    def matmul(self, other):
        return LinearMatrix(linalg.mat_mul(
            [list(r) for r in self.entries], [list(r) for r in other.entries]))

    def __repr__(self):
        return f"LinearMatrix({[[str(x) for x in row] for row in self.entries]})"


def linear_vector_field(matrix):
    """The linear vector field with coefficient of d_i equal to row i dot x,
    i.e. M -> M[i][j] x_j d_i."""
    n = matrix.dim
    terms = {}
    for i in range(n):
        for j in range(n):
            c = matrix.entries[i][j]
            if not c:
                continue
            exp = tuple(1 if t == j else 0 for t in range(n))
            key = (exp, (i + 1,))
            terms[key] = terms.get(key, Fraction(0)) + c
    return PolyVectorField(n, terms)


def pushforward(l_matrix, u):
    """Action of the invertible linear map L on a poly-vector field.

    Coordinates substitute as x_m -> sum_t L[m][t] x_t and partials as
    d_j -> sum_i (L^-1)[i][j] d_i, so linear vector fields conjugate as
    A -> L^-1 A L and the radial field is fixed.  Each l-vector component
    additionally carries the weight det(L)^(l-1); with that weight the trace
    operator satisfies D(L_* A) = det(L) * L_*(D A) exactly, matching the
    transport law used by the decomposition and the catalog equivariance.
    The wedge then picks up one determinant factor:
    L_*(U /\\ V) = det(L) * (L_*U /\\ L_*V), while the Schouten bracket is
    preserved verbatim.
    """
    if l_matrix.dim != u.dim:
        raise DimensionError(f"dimension mismatch: {l_matrix.dim} vs {u.dim}")
    n = u.dim
    det = l_matrix.det()
    if not det:
        raise SingularMatrixError("pushforward along a singular matrix")
    inv = l_matrix.inverse()
    out_terms = {}
    for (exp, idx), c in u.terms.items():
        ell = len(idx)
        weight = c * det ** (ell - 1)
        coeff_poly = poly_const(weight, n)
        for m, e in enumerate(exp):
            if not e:
                continue
            lin = {}
            for t in range(n):
                v = l_matrix.entries[m][t]
                if v:
                    lin[tuple(1 if s == t else 0 for s in range(n))] = v
            coeff_poly = poly_mul(coeff_poly, poly_pow(lin, e, n))
        columns = []
        for j in idx:
            columns.append([(i + 1, inv.entries[i][j - 1])
                            for i in range(n) if inv.entries[i][j - 1]])
        for choice in product(*columns):
            new_idx = tuple(i for i, _ in choice)
            sign, sorted_idx = _sort_with_sign(new_idx)
            if sign == 0:
                continue
            factor = Fraction(sign)
            for _, v in choice:
                factor *= v
            for mono, pc in coeff_poly.items():
                key = (mono, sorted_idx)
                s = out_terms.get(key, Fraction(0)) + pc * factor
                if s:
                    out_terms[key] = s
                else:
                    out_terms.pop(key, None)
    out = PolyVectorField.zero(n)
    object.__setattr__(out, "terms", out_terms)
    return out


def skew_component(u, lower, upper):
    """Component A_{lower}^{upper} in the fully skew/symmetric convention
    A = (1/k!l!) A_{i1..ik}^{j1..jl} x^{i1}..x^{ik} d_{j1}/\\../\\d_{jl}.

    ``lower`` is a multiset of coordinate indices (1-based), ``upper`` a tuple
    of distinct partial indices in any order.
    """
    sign, idx = _sort_with_sign(tuple(upper))
    if sign == 0:
        return Fraction(0)
    exp = [0] * u.dim
    for i in lower:
        exp[i - 1] += 1
    coeff = u.terms.get((tuple(exp), idx), Fraction(0))
    fact = 1
    for e in exp:
        for t in range(2, e + 1):
            fact *= t
    return sign * fact * coeff


def from_skew_components(dim, components):
    """Build a field from skew-convention components A_{lower}^{upper}."""
    terms = {}
    for (lower, upper), value in components.items():
        sign, idx = _sort_with_sign(tuple(upper))
        if sign == 0:
            continue
        exp = [0] * dim
        for i in lower:
            exp[i - 1] += 1
        fact = 1
        for e in exp:
            for t in range(2, e + 1):
                fact *= t
        key = (tuple(exp), idx)
        terms[key] = terms.get(key, Fraction(0)) + Fraction(sign * value, fact)
    return PolyVectorField(dim, terms)
