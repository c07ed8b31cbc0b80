"""Volume duality between poly-vector fields and differential forms.

The orientation is fixed once and for all as the standard volume form
dx^1 /\\ ... /\\ dx^n, so an l-vector ``x^a d_J`` maps to the (n-l)-form
``sgn(J, J^c) x^a dx^{J^c}``.  The trace operator is implemented directly by
index contraction; conjugating the exterior derivative through the duality
gives the same operator and is kept around as the cross-check route.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionError, DomainError
from .fields import PolyVectorField, _frac, _sort_with_sign, merge_indices


@dataclass(frozen=True)
class VolumeConvention:
    """Marker for the fixed orientation dx^1 /\\ ... /\\ dx^n."""

    dim: int

    def epsilon(self, indices):
        """Totally antisymmetric symbol with epsilon_{1..n} = +1."""
        if len(indices) != self.dim:
            raise DimensionError(f"need {self.dim} indices, got {len(indices)}")
        sign, _ = _sort_with_sign(tuple(indices))
        return sign


class PolyDifferentialForm:
    """Differential form with polynomial coefficients, stored like a field:
    (exponent tuple, strictly increasing covariant index tuple) -> Fraction.
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
            if any(j < 1 or j > dim for j in idx) or len(idx) > dim:
                raise DimensionError(f"covariant index out of range in {idx}")
            sign, idx = _sort_with_sign(idx)
            if sign == 0:
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
        raise AttributeError("PolyDifferentialForm is immutable")

    @classmethod
    def zero(cls, dim):
        return cls(dim, {})

    def _check_dim(self, other):
        if self.dim != other.dim:
            raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other):
        self._check_dim(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            s = terms.get(key, Fraction(0)) + c
            if s:
                terms[key] = s
            else:
                terms.pop(key, None)
        out = PolyDifferentialForm.zero(self.dim)
        object.__setattr__(out, "terms", terms)
        return out

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = _frac(c)
        out = PolyDifferentialForm.zero(self.dim)
        if c:
            object.__setattr__(out, "terms", {k: v * c for k, v in self.terms.items()})
        return out

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        return (isinstance(other, PolyDifferentialForm)
                and self.dim == other.dim and self.terms == other.terms)

    def __hash__(self):
        return hash((self.dim, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def form_degrees(self):
        return {len(idx) for _, idx in self.terms}

    def __repr__(self):
        if not self.terms:
            return f"PolyDifferentialForm(dim={self.dim}, 0)"
        bits = []
        for (exp, idx), c in sorted(self.terms.items()):
            mono = "*".join(f"x{m + 1}^{e}" for m, e in enumerate(exp) if e)
            part = "/\\".join(f"dx{j}" for j in idx)
            bits.append("*".join(s for s in (str(c), mono, part) if s))
        return f"PolyDifferentialForm(dim={self.dim}, {' + '.join(bits)})"


def wedge_forms(a, b):
    a._check_dim(b)
    terms = {}
    for (ea, ia), ca in a.terms.items():
        for (eb, ib), cb in b.terms.items():
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
    out = PolyDifferentialForm.zero(a.dim)
    object.__setattr__(out, "terms", terms)
    return out


def _complement(idx, n):
    """Complement of a sorted index tuple in 1..n with the shuffle sign of
    the concatenation (idx, complement)."""
    present = set(idx)
    comp = tuple(j for j in range(1, n + 1) if j not in present)
    inversions = 0
    for a in idx:
        inversions += sum(1 for b in comp if b < a)
    return (-1 if inversions % 2 else 1), comp


def to_form(u):
    """Duality against the volume form: an l-vector becomes an (n-l)-form via
    Psi(U)(W) = Psi(U /\\ W).  Linear and invertible."""
    terms = {}
    for (exp, idx), c in u.terms.items():
        sign, comp = _complement(idx, u.dim)
        key = (exp, comp)
        s = terms.get(key, Fraction(0)) + sign * c
        if s:
            terms[key] = s
        else:
            terms.pop(key, None)
    out = PolyDifferentialForm.zero(u.dim)
    object.__setattr__(out, "terms", terms)
    return out


def from_form(omega):
    """Inverse of :func:`to_form`."""
    terms = {}
    for (exp, idx), c in omega.terms.items():
        sign, comp = _complement_inverse(idx, omega.dim)
        key = (exp, comp)
        s = terms.get(key, Fraction(0)) + sign * c
        if s:
            terms[key] = s
        else:
            terms.pop(key, None)
    out = PolyVectorField.zero(omega.dim)
    object.__setattr__(out, "terms", terms)
    return out


def _complement_inverse(idx, n):
    """Complement J of a covariant tuple K with the sign sgn(J, K)."""
    present = set(idx)
    comp = tuple(j for j in range(1, n + 1) if j not in present)
    inversions = 0
    for a in comp:
        inversions += sum(1 for b in idx if b < a)
    return (-1 if inversions % 2 else 1), comp


def exterior_derivative(omega):
    """Standard exterior derivative; raises the form degree by one and
    squares to zero."""
    terms = {}
    for (exp, idx), c in omega.terms.items():
        for m in range(omega.dim):
            e = exp[m]
            if not e:
                continue
            merged = merge_indices((m + 1,), idx)
            if merged is None:
                continue
            sign, new_idx = merged
            new_exp = exp[:m] + (e - 1,) + exp[m + 1:]
            key = (new_exp, new_idx)
            s = terms.get(key, Fraction(0)) + sign * e * c
            if s:
                terms[key] = s
            else:
                terms.pop(key, None)
    out = PolyDifferentialForm.zero(omega.dim)
    object.__setattr__(out, "terms", terms)
    return out


def interior_product(x, omega):
    """Contraction of a polynomial vector field into a form."""
    if x.dim != omega.dim:
        raise DimensionError(f"dimension mismatch: {x.dim} vs {omega.dim}")
    components = {}
    for (exp, idx), c in x.terms.items():
        if len(idx) != 1:
            raise DimensionError("interior product needs a vector field")
        components.setdefault(idx[0], {})[exp] = c
    terms = {}
    for (exp, idx), c in omega.terms.items():
        for t, j in enumerate(idx):
            comp = components.get(j)
            if not comp:
                continue
            sign = -1 if t % 2 else 1
            new_idx = idx[:t] + idx[t + 1:]
            for xexp, xc in comp.items():
                new_exp = tuple(a + b for a, b in zip(exp, xexp))
                key = (new_exp, new_idx)
                s = terms.get(key, Fraction(0)) + sign * c * xc
                if s:
                    terms[key] = s
                else:
                    terms.pop(key, None)
    out = PolyDifferentialForm.zero(omega.dim)
    object.__setattr__(out, "terms", terms)
    return out


def lie_derivative_form(x, omega):
    """Cartan formula L_X = d i_X + i_X d."""
    return exterior_derivative(interior_product(x, omega)) + interior_product(
        x, exterior_derivative(omega))


def trace_d(u):
    """The degree (-1, -1) trace operator.

    Implemented as the direct contraction of one partial slot against one
    coordinate derivative; equals conjugating the exterior derivative through
    the volume duality, and restricts to the matrix trace on linear vector
    fields.  Squares to zero.
    """
    terms = {}
    for (exp, idx), c in u.terms.items():
        ell = len(idx)
        for t, j in enumerate(idx):
            e = exp[j - 1]
            if not e:
                continue
            sign = -1 if (ell - 1 - t) % 2 else 1
            new_exp = exp[:j - 1] + (e - 1,) + exp[j:]
            new_idx = idx[:t] + idx[t + 1:]
            key = (new_exp, new_idx)
            s = terms.get(key, Fraction(0)) + sign * e * c
            if s:
                terms[key] = s
            else:
                terms.pop(key, None)
    out = PolyVectorField.zero(u.dim)
    object.__setattr__(out, "terms", terms)
    return out


def dim_irrep(n, k, ell):
    """Dimension of the trace-free block of P^(k,l):

        (n + k)! / ((n + k - l) k! l! (n - l - 1)!)

    Defined for 0 <= l <= n - 1 and k >= 0; for k = l it agrees with
    (1/(k!)^2) prod_{j=1..k} (n^2 - j^2).
    """
    if n < 1 or k < 0 or ell < 0:
        raise DomainError(f"negative arguments: n={n}, k={k}, l={ell}")
    if ell >= n:
        raise DomainError(f"l = {ell} >= n = {n} is outside the formula's domain")
    num = math.factorial(n + k)
    den = (n + k - ell) * math.factorial(k) * math.factorial(ell) * math.factorial(n - ell - 1)
    dim, rem = divmod(num, den)
    if rem:
        raise DomainError("dimension formula did not divide exactly")
    return dim
