"""Exact kernel computations behind the low-dimension catalogs.

Dimension three, cubic: solve [C, A] = 0 on quadratic vector fields for a
trace-free linear C, project onto the trace-free part and emit the simple
Poisson structures A0 /\\ (C + e^(3,2)).

Dimension four, quadratic: solve L_A theta = 0 on the 80-dimensional space
of cubic 1-forms, derive the quadratic coefficient constraints of
d theta /\\ d theta = 0, and build Poisson structures Psi^-1(d theta) + A /\\ e^(2,2).

Throughout, a matrix C acts on coordinates in the row convention
x -> x C, i.e. as the vector field sum_ij C[i][j] x_i d_j; that convention is
what reproduces the printed kernel bases of the catalog strata.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import DimensionError, PreconditionError
from . import linalg
from .fields import (
    LinearMatrix,
    PolyVectorField,
    euler,
    linear_vector_field,
    schouten,
    wedge,
)
from .duality import (
    PolyDifferentialForm,
    exterior_derivative,
    from_form,
    lie_derivative_form,
    wedge_forms,
)
from .decomposition import decompose
from .structures import generic_rank, is_poisson, is_simple


def monomial_exponents(n, k):
    """All exponent tuples of total degree k in n variables (deterministic)."""
    if n == 1:
        return [(k,)]
    out = []
    for first in range(k, -1, -1):
        for rest in monomial_exponents(n - 1, k - first):
            out.append((first,) + rest)
    return out


# The 20 cubic monomials in dimension four, in the catalog display order
# (coordinate digits over (t, x, y, z)):
# 012 013 023 123 001 002 003 110 112 113 220 221 223 330 331 332 000 111 222 333
CUBIC4_DISPLAY_ORDER = [
    (1, 1, 1, 0), (1, 1, 0, 1), (1, 0, 1, 1), (0, 1, 1, 1),
    (2, 1, 0, 0), (2, 0, 1, 0), (2, 0, 0, 1),
    (1, 2, 0, 0), (0, 2, 1, 0), (0, 2, 0, 1),
    (1, 0, 2, 0), (0, 1, 2, 0), (0, 0, 2, 1),
    (1, 0, 0, 2), (0, 1, 0, 2), (0, 0, 1, 2),
    (3, 0, 0, 0), (0, 3, 0, 0), (0, 0, 3, 0), (0, 0, 0, 3),
]


def _coordinatize(elements):
    """Coordinate vectors of fields/forms over the union of their term keys."""
    keys = sorted({key for el in elements for key in el.terms})
    vectors = [[el.terms.get(key, Fraction(0)) for key in keys] for el in elements]
    return keys, vectors


def same_span(elements_a, elements_b):
    """Do two families of fields (or forms) span the same subspace?"""
    keys = sorted({key for el in list(elements_a) + list(elements_b) for key in el.terms})
    if not keys:
        return True
    rows_a = [[el.terms.get(key, Fraction(0)) for key in keys] for el in elements_a]
    rows_b = [[el.terms.get(key, Fraction(0)) for key in keys] for el in elements_b]
    return linalg.span_equal(rows_a, rows_b, len(keys))


def _combine(basis, vector):
    out = basis[0].scale(vector[0])
    for b, c in zip(basis[1:], vector[1:]):
        if c:
            out = out + b.scale(c)
    return out


def _operator_kernel(basis, operator):
    """Exact nullspace of a linear operator given by its action on a basis."""
    images = [operator(b) for b in basis]
    keys = sorted({key for im in images for key in im.terms})
    matrix = [[im.terms.get(key, Fraction(0)) for im in images] for key in keys]
    vectors = linalg.nullspace(matrix, len(basis))
    return [_combine(basis, v) for v in vectors]


@dataclass(frozen=True)
class SolutionSpace:
    """An exactly computed solution space with an independent basis."""

    ambient: str
    basis: tuple

    def __post_init__(self):
        keys, vectors = _coordinatize(self.basis)
        if self.basis and linalg.rank(vectors) != len(self.basis):
            raise PreconditionError("solution space basis is linearly dependent")
        object.__setattr__(self, "basis", tuple(self.basis))

    @property
    def dimension(self):
        return len(self.basis)


@dataclass(frozen=True)
class QuadraticConstraintSet:
    """Quadratic relations among family parameters c_1..c_m.

    Each constraint is a mapping (i, j) -> coefficient with i <= j standing
    for the monomial c_i c_j; a parameter tuple lies on the zero locus iff it
    annihilates every constraint.
    """

    parameters: tuple
    constraints: tuple

    def evaluate(self, values):
        values = [Fraction(v) for v in values]
        if len(values) != len(self.parameters):
            raise DimensionError(
                f"expected {len(self.parameters)} parameter values, got {len(values)}")
        out = []
        for constraint in self.constraints:
            total = Fraction(0)
            for (i, j), c in constraint.items():
                total += c * values[i] * values[j]
            out.append(total)
        return out

    def vanishes_at(self, values):
        return all(v == 0 for v in self.evaluate(values))

    def is_identically_zero(self):
        return all(not constraint for constraint in self.constraints)


@dataclass(frozen=True)
class ClassificationCase:
    """One catalog stratum: kernel, trace-free projection and generators."""

    matrix: LinearMatrix
    kernel: SolutionSpace
    tracefree_basis: tuple
    constraints: Optional[QuadraticConstraintSet]
    generators: tuple


def matrix_action_field(matrix):
    """Vector field of the row-convention action x -> x M."""
    return linear_vector_field(matrix.transpose())


def centralizer_kernel(c_matrix, k):
    """Basis of {A in P^(k,1) : [C, A] = 0} by exact elimination."""
    if k < 0:
        raise PreconditionError(f"polynomial degree must be >= 0, got {k}")
    n = c_matrix.dim
    c_field = matrix_action_field(c_matrix)
    basis = [
        PolyVectorField.single(n, 1, exp, (j,))
        for exp in monomial_exponents(n, k)
        for j in range(1, n + 1)
    ]
    kernel = _operator_kernel(basis, lambda a: schouten(c_field, a))
    return SolutionSpace(f"P^({k},1) in dimension {n}", tuple(kernel))


def tracefree_projection(space):
    """Independent basis of the trace-free parts of a solution space."""
    projected = [decompose(a).tracefree for a in space.basis]
    projected = [p for p in projected if not p.is_zero()]
    if not projected:
        return SolutionSpace(f"trace-free part of {space.ambient}", ())
    keys, vectors = _coordinatize(projected)
    reduced, _ = linalg.rref(vectors)
    fields = []
    for row in reduced:
        terms = {key: c for key, c in zip(keys, row) if c}
        f = PolyVectorField.zero(projected[0].dim)
        object.__setattr__(f, "terms", terms)
        fields.append(f)
    return SolutionSpace(f"trace-free part of {space.ambient}", tuple(fields))


def cubic3_catalog(c_matrix):
    """Simple cubic Poisson structures A0 /\\ (C + e^(3,2)) for one stratum."""
    if c_matrix.dim != 3:
        raise DimensionError("cubic catalog lives in dimension 3")
    if c_matrix.trace() != 0:
        raise PreconditionError("stratum matrix must be trace-free")
    kernel = centralizer_kernel(c_matrix, 2)
    tracefree = tracefree_projection(kernel)
    pivot = matrix_action_field(c_matrix) + euler(3, 3, 2)
    generators = []
    for a0 in tracefree.basis:
        pi = wedge(a0, pivot)
        if not (is_poisson(pi) and is_simple(pi) and generic_rank(pi) == 2):
            raise PreconditionError(
                "internal check failed: emitted generator is not a simple rank-two "
                "Poisson structure")
        generators.append(pi)
    return ClassificationCase(
        matrix=c_matrix,
        kernel=kernel,
        tracefree_basis=tracefree.basis,
        constraints=None,
        generators=tuple(generators),
    )


def cubic_oneform_basis():
    """The 80 basis 1-forms theta = x^(mno) dx^k in display order, k major."""
    basis = []
    for k in range(1, 5):
        for exp in CUBIC4_DISPLAY_ORDER:
            basis.append(PolyDifferentialForm(4, {(exp, (k,)): Fraction(1)}))
    return basis


def compatible_cubic_oneforms(a_matrix):
    """Kernel of theta -> L_A theta on cubic 1-forms in dimension four."""
    if a_matrix.dim != 4:
        raise DimensionError("quadratic catalog lives in dimension 4")
    if a_matrix.trace() != 0:
        raise PreconditionError("stratum matrix must be trace-free")
    a_field = matrix_action_field(a_matrix)
    kernel = _operator_kernel(
        cubic_oneform_basis(), lambda th: lie_derivative_form(a_field, th))
    return SolutionSpace("cubic 1-forms in dimension 4 (80 coefficients)", tuple(kernel))


def quartic_constraints(space):
    """Coefficients of d theta /\\ d theta as quadratics in the family
    parameters of a cubic 1-form solution space."""
    basis = list(space.basis)
    m = len(basis)
    differentials = [exterior_derivative(th) for th in basis]
    per_monomial = {}
    for i in range(m):
        for j in range(i, m):
            product = wedge_forms(differentials[i], differentials[j])
            factor = 1 if i == j else 2
            for (exp, idx), c in product.terms.items():
                per_monomial.setdefault((exp, idx), {})[(i, j)] = factor * c
    parameters = tuple(f"c{i + 1}" for i in range(m))
    constraints = tuple(per_monomial[key] for key in sorted(per_monomial))
    return QuadraticConstraintSet(parameters=parameters, constraints=constraints)


def build_quadratic_poisson(theta, a_matrix):
    """Poisson structure Psi^-1(d theta) + A /\\ e^(2,2) from compatible data.

    Checks condition (i) L_A theta = 0 and condition (ii)
    d theta /\\ d theta = 0 before assembling the structure.
    """
    if a_matrix.dim != 4 or theta.dim != 4:
        raise DimensionError("quadratic construction lives in dimension 4")
    if a_matrix.trace() != 0:
        raise PreconditionError("trace part must be encoded by a trace-free matrix")
    if not theta.form_degrees() <= {1}:
        raise PreconditionError("theta must be a 1-form")
    a_field = matrix_action_field(a_matrix)
    if not lie_derivative_form(a_field, theta).is_zero():
        raise PreconditionError("condition (i) fails: L_A theta != 0")
    dtheta = exterior_derivative(theta)
    if not wedge_forms(dtheta, dtheta).is_zero():
        raise PreconditionError("condition (ii) fails: d theta /\\ d theta != 0")
    pi = from_form(dtheta)
    if not a_field.is_zero():
        pi = pi + wedge(a_field, euler(4, 2, 2))
    if not is_poisson(pi):
        raise PreconditionError("internal check failed: assembled structure is not Poisson")
    return pi


def quad4_catalog(a_matrix):
    """Catalog data for one dimension-four stratum.

    Generators are built from the kernel basis elements whose own square
    already satisfies condition (ii); families with genuine quadratic
    constraints are reported through the constraint set instead.
    """
    kernel = compatible_cubic_oneforms(a_matrix)
    constraints = quartic_constraints(kernel)
    tracefree = tuple(from_form(exterior_derivative(th)) for th in kernel.basis)
    generators = []
    for theta in kernel.basis:
        dtheta = exterior_derivative(theta)
        if wedge_forms(dtheta, dtheta).is_zero():
            generators.append(build_quadratic_poisson(theta, a_matrix))
    return ClassificationCase(
        matrix=a_matrix,
        kernel=kernel,
        tracefree_basis=tracefree,
        constraints=constraints,
        generators=tuple(generators),
    )
