"""
Lie algebras of ideal stabilizers.

The stabilizer algebra of a homogeneous ideal is the solution space of a
linear system in the ``n^2`` entries of a matrix ``g``: the derivation
``g * f`` of every generator must stay inside the graded piece of the ideal.
From there we search for a Cartan subalgebra (kernel of a high power of
``ad(x)`` for a generic ``x``), certify it, and split it into its toral and
nilpotent parts.
"""

import logging
import random
from dataclasses import dataclass

from symbolic.conf import get_setting
from symbolic.exactnum import ONE, ZERO, is_squarefree, scalar_inverse
from symbolic.exceptions import (
    NonHomogeneousIdealError,
    NotInSpanError,
    RetryBudgetExceeded,
    ToralDecompositionError,
    ZeroAlgebraError,
)
from symbolic.groebner import homogenize_ideal
from symbolic.linalg import (
    ExactMatrix,
    SparseEchelon,
    char_poly,
    is_diagonalizable,
    is_nilpotent,
    jordan_chevalley,
    random_coefficient,
    span_basis,
)
from symbolic.polyring import GradedPiece, variable_derivation

logger = logging.getLogger(__name__)


def normalize_matrix(matrix):
    """Scale so the first nonzero entry in row-major order is 1."""
    lead = next((x for x in matrix.vectorize() if x), None)
    if lead is None or lead == ONE:
        return matrix
    return matrix * scalar_inverse(lead)


def bracket(a, b):
    return a * b - b * a


class LieAlgebraBasis:
    """Linearly independent ``n x n`` matrices, with coordinates on their span."""

    def __init__(self, n, basis):
        self.n = n
        self.basis = list(basis)
        size = n * n
        self._size = size
        self._echelon = SparseEchelon(lead=lambda cols: min(c for c in cols if c < size))
        for index, member in enumerate(self.basis):
            if member.shape != (n, n):
                raise ValueError(f"basis element of shape {member.shape}, expected {n}x{n}")
            row = {k: x for k, x in enumerate(member.vectorize()) if x}
            row[size + index] = ONE
            if not any(c < size for c in self._echelon.reduce(row)):
                raise ValueError("basis matrices are linearly dependent")
            self._echelon.add(row)

    @classmethod
    def full(cls, n):
        """All of ``gl_n`` in matrix units."""
        return cls(n, [ExactMatrix.unit(n, i, j) for i in range(n) for j in range(n)])

    @classmethod
    def spanned_by(cls, n, matrices):
        """Row-reduced, normalized basis of the span of ``matrices``."""
        vectors = span_basis([m.vectorize() for m in matrices], n * n)
        return cls(n, [normalize_matrix(ExactMatrix.from_vector(v, n, n)) for v in vectors])

    @property
    def dim(self):
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __getitem__(self, index):
        return self.basis[index]

    def coordinates(self, matrix):
        """Coefficients expressing ``matrix`` in this basis."""
        size = self._size
        residual = self._echelon.reduce({k: x for k, x in enumerate(matrix.vectorize()) if x})
        if any(c < size for c in residual):
            raise NotInSpanError("matrix is not in the span of the basis")
        return tuple(-residual.get(size + l, ZERO) for l in range(self.dim))

    def contains(self, matrix):
        try:
            self.coordinates(matrix)
        except NotInSpanError:
            return False
        return True

    def combination(self, coefficients):
        result = ExactMatrix.zeros(self.n)
        for c, member in zip(coefficients, self.basis):
            if c:
                result = result + member * c
        return result

    def span_equals(self, other):
        return (
            self.n == other.n
            and self.dim == other.dim
            and all(self.contains(member) for member in other.basis)
        )

    def is_abelian(self):
        return all(
            bracket(a, b).is_zero()
            for i, a in enumerate(self.basis)
            for b in self.basis[i + 1 :]
        )

    def is_closed(self):
        return all(
            self.contains(bracket(a, b))
            for i, a in enumerate(self.basis)
            for b in self.basis[i + 1 :]
        )

    def __repr__(self):
        return f"LieAlgebraBasis(n={self.n}, dim={self.dim})"


@dataclass
class CartanDecomposition:
    cartan: LieAlgebraBasis
    toral: LieAlgebraBasis
    nilpotent: LieAlgebraBasis

    @property
    def cartan_dim(self):
        return self.cartan.dim

    @property
    def toral_dim(self):
        return self.toral.dim

    @property
    def nilpotent_dim(self):
        return self.nilpotent.dim


# =============================================================================
# Stabilizer algebras
# =============================================================================


def _stabilizer_system(ideal, extra_equations=()):
    n = ideal.ring.ngens
    unknowns = n * n
    generators = sorted(ideal.generators, key=lambda g: g.degree())
    system = SparseEchelon()
    for equation in extra_equations:
        system.add(equation)
    if not generators:
        logger.info(f"[LIE-ALGEBRA] zero ideal in {n} variables")

    for degree in sorted({g.degree() for g in generators}):
        piece = GradedPiece([g for g in generators if g.degree() <= degree], degree, ideal.ring)
        for f in (g for g in generators if g.degree() == degree):
            rows = {}
            for i in range(n):
                for j in range(n):
                    residual = piece.reduce(variable_derivation(f, i, j))
                    for monomial, coeff in residual.terms.items():
                        rows.setdefault(monomial, {})[i * n + j] = coeff
            for row in rows.values():
                system.add(row)
        remaining = unknowns - system.rank
        logger.debug(f"[LIE-ALGEBRA] degree {degree}: piece dim {piece.dimension}, {remaining} unknowns free")
        if remaining <= 1:
            break
    return _solve(n, system)


def _solve(n, system):
    matrices = []
    for vector in system.kernel(n * n):
        dense = [vector.get(k, ZERO) for k in range(n * n)]
        matrices.append(normalize_matrix(ExactMatrix.from_vector(dense, n, n)))
    algebra = LieAlgebraBasis(n, matrices)
    logger.info(f"[LIE-ALGEBRA] dim g = {algebra.dim}")
    return algebra


def stabilizer_lie_algebra(ideal):
    """
    Matrices ``g`` with ``g * f`` in the degree-``d`` piece of the ideal for
    every generator ``f`` of degree ``d``.
    """
    offender = next((g for g in ideal.generators if not g.is_homogeneous()), None)
    if offender is not None:
        raise NonHomogeneousIdealError(
            f"generator {offender} is not homogeneous; use the affine stabilizer"
        )
    return _stabilizer_system(ideal)


def affine_stabilizer_lie_algebra(ideal, homogenized=None):
    """
    Stabilizer of ``I^h`` restricted to matrices whose row 0 is ``(l, 0, ..., 0)``.

    The homogenizing variable is variable 0 of the returned algebra's ambient.
    """
    homogenized = homogenized or homogenize_ideal(ideal)
    n = homogenized.ring.ngens
    row_zero = [{j: ONE} for j in range(1, n)]
    return _stabilizer_system(homogenized, row_zero)


# =============================================================================
# Adjoint action and Cartan subalgebras
# =============================================================================


def ad_matrix(x, algebra):
    """``y -> [x, y]`` in the coordinates of ``algebra``; column ``l`` is ``[x, b_l]``."""
    algebra.coordinates(x)
    columns = [algebra.coordinates(bracket(x, member)) for member in algebra.basis]
    return ExactMatrix.from_columns(columns, algebra.dim)


def random_element(algebra, seed=None, rng=None):
    """Combination of basis elements with coefficients from the small pool, never zero."""
    if algebra.dim == 0:
        raise ZeroAlgebraError("the zero algebra has no random elements")
    rng = rng or random.Random(get_setting("DEFAULT_SEED") if seed is None else seed)
    while True:
        coefficients = [random_coefficient(rng) for _ in algebra.basis]
        if any(coefficients):
            return algebra.combination(coefficients)


def _generalized_kernel(matrix):
    """Kernel of ``M^k`` for ``k`` large enough that the rank has stabilized."""
    power = matrix
    rank = power.rank()
    while True:
        following = power * matrix
        next_rank = following.rank()
        if next_rank == rank:
            return power.kernel()
        power, rank = following, next_rank


def _cartan_candidate(x, algebra):
    kernel = _generalized_kernel(ad_matrix(x, algebra))
    return LieAlgebraBasis.spanned_by(algebra.n, [algebra.combination(v) for v in kernel])


def find_cartan(algebra, seed=None, max_retries=None, rng=None, diagnostics=None):
    """
    A certified Cartan subalgebra.

    Basis elements with squarefree characteristic polynomial are tried first,
    then random combinations until the retry budget runs out.
    """
    if algebra.dim == 0:
        raise ZeroAlgebraError("the zero algebra has no Cartan subalgebra")
    rng = rng or random.Random(get_setting("DEFAULT_SEED") if seed is None else seed)
    budget = max_retries or get_setting("RETRY_BUDGET")

    for index, member in enumerate(algebra.basis):
        if not is_squarefree(char_poly(member)):
            continue
        candidate = _cartan_candidate(member, algebra)
        if certify_cartan(candidate, algebra):
            logger.info(f"[CARTAN] basis element {index} is generic, dim c = {candidate.dim}")
            if diagnostics is not None:
                diagnostics.append(f"cartan from basis element {index}")
            return candidate

    for attempt in range(1, budget + 1):
        candidate = _cartan_candidate(random_element(algebra, rng=rng), algebra)
        if certify_cartan(candidate, algebra):
            logger.info(f"[CARTAN] certified on draw {attempt}, dim c = {candidate.dim}")
            if diagnostics is not None:
                diagnostics.append(f"cartan certified on draw {attempt}")
            return candidate
        logger.debug(f"[CARTAN] draw {attempt} gave a non-Cartan kernel of dim {candidate.dim}")
    raise RetryBudgetExceeded("cartan subalgebra", budget)


def _lower_central_series_vanishes(cartan):
    length = cartan.n * cartan.n
    current = [m.vectorize() for m in cartan.basis]
    for _ in range(cartan.dim + 1):
        if not current:
            return True
        members = [ExactMatrix.from_vector(v, cartan.n, cartan.n) for v in current]
        products = [bracket(a, b).vectorize() for a in cartan.basis for b in members]
        current = span_basis(products, length)
    return not current


def certify_cartan(cartan, algebra):
    """Nilpotent, closed, and equal to its own normalizer inside ``algebra``."""
    if cartan.dim == 0:
        return algebra.dim == 0
    if not cartan.is_closed():
        logger.debug("[CARTAN] candidate is not closed under the bracket")
        return False
    if not _lower_central_series_vanishes(cartan):
        logger.debug("[CARTAN] candidate is not nilpotent")
        return False

    span = SparseEchelon()
    for member in cartan.basis:
        span.add({k: x for k, x in enumerate(member.vectorize()) if x})
    system = SparseEchelon()
    for c in cartan.basis:
        rows = {}
        for l, member in enumerate(algebra.basis):
            residual = span.reduce({k: x for k, x in enumerate(bracket(member, c).vectorize()) if x})
            for k, x in residual.items():
                rows.setdefault(k, {})[l] = x
        for row in rows.values():
            system.add(row)
    normalizer_dim = algebra.dim - system.rank
    if normalizer_dim != cartan.dim:
        logger.debug(f"[CARTAN] normalizer has dim {normalizer_dim}, candidate {cartan.dim}")
        return False
    return True


def toral_decomposition(cartan):
    """Split ``c = t + n`` from the Jordan-Chevalley parts of its basis."""
    n = cartan.n
    semisimple_parts = []
    nilpotent_parts = []
    for member in cartan.basis:
        s, nil = jordan_chevalley(member)
        semisimple_parts.append(s)
        nilpotent_parts.append(nil)
    toral = LieAlgebraBasis.spanned_by(n, semisimple_parts)
    nilpotent = LieAlgebraBasis.spanned_by(n, nilpotent_parts)

    for part in toral.basis + nilpotent.basis:
        if not cartan.contains(part):
            raise ToralDecompositionError("a Jordan part left the Cartan subalgebra")
    if toral.dim + nilpotent.dim != cartan.dim:
        raise ToralDecompositionError(
            f"dim t + dim n = {toral.dim + nilpotent.dim}, expected {cartan.dim}"
        )
    if not toral.is_abelian():
        raise ToralDecompositionError("toral part does not commute")
    if not all(is_diagonalizable(t) for t in toral.basis):
        raise ToralDecompositionError("toral element with non-squarefree minimal polynomial")
    if not all(is_nilpotent(x) for x in nilpotent.basis):
        raise ToralDecompositionError("nilpotent part is not nilpotent")
    logger.info(f"[TORAL] dim t = {toral.dim}, dim n = {nilpotent.dim}")
    return CartanDecomposition(cartan, toral, nilpotent)


def cartan_decomposition(algebra, seed=None, max_retries=None, diagnostics=None):
    cartan = find_cartan(algebra, seed=seed, max_retries=max_retries, diagnostics=diagnostics)
    return toral_decomposition(cartan)
