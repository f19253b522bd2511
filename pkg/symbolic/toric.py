"""
Deciding whether an ideal becomes toric after a change of coordinates.

The pipeline: stabilizer Lie algebra, certified Cartan subalgebra, its
toral part, a simultaneous diagonalizer ``P`` of the toral part, the ideal
in the new coordinates ``x -> P x``, then binomiality and binomial
primality of the result. The affine variant runs the same steps on the
homogenized ideal with the extra row-0 condition and reports the transform
as a translation plus a linear block.
"""

import logging
import random
from dataclasses import dataclass, field
from enum import Enum

from symbolic.conf import get_setting
from symbolic.exactnum import SplitEvent, deepest_tower, describe_tower, scalar_inverse
from symbolic.exceptions import (
    BranchDisagreementError,
    GroebnerBudgetExceeded,
    NonBinomialIdealError,
    NonHomogeneousIdealError,
    RetryBudgetExceeded,
)
from symbolic.groebner import (
    Ideal,
    colon,
    contains,
    homogenize_ideal,
    krull_dimension,
    member,
    require_binomial,
)
from symbolic.linalg import (
    ExactMatrix,
    IntMatrix,
    invariant_factors,
    invert_resolving_splits,
    simultaneous_diagonalizer,
)
from symbolic.liestab import (
    affine_stabilizer_lie_algebra,
    cartan_decomposition,
    stabilizer_lie_algebra,
)
from symbolic.polyring import DEGREVLEX, PolyRing, dehomogenize, substitute_linear

logger = logging.getLogger(__name__)


class ToricStatus(str, Enum):
    TORIC = "Toric"
    BINOMIAL_NOT_PRIME = "BinomialNotPrime"
    NOT_BINOMIAL = "NotBinomial"
    INPUT_NOT_HANDLED = "InputNotHandled"

    @property
    def exit_code(self):
        if self is ToricStatus.TORIC:
            return 0
        if self is ToricStatus.INPUT_NOT_HANDLED:
            return 2
        return 1


@dataclass
class ToricOptions:
    seed: int = None
    max_retries: int = None
    assume_prime: bool = False
    pair_budget: int = None

    @property
    def effective_seed(self):
        return get_setting("DEFAULT_SEED") if self.seed is None else self.seed


@dataclass
class AffinePart:
    """``x -> linear x + translation``."""

    translation: tuple
    linear: ExactMatrix


@dataclass
class ToricVerdict:
    status: ToricStatus = None
    transform: ExactMatrix = None
    torus_dim: int = None
    variety_dim: int = None
    complexity: int = None
    diagnostics: list = field(default_factory=list)
    lie_dim: int = None
    cartan_dim: int = None
    toral_dim: int = None
    nilpotent_dim: int = None
    witness: str = None
    affine_part: AffinePart = None
    unital_excluded: bool = None
    transformed: Ideal = None

    @property
    def is_toric(self):
        return self.status is ToricStatus.TORIC

    @property
    def towers(self):
        if self.transform is None:
            return []
        return describe_tower(deepest_tower(self.transform.entries()))

    def note(self, message):
        self.diagnostics.append(message)


@dataclass
class PrimalityResult:
    prime: bool
    witness: str = None


class ExponentLattice:
    """Columns ``u - v`` for the binomials ``x^u - a x^v`` of a reduced basis."""

    def __init__(self, vectors, rank):
        self.vectors = [tuple(v) for v in vectors]
        self.rank = rank
        self.generators = IntMatrix.from_columns(self.vectors, rank)

    @classmethod
    def from_binomials(cls, basis, rank):
        vectors = []
        for g in basis:
            if len(g) != 2:
                raise NonBinomialIdealError(f"{g} is not a binomial with two terms")
            u, v = g.terms
            vectors.append(tuple(a - b for a, b in zip(u, v)))
        return cls(vectors, rank)

    def invariant_factors(self):
        return invariant_factors(self.generators)

    def torsion(self):
        return [d for d in self.invariant_factors() if d != 1]

    def is_saturated(self):
        return not self.torsion()


# =============================================================================
# Pipeline steps
# =============================================================================


def diagonalize_toral(toral, seed=None, max_retries=None, rng=None):
    """``P`` with ``P^-1 t P`` diagonal for every basis element of ``toral``."""
    if toral.dim == 0:
        return ExactMatrix.identity(toral.n)
    return simultaneous_diagonalizer(toral.basis, seed=seed, max_retries=max_retries, rng=rng)


def transform_ideal(ideal, transform, inverse=None):
    """``S.I``: generators ``f(S^-1 x)``."""
    inverse = inverse if inverse is not None else transform.inverse()
    return Ideal(ideal.ring, [substitute_linear(g, inverse) for g in ideal.generators])


def is_nondegenerate(ideal, budget=None):
    """No linear form in the ideal, i.e. none in its degrevlex basis."""
    return all(g.degree() != 1 for g in ideal.groebner(DEGREVLEX, budget=budget))


def binomial_primality(ideal, budget=None):
    """
    Primality of a binomial ideal: quotient the variables in the basis,
    check colon stability under every remaining variable, then check that
    the exponent lattice is saturated.
    """
    basis = ideal.groebner(DEGREVLEX, budget=budget)
    if any(g.is_constant() for g in basis):
        return PrimalityResult(False, "1")
    require_binomial(ideal, budget=budget)

    ring = ideal.ring
    linear = {next(iter(g.support())) for g in basis if g.is_monomial() and g.degree() == 1}
    kept = [i for i in range(ring.ngens) if i not in linear]
    if linear:
        projected = PolyRing(tuple(ring.names[i] for i in kept), ring.order)
        positions = [None] * ring.ngens
        for new, old in enumerate(kept):
            positions[old] = new
        rest = [g.reindex(projected, positions) for g in basis if not (g.is_monomial() and g.degree() == 1)]
        ideal = Ideal(projected, rest)
        ring = projected
        logger.debug(f"[PRIMALITY] working modulo {len(linear)} variables")
    if ideal.is_zero():
        return PrimalityResult(True)

    for i in range(ring.ngens):
        x = ring.variable(i)
        quotient = colon(ideal, x, budget=budget)
        if not contains(ideal, quotient):
            witness = next(g for g in quotient.generators if not member(g, ideal))
            logger.debug(f"[PRIMALITY] colon by {ring.names[i]} grows")
            return PrimalityResult(False, f"{witness} not in I but {ring.names[i]}*({witness}) is")

    lattice = ExponentLattice.from_binomials(require_binomial(ideal, budget=budget), ring.ngens)
    torsion = lattice.torsion()
    if torsion:
        return PrimalityResult(False, f"exponent lattice has invariant factor {torsion[0]}")
    return PrimalityResult(True)


def complexity_report(ideal, torus_dim, budget=None):
    """``(dim V(I), dim V(I) - dim T)``, the second clamped at zero."""
    variety_dim = krull_dimension(ideal, budget=budget)
    return variety_dim, max(variety_dim - torus_dim, 0)


def _check_binomial_prime(ideal, budget):
    basis = ideal.groebner(DEGREVLEX, budget=budget)
    offender = next((g for g in basis if len(g) > 2), None)
    if offender is not None:
        return ToricStatus.NOT_BINOMIAL, f"{offender}"
    result = binomial_primality(ideal, budget=budget)
    if not result.prime:
        return ToricStatus.BINOMIAL_NOT_PRIME, result.witness
    return ToricStatus.TORIC, None


def _check_on_branches(ideal, budget, verdict):
    """Run the checks; on a tower split run every branch and require agreement."""
    try:
        return _check_binomial_prime(ideal, budget)
    except SplitEvent as event:
        top = deepest_tower([c for g in ideal.generators for c in g.coefficients()])
        outcomes = []
        for _, rebase in event.branches(top):
            branch = Ideal(ideal.ring, [g.map_coeffs(rebase) for g in ideal.generators])
            outcomes.append(_check_on_branches(branch, budget, verdict))
        verdict.note(f"tower split at {event.level.name}: {len(outcomes)} branches checked")
        logger.info(f"[TOWER-SPLIT] {len(outcomes)} branches checked at {event.level.name}")
        statuses = {status for status, _ in outcomes}
        if len(statuses) > 1:
            raise BranchDisagreementError(
                "branches of a split tower disagree: " + ", ".join(s.value for s, _ in outcomes)
            )
        return outcomes[0]


def _record_decomposition(verdict, algebra, decomposition):
    verdict.lie_dim = algebra.dim
    verdict.cartan_dim = decomposition.cartan_dim
    verdict.toral_dim = decomposition.toral_dim
    verdict.nilpotent_dim = decomposition.nilpotent_dim
    verdict.note(f"dim g = {algebra.dim}")
    verdict.note(f"dim c = {decomposition.cartan_dim}")
    verdict.note(f"dim t = {decomposition.toral_dim}, dim n = {decomposition.nilpotent_dim}")


def _finish_complexity(verdict, ideal, budget):
    try:
        verdict.variety_dim, verdict.complexity = complexity_report(ideal, verdict.torus_dim, budget)
        verdict.unital_excluded = verdict.complexity > 0
    except GroebnerBudgetExceeded as exc:
        verdict.note(f"complexity unknown: {exc}")


def _run(verdict, step):
    try:
        step()
    except (RetryBudgetExceeded, GroebnerBudgetExceeded) as exc:
        logger.warning(f"[TORIC] giving up: {exc}")
        verdict.status = ToricStatus.INPUT_NOT_HANDLED
        verdict.note(str(exc))
    return verdict


def decide_toric(ideal, options=None):
    """
    Decide whether a homogeneous ideal is binomial and prime after a linear
    change of coordinates. The verdict's transform ``P`` is the substitution
    ``x -> P x``.
    """
    options = options or ToricOptions()
    if not ideal.is_homogeneous():
        raise NonHomogeneousIdealError("ideal is not homogeneous; use the affine variant")
    verdict = ToricVerdict()
    budget = options.pair_budget
    rng = random.Random(options.effective_seed)

    def step():
        algebra = stabilizer_lie_algebra(ideal)
        decomposition = cartan_decomposition(
            algebra, seed=rng.randrange(2**32), max_retries=options.max_retries, diagnostics=verdict.diagnostics
        )
        _record_decomposition(verdict, algebra, decomposition)
        verdict.torus_dim = decomposition.toral_dim
        transform, inverse = invert_resolving_splits(
            diagonalize_toral(decomposition.toral, max_retries=options.max_retries, rng=rng)
        )
        verdict.transform = transform

        if options.assume_prime and is_nondegenerate(ideal, budget):
            variety_dim = krull_dimension(ideal, budget=budget)
            if verdict.torus_dim == variety_dim:
                verdict.status = ToricStatus.TORIC
                verdict.variety_dim, verdict.complexity = variety_dim, 0
                verdict.unital_excluded = False
                verdict.note("known prime and nondegenerate with dim t = dim V(I): binomiality check skipped")
                logger.info("[TORIC] known-prime shortcut taken")
                return
            verdict.note("known-prime shortcut not applicable: dim t < dim V(I)")

        transformed = transform_ideal(ideal, inverse, inverse=transform)
        verdict.transformed = transformed
        verdict.status, verdict.witness = _check_on_branches(transformed, budget, verdict)
        logger.info(f"[TORIC] {verdict.status.value} with torus dim {verdict.torus_dim}")
        _finish_complexity(verdict, ideal, budget)

    return _run(verdict, step)


def affine_normal_form(transform):
    """
    Rescale and combine the columns of ``P`` meeting row 0 so that row 0
    becomes ``(1, 0, ..., 0)``.

    Every column with a nonzero row-0 entry lies in the same joint
    eigenspace, so the result still diagonalizes the toral algebra.
    """
    n = transform.rows
    columns = [list(c) for c in transform.columns()]
    anchor = next((k for k, c in enumerate(columns) if c[0]), None)
    if anchor is None:
        raise ValueError("no column meets the homogenizing coordinate")
    scale = scalar_inverse(columns[anchor][0])
    head = [x * scale for x in columns[anchor]]
    others = []
    for k, c in enumerate(columns):
        if k == anchor:
            continue
        if c[0]:
            factor = c[0]
            c = [x - factor * y for x, y in zip(c, head)]
        others.append(c)
    return ExactMatrix.from_columns([head] + others, n)


def decide_toric_affine(ideal, options=None):
    """
    Affine-linear variant: ``x -> L x + b``. Checks run on the dehomogenized
    transformed ideal; the scalar direction of the homogenized stabilizer
    acts trivially and is not counted in the torus dimension.
    """
    options = options or ToricOptions()
    verdict = ToricVerdict()
    budget = options.pair_budget
    rng = random.Random(options.effective_seed)

    def step():
        homogenized = homogenize_ideal(ideal, budget=budget)
        algebra = affine_stabilizer_lie_algebra(ideal, homogenized=homogenized)
        decomposition = cartan_decomposition(
            algebra, seed=rng.randrange(2**32), max_retries=options.max_retries, diagnostics=verdict.diagnostics
        )
        _record_decomposition(verdict, algebra, decomposition)
        verdict.torus_dim = max(decomposition.toral_dim - 1, 0)
        diagonalizer = diagonalize_toral(decomposition.toral, max_retries=options.max_retries, rng=rng)
        transform, inverse = invert_resolving_splits(affine_normal_form(diagonalizer))
        verdict.transform = transform
        n = transform.rows
        verdict.affine_part = AffinePart(
            translation=tuple(transform[i, 0] for i in range(1, n)),
            linear=transform.submatrix(range(1, n), range(1, n)),
        )

        moved = transform_ideal(homogenized, inverse, inverse=transform)
        transformed = Ideal(ideal.ring, [dehomogenize(g, ideal.ring) for g in moved.generators])
        verdict.transformed = transformed
        verdict.status, verdict.witness = _check_on_branches(transformed, budget, verdict)
        logger.info(f"[TORIC-AFFINE] {verdict.status.value} with torus dim {verdict.torus_dim}")
        _finish_complexity(verdict, ideal, budget)

    return _run(verdict, step)


def verify_diagonalizes(transform, toral):
    """``P^-1 t P`` diagonal for every toral basis element."""
    inverse = transform.inverse()
    return all((inverse * t * transform).is_diagonal() for t in toral.basis)


def decide(ideal, options=None, affine=False):
    """Dispatch to the linear or the affine-linear decision."""
    if affine:
        return decide_toric_affine(ideal, options)
    return decide_toric(ideal, options)
