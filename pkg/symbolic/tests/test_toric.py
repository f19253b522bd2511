"""End-to-end toricity decisions and the primality checks behind them."""

import itertools
import math
import random
from pathlib import Path
from unittest.mock import patch

from django.test import SimpleTestCase, tag

from symbolic.exceptions import (
    GroebnerBudgetExceeded,
    NonBinomialIdealError,
    NonHomogeneousIdealError,
    RetryBudgetExceeded,
)
from symbolic.groebner import Ideal, ideals_equal
from symbolic.linalg import ExactMatrix, IntMatrix
from symbolic.liestab import LieAlgebraBasis
from symbolic.polyring import PolyRing
from symbolic.toric import (
    ExponentLattice,
    ToricOptions,
    ToricStatus,
    affine_normal_form,
    binomial_primality,
    complexity_report,
    decide,
    decide_toric,
    decide_toric_affine,
    diagonalize_toral,
    is_nondegenerate,
    transform_ideal,
    verify_diagonalizes,
)
from symbolic.utils.ideal_file import load_ideal

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures" / "ideals"


def fixture(name):
    return load_ideal(FIXTURES / f"{name}.ideal")


def ideal_of(names, texts):
    return Ideal.from_strings(PolyRing(tuple(names)), texts)


def same_columns_up_to_scaling(computed, expected):
    """Columns agree after a permutation and nonzero rescaling of each column"""
    remaining = list(expected.columns())
    for column in computed.columns():
        lead = next(k for k, x in enumerate(column) if x)
        match = next(
            (
                candidate
                for candidate in remaining
                if candidate[lead] and all(candidate[lead] * x == column[lead] * y for x, y in zip(column, candidate))
            ),
            None,
        )
        if match is None:
            return False
        remaining.remove(match)
    return not remaining


# joint eigenvectors of the complete intersection stabilizer, one per column
COMPLETE_INTERSECTION_TRANSFORM = ExactMatrix(
    [
        [1, 1, 1, 1, 1, 1, 1, 1],
        [-1, 1, 1, -1, 1, -1, -1, 1],
        [1, -1, 1, -1, 1, -1, 1, -1],
        [-1, -1, 1, 1, 1, 1, -1, -1],
        [1, 1, 1, 1, -1, -1, -1, -1],
        [-1, 1, 1, -1, -1, 1, 1, -1],
        [1, -1, 1, -1, -1, 1, -1, 1],
        [-1, -1, 1, 1, -1, -1, 1, 1],
    ]
)


# =============================================================================
# BUILDING BLOCKS
# =============================================================================


class StatusTests(SimpleTestCase):
    def test_exit_codes(self):
        self.assertEqual(ToricStatus.TORIC.exit_code, 0)
        self.assertEqual(ToricStatus.BINOMIAL_NOT_PRIME.exit_code, 1)
        self.assertEqual(ToricStatus.NOT_BINOMIAL.exit_code, 1)
        self.assertEqual(ToricStatus.INPUT_NOT_HANDLED.exit_code, 2)

    def test_effective_seed(self):
        self.assertEqual(ToricOptions().effective_seed, 0)
        self.assertEqual(ToricOptions(seed=9).effective_seed, 9)


class TransformTests(SimpleTestCase):
    def test_identity(self):
        ideal = fixture("quadric")
        moved = transform_ideal(ideal, ExactMatrix.identity(3))
        self.assertEqual(moved.generators, ideal.generators)

    def test_composition(self):
        """Moving by S and then by T is moving by T * S"""
        ideal = ideal_of("xy", ["x^2 - 2*x*y", "y^3"])
        s = ExactMatrix([[1, 1], [0, 1]])
        t = ExactMatrix([[2, 0], [1, -1]])
        twice = transform_ideal(transform_ideal(ideal, s), t)
        once = transform_ideal(ideal, t * s)
        self.assertTrue(ideals_equal(twice, once))

    def test_substitutes_the_inverse(self):
        """S.I for S = [[1, 0], [1, 1]] sends x - y to 2x - y"""
        ideal = ideal_of("xy", ["x - y"])
        moved = transform_ideal(ideal, ExactMatrix([[1, 0], [1, 1]]))
        self.assertTrue(ideals_equal(moved, ideal_of("xy", ["2*x - y"])))

    def test_permutation_fixes_a_symmetric_ideal(self):
        ideal = ideal_of("xy", ["x - y"])
        moved = transform_ideal(ideal, ExactMatrix([[0, 1], [1, 0]]))
        self.assertTrue(ideals_equal(moved, ideal))

    def test_diagonalize_toral(self):
        toral = LieAlgebraBasis(2, [ExactMatrix([[1, 1], [0, 2]])])
        p = diagonalize_toral(toral, seed=0)
        self.assertTrue(verify_diagonalizes(p, toral))
        self.assertEqual(diagonalize_toral(LieAlgebraBasis(3, [])), ExactMatrix.identity(3))

    def test_affine_normal_form(self):
        normal = affine_normal_form(ExactMatrix([[2, 0], [4, 1]]))
        self.assertEqual(normal, ExactMatrix([[1, 0], [2, 1]]))
        combined = affine_normal_form(ExactMatrix([[1, 1], [0, 1]]))
        self.assertEqual(combined.row(0), (1, 0))
        with self.assertRaises(ValueError):
            affine_normal_form(ExactMatrix([[0, 0], [1, 2]]))

    def test_verify_diagonalizes(self):
        swap = ExactMatrix([[0, 1], [1, 0]])
        toral = LieAlgebraBasis(2, [swap])
        self.assertTrue(verify_diagonalizes(ExactMatrix([[1, 1], [1, -1]]), toral))
        self.assertFalse(verify_diagonalizes(ExactMatrix.identity(2), toral))


class PrimalityTests(SimpleTestCase):
    def test_exponent_lattice(self):
        ring = PolyRing(("x1", "x2", "x3"))
        basis = Ideal.from_strings(ring, ["x1*x2 - x3^2"]).groebner()
        lattice = ExponentLattice.from_binomials(basis, 3)
        self.assertEqual(lattice.invariant_factors(), [1])
        self.assertTrue(lattice.is_saturated())

    def test_lattice_torsion(self):
        basis = ideal_of("xy", ["x^2 - y^2"]).groebner()
        lattice = ExponentLattice.from_binomials(basis, 2)
        self.assertEqual(lattice.torsion(), [2])

    def test_lattice_needs_binomials(self):
        basis = ideal_of("xyz", ["x^2 + y^2 + z^2"]).groebner()
        with self.assertRaises(NonBinomialIdealError):
            ExponentLattice.from_binomials(basis, 3)

    def test_prime_binomial(self):
        self.assertTrue(binomial_primality(fixture("quadric")).prime)

    def test_unit_ideal(self):
        result = binomial_primality(ideal_of("xy", ["x*y - 1", "x"]))
        self.assertFalse(result.prime)
        self.assertEqual(result.witness, "1")

    def test_colon_grows(self):
        result = binomial_primality(ideal_of("xy", ["x*y"]))
        self.assertFalse(result.prime)
        self.assertIn("not in I", result.witness)

    def test_lattice_not_saturated(self):
        result = binomial_primality(ideal_of("xy", ["x^2 - y^2"]))
        self.assertFalse(result.prime)
        self.assertIn("invariant factor 2", result.witness)

    def test_variables_in_the_basis_are_projected(self):
        self.assertTrue(binomial_primality(ideal_of("xyz", ["x", "y - z"])).prime)
        self.assertTrue(binomial_primality(ideal_of("xyzw", ["w", "x*y - z^2"])).prime)

    def test_rejects_non_binomial(self):
        with self.assertRaises(NonBinomialIdealError):
            binomial_primality(ideal_of("xyz", ["x^2 + y^2 + z^2"]))

    def test_nondegenerate(self):
        self.assertTrue(is_nondegenerate(fixture("quadric")))
        self.assertFalse(is_nondegenerate(ideal_of("xy", ["x - y", "x^2"])))

    def test_complexity_report(self):
        self.assertEqual(complexity_report(fixture("quadric"), 1), (2, 1))
        self.assertEqual(complexity_report(fixture("quadric"), 3), (2, 0))


class LatticeIndexTests(SimpleTestCase):
    """Invariant factors against a direct count of Z^n / L"""

    def residue_classes(self, columns, n):
        inverse = ExactMatrix.from_columns(columns, n).inverse()
        size = abs(IntMatrix.from_columns(columns, n).det())
        representatives = []
        for point in itertools.product(range(size), repeat=n):
            if not any(self.in_lattice(inverse, point, other) for other in representatives):
                representatives.append(point)
        return len(representatives)

    def in_lattice(self, inverse, a, b):
        return all(x.denominator == 1 for x in inverse.apply([u - v for u, v in zip(a, b)]))

    def test_index_matches_invariant_factors(self):
        """Random full-rank lattices with |det| <= 6"""
        rng = random.Random(7)
        counts = []
        while len(counts) < 60:
            n = rng.choice((2, 3))
            columns = [tuple(rng.randint(-2, 2) for _ in range(n)) for _ in range(n)]
            if not 1 <= abs(IntMatrix.from_columns(columns, n).det()) <= 6:
                continue
            lattice = ExponentLattice(columns, n)
            count = self.residue_classes(columns, n)
            self.assertEqual(count, math.prod(lattice.invariant_factors()), columns)
            self.assertEqual(lattice.torsion() == [], count == 1, columns)
            counts.append(count)
        self.assertIn(1, counts)
        self.assertGreater(max(counts), 1)


# =============================================================================
# DECISIONS
# =============================================================================


class DecideToricTests(SimpleTestCase):
    def test_quadric_is_toric(self):
        verdict = decide_toric(fixture("quadric"))
        self.assertEqual(verdict.status, ToricStatus.TORIC)
        self.assertTrue(verdict.is_toric)
        self.assertEqual(verdict.lie_dim, 4)
        self.assertEqual(verdict.torus_dim, 2)
        self.assertEqual(verdict.variety_dim, 2)
        self.assertEqual(verdict.complexity, 0)
        self.assertFalse(verdict.unital_excluded)
        self.assertIn("dim g = 4", verdict.diagnostics)

    def test_transformed_ideal_matches_transform(self):
        verdict = decide_toric(fixture("quadric"), ToricOptions(seed=3))
        moved = transform_ideal(fixture("quadric"), verdict.transform.inverse())
        self.assertTrue(ideals_equal(moved, verdict.transformed))

    def test_seed_stability(self):
        outcomes = {
            (verdict.status, verdict.torus_dim)
            for verdict in (decide_toric(fixture("quadric"), ToricOptions(seed=s)) for s in range(5))
        }
        self.assertEqual(outcomes, {(ToricStatus.TORIC, 2)})

    def test_product_of_lines_is_not_prime(self):
        verdict = decide_toric(ideal_of("xy", ["x^2 - y^2"]))
        self.assertEqual(verdict.status, ToricStatus.BINOMIAL_NOT_PRIME)
        self.assertEqual(verdict.torus_dim, 2)
        self.assertIsNotNone(verdict.witness)

    def test_monomial_ideal_is_not_prime(self):
        verdict = decide_toric(ideal_of("xy", ["x*y"]))
        self.assertEqual(verdict.status, ToricStatus.BINOMIAL_NOT_PRIME)
        self.assertEqual(verdict.status.exit_code, 1)

    def test_scalar_stabilizer(self):
        """Only scalars fix <x^4, y^4, x^3*y - x*y^3>, so the Lie side cannot conclude"""
        verdict = decide_toric(fixture("ex46"))
        self.assertFalse(verdict.is_toric)
        self.assertEqual(verdict.lie_dim, 1)
        self.assertEqual(verdict.torus_dim, 1)

    def test_non_homogeneous_rejected(self):
        with self.assertRaises(NonHomogeneousIdealError):
            decide_toric(ideal_of("xy", ["x - 1"]))

    def test_assume_prime_shortcut(self):
        verdict = decide_toric(fixture("quadric"), ToricOptions(assume_prime=True))
        self.assertEqual(verdict.status, ToricStatus.TORIC)
        self.assertEqual(verdict.complexity, 0)
        self.assertIsNone(verdict.transformed)
        self.assertTrue(any("binomiality check skipped" in note for note in verdict.diagnostics))

    def test_assume_prime_needs_a_large_torus(self):
        verdict = decide_toric(ideal_of("xy", ["x^2 - y^2"]), ToricOptions(assume_prime=True))
        self.assertTrue(any("not applicable" in note for note in verdict.diagnostics))
        self.assertEqual(verdict.status, ToricStatus.BINOMIAL_NOT_PRIME)

    @patch("symbolic.toric.cartan_decomposition")
    def test_retry_budget_gives_up(self, mock_decomposition):
        mock_decomposition.side_effect = RetryBudgetExceeded("cartan subalgebra", 3)
        verdict = decide_toric(fixture("quadric"))
        self.assertEqual(verdict.status, ToricStatus.INPUT_NOT_HANDLED)
        self.assertEqual(verdict.status.exit_code, 2)
        self.assertIn("after 3 attempts", verdict.diagnostics[-1])

    @patch("symbolic.toric._check_binomial_prime")
    def test_pair_budget_gives_up(self, mock_check):
        mock_check.side_effect = GroebnerBudgetExceeded(10)
        verdict = decide_toric(fixture("quadric"), ToricOptions(pair_budget=10))
        self.assertEqual(verdict.status, ToricStatus.INPUT_NOT_HANDLED)
        self.assertEqual(verdict.torus_dim, 2)

    def test_dispatch(self):
        self.assertEqual(decide(fixture("quadric")).status, ToricStatus.TORIC)
        self.assertEqual(decide(ideal_of("x", ["x - 1"]), affine=True).status, ToricStatus.TORIC)


class DecideAffineTests(SimpleTestCase):
    def test_point_is_toric_by_translation(self):
        verdict = decide_toric_affine(ideal_of("x", ["x - 1"]))
        self.assertEqual(verdict.status, ToricStatus.TORIC)
        self.assertEqual(verdict.transform.row(0), (1, 0))
        self.assertEqual(verdict.affine_part.translation, (1,))
        self.assertEqual(verdict.affine_part.linear, ExactMatrix([[1]]))
        self.assertEqual(verdict.torus_dim, verdict.toral_dim - 1)

    def test_pair_budget_reaches_homogenization(self):
        verdict = decide_toric_affine(ideal_of("xy", ["x^2 - y", "x*y - 1"]), ToricOptions(pair_budget=1))
        self.assertEqual(verdict.status, ToricStatus.INPUT_NOT_HANDLED)
        self.assertIsNone(verdict.lie_dim)

    def test_homogeneous_input_accepted(self):
        verdict = decide_toric_affine(fixture("quadric"))
        self.assertEqual(verdict.transform.row(0)[0], 1)
        self.assertIsNotNone(verdict.status)


# =============================================================================
# WORKED EXAMPLES
# =============================================================================


@tag("slow")
class WorkedExampleTests(SimpleTestCase):
    def test_three_quadrics_in_eight_variables(self):
        verdict = decide_toric(fixture("ex42"))
        self.assertEqual(verdict.status, ToricStatus.TORIC)
        self.assertEqual(verdict.lie_dim, 5)
        self.assertEqual(verdict.torus_dim, 5)
        self.assertEqual(verdict.nilpotent_dim, 0)
        self.assertTrue(same_columns_up_to_scaling(verdict.transform, COMPLETE_INTERSECTION_TRANSFORM))

    def test_dehomogenized_quadrics_stay_non_toric(self):
        verdict = decide_toric_affine(fixture("ex42_affine"))
        self.assertEqual(verdict.status, ToricStatus.NOT_BINOMIAL)

    def test_binary_cube_quadrics(self):
        verdict = decide_toric(fixture("ex44"))
        self.assertEqual(verdict.status, ToricStatus.TORIC)
        self.assertEqual(verdict.toral_dim, verdict.cartan_dim)

    def test_colored_path(self):
        outcomes = {
            (verdict.status, verdict.torus_dim)
            for verdict in (decide_toric(fixture("ex45"), ToricOptions(seed=s)) for s in range(5))
        }
        self.assertEqual(len(outcomes), 1)
        self.assertEqual(next(iter(outcomes))[0], ToricStatus.TORIC)

    def test_diamond_plus_edge(self):
        verdict = decide_toric(fixture("diamond_plus_edge"))
        self.assertFalse(verdict.is_toric)
        self.assertEqual(verdict.lie_dim, 56)
        self.assertEqual(verdict.cartan_dim, 8)
        self.assertEqual(verdict.nilpotent_dim, 0)
        self.assertEqual(verdict.variety_dim, 11)
        self.assertEqual(verdict.complexity, 3)
        self.assertTrue(verdict.unital_excluded)
