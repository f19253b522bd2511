"""Exact matrices, eigen decomposition and Smith normal form."""

import random
from unittest.mock import patch

from django.test import SimpleTestCase, override_settings, tag
from sympy import QQ

from symbolic.exactnum import ZERO, TowerElem, UPoly
from symbolic.exceptions import (
    NotDiagonalizableError,
    RetryBudgetExceeded,
    SingularMatrixError,
)
from symbolic.linalg import (
    ExactMatrix,
    IntMatrix,
    SparseEchelon,
    char_poly,
    eigen_decompose,
    invariant_factors,
    is_diagonalizable,
    is_nilpotent,
    jordan_chevalley,
    min_poly,
    rref_and_kernel,
    simultaneous_diagonalizer,
    smith_normal_form,
    span_basis,
)


def random_rational_matrix(rng, n):
    return ExactMatrix(
        [[QQ(rng.randint(-3, 3), rng.choice([1, 1, 2, 3])) for _ in range(n)] for _ in range(n)]
    )


def random_int_matrix(rng, rows, cols):
    return IntMatrix([[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)])


# =============================================================================
# DENSE MATRICES
# =============================================================================


class ExactMatrixTests(SimpleTestCase):
    def test_product_and_inverse(self):
        m = ExactMatrix([[1, 2], [3, 4]])
        self.assertEqual(m * m.inverse(), ExactMatrix.identity(2))
        self.assertEqual(m.inverse(), ExactMatrix([[-2, 1], [QQ(3, 2), QQ(-1, 2)]]))

    def test_singular_inverse(self):
        with self.assertRaises(SingularMatrixError):
            ExactMatrix([[1, 2], [2, 4]]).inverse()

    def test_kernel(self):
        """Kernel vectors satisfy M v = 0 with a 1 in the free column"""
        m = ExactMatrix([[1, 2, 3], [2, 4, 6]])
        reduced, pivots, kernel = rref_and_kernel(m)
        self.assertEqual(pivots, (0,))
        self.assertEqual(len(kernel), 2)
        for v in kernel:
            self.assertTrue(all(x == 0 for x in m.apply(v)))
        self.assertEqual(kernel[0], (QQ(-2), QQ(1), ZERO))

    def test_fraction_free_agrees_with_gauss_jordan(self):
        """Both elimination paths give the same reduced form"""
        rng = random.Random(3)
        matrices = [random_rational_matrix(rng, 5) for _ in range(10)]
        matrices.append(ExactMatrix([[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, 0, 1]]))
        for m in matrices:
            with override_settings(TORIC_SETTINGS={"BAREISS_THRESHOLD": 10**6}):
                expected = rref_and_kernel(m)
            with override_settings(TORIC_SETTINGS={"BAREISS_THRESHOLD": 0}):
                self.assertEqual(rref_and_kernel(m), expected)

    def test_det_and_char_poly(self):
        m = ExactMatrix([[1, 2], [3, 4]])
        self.assertEqual(m.det(), QQ(-2))
        self.assertEqual(char_poly(m), UPoly.from_high([QQ(1), QQ(-5), QQ(-2)]))

    def test_min_poly(self):
        """diag(1, 1, 2) has minimal polynomial (t - 1)(t - 2)"""
        m = ExactMatrix.diagonal([QQ(1), QQ(1), QQ(2)])
        self.assertEqual(min_poly(m), UPoly.from_high([QQ(1), QQ(-3), QQ(2)]))
        self.assertTrue(is_diagonalizable(m))
        self.assertFalse(is_diagonalizable(ExactMatrix([[1, 1], [0, 1]])))


# =============================================================================
# JORDAN-CHEVALLEY AND EIGENSPACES
# =============================================================================


class JordanChevalleyTests(SimpleTestCase):
    def assertDecomposition(self, m):
        s, n = jordan_chevalley(m)
        self.assertEqual(s + n, m)
        self.assertEqual(s * n, n * s)
        self.assertTrue(is_nilpotent(n))
        self.assertTrue(is_diagonalizable(s))

    def test_jordan_block(self):
        """A 2x2 Jordan block splits into 2I plus the shift"""
        s, n = jordan_chevalley(ExactMatrix([[2, 1], [0, 2]]))
        self.assertEqual(s, ExactMatrix.diagonal([QQ(2), QQ(2)]))
        self.assertEqual(n, ExactMatrix([[0, 1], [0, 0]]))

    def test_mixed_matrix(self):
        self.assertDecomposition(ExactMatrix([[1, 1, 0], [0, 1, 0], [0, 0, 3]]))
        self.assertDecomposition(ExactMatrix([[0, 1, 2], [0, 0, 1], [0, 0, 0]]))

    @tag("slow")
    def test_random_matrices(self):
        """Identities hold on 200 random rational matrices up to 5x5"""
        rng = random.Random(11)
        for _ in range(200):
            self.assertDecomposition(random_rational_matrix(rng, rng.randint(1, 5)))


class EigenTests(SimpleTestCase):
    def test_rational_spectrum(self):
        """The swap matrix has eigenvalues 1 and -1"""
        result = eigen_decompose(ExactMatrix([[0, 1], [1, 0]]))
        self.assertEqual(sorted(value for value, _ in result), [QQ(-1), QQ(1)])

    def test_irrational_spectrum(self):
        """[[0, 2], [1, 0]] needs sqrt(2); eigenvectors are exact"""
        m = ExactMatrix([[0, 2], [1, 0]])
        result = eigen_decompose(m)
        self.assertEqual(len(result), 2)
        self.assertTrue(any(isinstance(value, TowerElem) for value, _ in result))
        for value, vectors in result:
            for v in vectors:
                image = m.apply(v)
                self.assertTrue(all(a == value * b for a, b in zip(image, v)))

    def test_not_diagonalizable(self):
        with self.assertRaises(NotDiagonalizableError):
            eigen_decompose(ExactMatrix([[1, 1], [0, 1]]))

    def test_simultaneous_diagonalizer(self):
        """One S diagonalizes a commuting family"""
        family = [ExactMatrix([[1, 1], [1, 1]]), ExactMatrix([[2, 1], [1, 2]])]
        s = simultaneous_diagonalizer(family, seed=5)
        inverse = s.inverse()
        for member in family:
            self.assertTrue((inverse * member * s).is_diagonal())

    def test_seed_is_reproducible(self):
        family = [ExactMatrix([[0, 1, 0], [1, 0, 0], [0, 0, 1]]), ExactMatrix.diagonal([QQ(1), QQ(1), QQ(3)])]
        self.assertEqual(
            simultaneous_diagonalizer(family, seed=9),
            simultaneous_diagonalizer(family, seed=9),
        )

    @patch("symbolic.linalg.random_coefficient", return_value=ZERO)
    def test_retry_budget(self, _):
        """All-zero draws exhaust the budget"""
        with self.assertRaises(RetryBudgetExceeded):
            simultaneous_diagonalizer([ExactMatrix.identity(2)], seed=1, max_retries=3)


# =============================================================================
# SPARSE ECHELON
# =============================================================================


class SparseEchelonTests(SimpleTestCase):
    def test_rank_and_membership(self):
        echelon = SparseEchelon()
        self.assertTrue(echelon.add({0: QQ(1), 1: QQ(1)}))
        self.assertTrue(echelon.add({1: QQ(1), 2: QQ(1)}))
        self.assertFalse(echelon.add({0: QQ(1), 1: QQ(2), 2: QQ(1)}))
        self.assertEqual(echelon.rank, 2)
        self.assertTrue(echelon.contains({0: QQ(1), 2: QQ(-1)}))
        self.assertFalse(echelon.contains({2: QQ(1)}))

    def test_kernel(self):
        """The null space of x0 + x1 = x1 + x2 = 0 is spanned by (1, -1, 1)"""
        echelon = SparseEchelon()
        echelon.add({0: QQ(1), 1: QQ(1)})
        echelon.add({1: QQ(1), 2: QQ(1)})
        kernel = echelon.kernel(3)
        self.assertEqual(kernel, [{2: QQ(1), 0: QQ(1), 1: QQ(-1)}])

    def test_span_basis(self):
        basis = span_basis([(1, 2, 3), (2, 4, 6), (0, 1, 1)], 3)
        self.assertEqual(len(basis), 2)
        self.assertEqual(basis[0], (QQ(1), ZERO, QQ(1)))


# =============================================================================
# SMITH NORMAL FORM
# =============================================================================


class SmithNormalFormTests(SimpleTestCase):
    def assertSmith(self, a):
        u, d, v = smith_normal_form(a)
        self.assertEqual(u * a * v, d)
        self.assertIn(u.det(), (1, -1))
        self.assertIn(v.det(), (1, -1))
        diagonal = [x for x in d.diagonal() if x]
        for i in range(d.rows):
            for j in range(d.cols):
                if i != j:
                    self.assertEqual(d[i, j], 0)
        for x, y in zip(diagonal, diagonal[1:]):
            self.assertGreater(x, 0)
            self.assertEqual(y % x, 0)

    def test_textbook_example(self):
        a = IntMatrix([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
        self.assertSmith(a)
        self.assertEqual(invariant_factors(a), [2, 6, 12])

    def test_unimodular_lattice(self):
        """Columns (1, -1, 0) and (0, 1, -1) span a saturated lattice"""
        a = IntMatrix.from_columns([(1, -1, 0), (0, 1, -1)], 3)
        self.assertEqual(invariant_factors(a), [1, 1])

    def test_torsion(self):
        """(2, -2) has index 2 in its saturation"""
        self.assertEqual(invariant_factors(IntMatrix.from_columns([(2, -2)], 2)), [2])

    def test_zero_matrix(self):
        self.assertEqual(invariant_factors(IntMatrix([[0, 0], [0, 0]])), [])

    def test_random_matrices(self):
        """U A V = D on 200 random integer matrices up to 6x6"""
        rng = random.Random(7)
        for _ in range(200):
            self.assertSmith(random_int_matrix(rng, rng.randint(1, 6), rng.randint(1, 6)))
