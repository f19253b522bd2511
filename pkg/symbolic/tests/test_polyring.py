"""Polynomial rings: orders, parsing, printing and matrix actions."""

from django.test import SimpleTestCase
from sympy import QQ

from symbolic.exceptions import (
    DimensionMismatchError,
    NonHomogeneousIdealError,
    PolynomialSyntaxError,
)
from symbolic.linalg import ExactMatrix
from symbolic.polyring import (
    DEGREVLEX,
    LEX,
    GradedPiece,
    PolyRing,
    block_order,
    dehomogenize,
    derivation_action,
    format_poly,
    graded_piece_basis,
    homogenize,
    monomials_of_degree,
    substitute_linear,
    variable_derivation,
)


class MonomialOrderTests(SimpleTestCase):
    def setUp(self):
        self.ring = PolyRing(("x", "y", "z"))

    def test_degrevlex_against_lex(self):
        """y^2 beats x*z in degrevlex, loses in lex"""
        f = self.ring.parse("x*z + y^2")
        self.assertEqual(f.leading_monomial(DEGREVLEX), (0, 2, 0))
        self.assertEqual(f.leading_monomial(LEX), (1, 0, 1))

    def test_block_order_eliminates_first_variables(self):
        """Any monomial in x beats every monomial free of x"""
        f = self.ring.parse("x + y^5 + z^7")
        self.assertEqual(f.leading_monomial(block_order(1)), (1, 0, 0))

    def test_monomials_of_degree(self):
        self.assertEqual(len(monomials_of_degree(3, 2)), 6)
        self.assertEqual(monomials_of_degree(2, 0), [(0, 0)])
        self.assertEqual(monomials_of_degree(2, -1), [])


class ParserTests(SimpleTestCase):
    def setUp(self):
        self.ring = PolyRing(("x", "y"))

    def test_round_trip_through_format(self):
        f = self.ring.parse("x^2 - 3/2*x*y + 2*y")
        self.assertEqual(format_poly(f), "x^2 - 3/2*x*y + 2*y")
        self.assertEqual(self.ring.parse(str(f)), f)

    def test_implicit_multiplication(self):
        """2xy, 2 x y and 2*x*y agree"""
        expected = self.ring.parse("2*x*y")
        self.assertEqual(self.ring.parse("2xy"), expected)
        self.assertEqual(self.ring.parse(" 2 x y "), expected)

    def test_leading_sign(self):
        self.assertEqual(self.ring.parse("-x + y"), self.ring.variable(1) - self.ring.variable(0))

    def test_longest_match_splitting(self):
        """x10x1 splits into the declared names x10 and x1"""
        ring = PolyRing(("x", "x1", "x10"))
        self.assertEqual(ring.parse("x10x1"), ring.variable("x10") * ring.variable("x1"))

    def test_unknown_variable_column(self):
        with self.assertRaises(PolynomialSyntaxError) as ctx:
            self.ring.parse("x + z")
        self.assertEqual(ctx.exception.column, 5)

    def test_misplaced_operator_column(self):
        with self.assertRaises(PolynomialSyntaxError) as ctx:
            self.ring.parse("x + * y")
        self.assertEqual(ctx.exception.column, 5)

    def test_zero_denominator(self):
        with self.assertRaises(PolynomialSyntaxError):
            self.ring.parse("1/0*x")

    def test_trailing_operator(self):
        with self.assertRaisesMessage(PolynomialSyntaxError, "unexpected end of input"):
            self.ring.parse("x +")


class PolyArithmeticTests(SimpleTestCase):
    def setUp(self):
        self.ring = PolyRing(("x", "y"))
        self.x, self.y = self.ring.gens()

    def test_binomial_square(self):
        x, y = self.x, self.y
        self.assertEqual((x + y) ** 2, x**2 + 2 * x * y + y**2)
        self.assertEqual(((x + y) - x) - y, 0)

    def test_rings_must_match(self):
        other = PolyRing(("u", "v")).variable(0)
        with self.assertRaises(DimensionMismatchError):
            self.x + other

    def test_degree_and_homogeneity(self):
        f = self.x**2 * self.y + self.y**3
        self.assertEqual(f.degree(), 3)
        self.assertTrue(f.is_homogeneous())
        self.assertFalse((f + 1).is_homogeneous())
        self.assertEqual(self.ring.zero().degree(), -1)

    def test_monic(self):
        f = 3 * self.x - self.y
        self.assertEqual(f.monic(), self.x - self.y * QQ(1, 3))


class MatrixActionTests(SimpleTestCase):
    def setUp(self):
        self.ring = PolyRing(("x", "y"))
        self.x, self.y = self.ring.gens()

    def test_substitute_linear(self):
        """x -> x + y applied to x*y"""
        shear = ExactMatrix([[1, 1], [0, 1]])
        self.assertEqual(substitute_linear(self.x * self.y, shear), self.x * self.y + self.y**2)

    def test_substitute_identity(self):
        f = self.ring.parse("x^3 - 2*x*y + 5")
        self.assertEqual(substitute_linear(f, ExactMatrix.identity(2)), f)

    def test_derivation_of_matrix_unit(self):
        """E_11 acts as -x d/dx"""
        f = self.x**2 * self.y
        unit = ExactMatrix.unit(2, 0, 0)
        self.assertEqual(derivation_action(unit, f), -2 * f)
        self.assertEqual(variable_derivation(f, 0, 0), -2 * f)

    def test_identity_acts_by_degree(self):
        """The identity matrix scales a degree-d form by -d"""
        f = self.ring.parse("x^3 + x*y^2")
        self.assertEqual(derivation_action(ExactMatrix.identity(2), f), -3 * f)

    def test_derivation_is_linear_in_matrix(self):
        """g * f is the sum of g_ij times the variable derivations"""
        f = self.ring.parse("x^2 - 3*x*y")
        g = ExactMatrix([[1, 2], [-1, 3]])
        expected = self.ring.zero()
        for i in range(2):
            for j in range(2):
                expected = expected + variable_derivation(f, i, j) * g[i, j]
        self.assertEqual(derivation_action(g, f), expected)

    def test_homogenize_round_trip(self):
        f = self.ring.parse("x^2 + y + 1")
        h = homogenize(f)
        self.assertEqual(h.ring.names, ("x0", "x", "y"))
        self.assertEqual(h, h.ring.parse("x^2 + x0*y + x0^2"))
        self.assertEqual(dehomogenize(h), f)

    def test_homogenizing_name_is_fresh(self):
        ring = PolyRing(("x0", "x1"))
        self.assertEqual(homogenize(ring.parse("x0 + 1")).ring.names[0], "x01")


class GradedPieceTests(SimpleTestCase):
    def setUp(self):
        self.ring = PolyRing(("x", "y"))

    def test_dimension_and_membership(self):
        """<x*y> in degree 3 is spanned by x^2*y and x*y^2"""
        piece = GradedPiece([self.ring.parse("x*y")], 3)
        self.assertEqual(piece.dimension, 2)
        self.assertTrue(piece.contains(self.ring.parse("x^2*y - 4*x*y^2")))
        self.assertFalse(piece.contains(self.ring.parse("x^3")))
        self.assertEqual(piece.reduce(self.ring.parse("x^3 + x^2*y")), self.ring.parse("x^3"))

    def test_lower_degree_generators_only(self):
        """Generators above the requested degree contribute nothing"""
        piece = GradedPiece([self.ring.parse("x^4")], 3)
        self.assertEqual(piece.dimension, 0)

    def test_non_homogeneous_rejected(self):
        with self.assertRaises(NonHomogeneousIdealError):
            GradedPiece([self.ring.parse("x^2 + y")], 2)

    def test_basis_spans_the_piece(self):
        generators = [self.ring.parse("x^2 - y^2"), self.ring.parse("x*y")]
        basis = graded_piece_basis(generators, 3)
        self.assertEqual(len(basis), 4)
        piece = GradedPiece(generators, 3)
        for element in basis:
            self.assertTrue(piece.contains(element))
            self.assertEqual(element.degree(), 3)
        self.assertEqual(graded_piece_basis([], 2), [])
