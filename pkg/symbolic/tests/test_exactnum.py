"""Exact scalars: rationals, univariate polynomials and extension towers."""

from django.test import SimpleTestCase
from sympy import QQ

from symbolic.exactnum import (
    ONE,
    ZERO,
    SplitEvent,
    UPoly,
    deepest_tower,
    describe_tower,
    format_scalar,
    is_squarefree,
    rational,
    scalar_inverse,
    squarefree_part,
    tower_adjoin,
    tower_invert,
    upoly_gcd,
    upoly_xgcd,
)
from symbolic.exceptions import IncompatibleTowerError, NotSquarefreeError


def poly(*high_to_low):
    return UPoly.from_high([QQ(c) for c in high_to_low])


# =============================================================================
# RATIONALS
# =============================================================================


class RationalTests(SimpleTestCase):
    def test_rational_from_string(self):
        """'num/den' strings parse to reduced fractions"""
        self.assertEqual(rational("6/8"), QQ(3, 4))
        self.assertEqual(rational(" -5 "), QQ(-5))

    def test_zero_denominator(self):
        with self.assertRaises(ZeroDivisionError):
            rational(1, 0)

    def test_scalar_inverse(self):
        self.assertEqual(scalar_inverse(QQ(-2, 3)), QQ(-3, 2))
        with self.assertRaises(ZeroDivisionError):
            scalar_inverse(ZERO)

    def test_format_scalar(self):
        """Rationals print as num/den, integers bare"""
        self.assertEqual(format_scalar(QQ(-3, 4)), "-3/4")
        self.assertEqual(format_scalar(QQ(7)), "7")


# =============================================================================
# UNIVARIATE POLYNOMIALS
# =============================================================================


class UPolyTests(SimpleTestCase):
    def test_trailing_zeros_dropped(self):
        self.assertEqual(UPoly([1, 2, 0, 0]).degree(), 1)
        self.assertTrue(UPoly([0]).is_zero())

    def test_divmod(self):
        """(t^3 - 1) = (t - 1)(t^2 + t + 1)"""
        quotient, remainder = divmod(poly(1, 0, 0, -1), poly(1, -1))
        self.assertEqual(quotient, poly(1, 1, 1))
        self.assertTrue(remainder.is_zero())

    def test_evaluation(self):
        self.assertEqual(poly(1, 0, -2)(QQ(3)), QQ(7))

    def test_gcd_is_monic(self):
        g = upoly_gcd(poly(2, 0, -2), poly(3, -3))
        self.assertEqual(g, poly(1, -1))

    def test_xgcd_identity(self):
        """s p + t q = gcd"""
        p, q = poly(1, 0, -1), poly(1, 2)
        g, s, t = upoly_xgcd(p, q)
        self.assertEqual(g, UPoly([ONE]))
        self.assertEqual(s * p + t * q, g)

    def test_squarefree_part(self):
        """(t - 1)^2 (t + 2) has squarefree part (t - 1)(t + 2)"""
        p = poly(1, -1) * poly(1, -1) * poly(1, 2)
        self.assertFalse(is_squarefree(p))
        self.assertEqual(squarefree_part(p), poly(1, 1, -2))
        self.assertTrue(is_squarefree(squarefree_part(p)))


# =============================================================================
# TOWERS
# =============================================================================


class TowerTests(SimpleTestCase):
    def test_square_root_of_two(self):
        """a^2 = 2 and a^-1 = a/2"""
        alpha = tower_adjoin(None, poly(1, 0, -2))
        self.assertEqual(alpha * alpha, 2)
        self.assertEqual(tower_invert(alpha), alpha * QQ(1, 2))
        self.assertEqual((alpha + 1) * (alpha - 1), 1)

    def test_two_level_tower(self):
        """sqrt(2) then sqrt(3): (ab)^2 = 6"""
        a = tower_adjoin(None, poly(1, 0, -2))
        b = tower_adjoin(a.tower, poly(1, 0, -3))
        self.assertEqual(b.tower.depth, 2)
        self.assertEqual((a * b) ** 2, 6)
        self.assertIs(deepest_tower([QQ(1), a, b]), b.tower)

    def test_adjoin_requires_squarefree(self):
        with self.assertRaises(NotSquarefreeError):
            tower_adjoin(None, poly(1, -2, 1))
        with self.assertRaises(ValueError):
            tower_adjoin(None, poly(1, -2))

    def test_unrelated_towers(self):
        a = tower_adjoin(None, poly(1, 0, -2))
        b = tower_adjoin(None, poly(1, 0, -3))
        with self.assertRaises(IncompatibleTowerError):
            a + b

    def test_zero_divisor_splits(self):
        """In Q[a]/(a^2 - 1), a - 1 is a zero divisor"""
        alpha = tower_adjoin(None, poly(1, 0, -1))
        with self.assertRaises(SplitEvent) as ctx:
            tower_invert(alpha - 1)
        event = ctx.exception
        self.assertEqual(sorted(f.degree() for f in event.factors), [1, 1])
        self.assertEqual(event.factors[0] * event.factors[1], alpha.tower.modulus)

    def test_split_resolution_rebases_elements(self):
        """Keeping the factor a - 1 sends a to 1"""
        alpha = tower_adjoin(None, poly(1, 0, -1))
        with self.assertRaises(SplitEvent) as ctx:
            tower_invert(alpha - 1)
        event = ctx.exception
        new_top, rebase = event.resolve(alpha.tower)
        self.assertEqual(new_top.modulus.degree(), 1)
        self.assertEqual(rebase(alpha), 1)
        self.assertEqual(len(event.branches(alpha.tower)), 2)
        self.assertEqual(rebase(QQ(5)), QQ(5))

    def test_describe_tower(self):
        alpha = tower_adjoin(None, poly(1, 0, -2))
        self.assertEqual(describe_tower(alpha.tower), ["a1: a1^2 - 2 = 0"])
        self.assertEqual(format_scalar(alpha), "a1")
        self.assertEqual(describe_tower(None), [])
