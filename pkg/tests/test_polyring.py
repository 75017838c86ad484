#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
test_polyring
----------------------------------

Tests for `smoothcalc.algebra.polyring`.
"""


import sys
import unittest
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from smoothcalc.algebra import (Monomial, Poly, format_poly, homogeneous_components, poly_arith, poly_eval,
                                poly_linear_substitute, poly_partial, poly_substitute)
from smoothcalc.core import DimensionError
from smoothcalc.parsing import parse_poly


coefficients = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def polys(draw, dimension=2, max_terms=5, max_exponent=3):
    terms = draw(st.lists(st.tuples(st.lists(st.integers(0, max_exponent), min_size=dimension, max_size=dimension),
                                    coefficients), max_size=max_terms))
    return Poly(dimension, [(Monomial.from_exponents(e), c) for e, c in terms])


points = st.lists(st.fractions(min_value=-2, max_value=2, max_denominator=5), min_size=2, max_size=2)


class TestMonomial(unittest.TestCase):

    def test_normalizes_powers(self):
        m = Monomial([(1, 2), (0, 1), (1, 1), (2, 0)])
        self.assertEqual(m.powers, ((0, 1), (1, 3)))
        self.assertEqual(m.degree, 4)
        self.assertEqual(m.exponent(1), 3)
        self.assertEqual(m.exponent(5), 0)
        self.assertEqual(m.dense(3), (1, 3, 0))

    def test_product_and_division(self):
        m = Monomial.from_exponents([1, 2])
        self.assertEqual(m * Monomial([(0, 1)]), Monomial.from_exponents([2, 2]))
        self.assertEqual(m.divide_variable(1), Monomial.from_exponents([1, 1]))

    def test_rejects_negative_exponents(self):
        with self.assertRaises(ValueError):
            Monomial([(0, -1)])


class TestPoly(unittest.TestCase):

    def setUp(self):
        self.x1, self.x2 = Poly.generators(2)

    def test_zero_coefficients_are_dropped(self):
        p = self.x1 - self.x1
        self.assertTrue(p.is_zero())
        self.assertEqual(p.degree(), -1)
        self.assertEqual(p, 0)

    def test_dimension_mismatch(self):
        with self.assertRaises(DimensionError):
            self.x1 + Poly.variable(0, 3)
        with self.assertRaises(DimensionError):
            Poly(1, [(Monomial([(1, 1)]), 1)])

    def test_arithmetic(self):
        p = (self.x1 + self.x2) ** 2
        expected = self.x1 * self.x1 + self.x1 * self.x2 * 2 + self.x2 * self.x2
        self.assertEqual(p, expected)
        self.assertEqual(poly_arith('scale', self.x1, Fraction(1, 3)).coefficient(Monomial([(0, 1)])),
                         Fraction(1, 3))
        self.assertEqual(poly_arith('add', self.x1, 1).constant_term(), 1)
        with self.assertRaises(ValueError):
            poly_arith('divide', self.x1, self.x2)

    def test_format(self):
        p = self.x1 ** 3 * self.x2 ** 5 * Fraction(1, 8) + self.x1 ** 3 * self.x2 * Fraction(1, 4)
        self.assertEqual(format_poly(p), "1/8*x1^3*x2^5 + 1/4*x1^3*x2")
        self.assertEqual(format_poly(self.x1 * -1 + 2), "-x1 + 2")
        self.assertEqual(format_poly(Poly.zero(2)), "0")
        p = self.x1 - self.x1 ** 2 * self.x2
        self.assertEqual(format_poly(p), "-(x1^2*x2) + x1")
        self.assertEqual(parse_poly(format_poly(p), 2), p)

    def test_partial(self):
        p = self.x1 ** 2 * self.x2 ** 5
        self.assertEqual(poly_partial(p, 0), self.x1 * self.x2 ** 5 * 2)
        self.assertEqual(poly_partial(p, 1), self.x1 ** 2 * self.x2 ** 4 * 5)
        with self.assertRaises(DimensionError):
            poly_partial(p, 2)

    def test_eval_is_exact_for_rationals(self):
        p = self.x1 ** 2 * self.x2 + Fraction(1, 3)
        self.assertEqual(poly_eval(p, [Fraction(1, 2), 3]), Fraction(3, 4) + Fraction(1, 3))
        self.assertIsInstance(poly_eval(p, [0.5, 3.0]), float)

    def test_substitute(self):
        y = Poly.generators(1)[0]
        p = self.x1 * self.x2
        self.assertEqual(poly_substitute(p, [y + 1, y - 1]), y * y - 1)
        with self.assertRaises(DimensionError):
            poly_substitute(Poly.constant(3, 0), [])
        self.assertEqual(poly_substitute(Poly.constant(3, 0), [], dimension=2), 3)

    def test_linear_substitute(self):
        h = [[1, 2], [0, 1]]
        p = self.x1 * self.x2
        self.assertEqual(poly_linear_substitute(p, h), self.x1 * (self.x1 * 2 + self.x2))

    def test_homogeneous_components(self):
        p = self.x1 ** 2 + self.x2 + 3
        parts = homogeneous_components(p)
        self.assertEqual(sorted(parts), [0, 1, 2])
        self.assertEqual(parts[1], self.x2)

    @given(polys(), polys(), points)
    @settings(max_examples=50, deadline=None)
    def test_evaluation_is_a_ring_morphism(self, p, q, point):
        self.assertEqual(poly_eval(p * q, point), poly_eval(p, point) * poly_eval(q, point))
        self.assertEqual(poly_eval(p + q, point), poly_eval(p, point) + poly_eval(q, point))

    @given(polys(), polys())
    @settings(max_examples=50, deadline=None)
    def test_leibniz(self, p, q):
        for i in range(2):
            self.assertEqual(poly_partial(p * q, i), poly_partial(p, i) * q + p * poly_partial(q, i))


if __name__ == '__main__':
    sys.exit(unittest.main())
