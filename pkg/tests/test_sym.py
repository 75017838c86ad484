#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
test_sym
----------------------------------

Tests for the exact differential and integral structure of polynomials.
"""


import sys
import unittest
from fractions import Fraction

from smoothcalc.algebra import (Poly, PolyDual, PolyOneForm, coderiving_sym, counit_sym, d_sym,
                                degree_op_inverse_sym, degree_op_sym, double_product_sym, epsilon_sym, format_poly,
                                line_integral_exact_sym, naive_s_sym, poly_eval, rota_baxter_sym, s_first_slot_sym,
                                s_sym, scale_oneform_sym, second_derivative_sym, square_zero_apply_sym, zero_map_sym)
from smoothcalc.algebra.sym import PolyTwoTensor
from smoothcalc.core import DimensionError
from smoothcalc.parsing import parse_oneform, parse_poly


class TestDerivingTransformation(unittest.TestCase):

    def test_gradient_of_monomial(self):
        p = parse_poly("x1^2*x2^5", 2)
        omega = d_sym(p)
        self.assertEqual(format_poly(omega[0]), "2*x1*x2^5")
        self.assertEqual(format_poly(omega[1]), "5*x1^2*x2^4")

    def test_second_derivative_is_symmetric(self):
        p = parse_poly("x1^3*x2 + x2^2*x3 - 4*x1*x3", 3)
        self.assertTrue(second_derivative_sym(p).is_symmetric())
        self.assertEqual(second_derivative_sym(p).entry(0, 1), parse_poly("3*x1^2", 3))

    def test_coderiving(self):
        omega = parse_oneform("x2, 1", 2, mode='poly')
        self.assertEqual(coderiving_sym(omega), parse_poly("x1*x2 + x2", 2))

    def test_oneform_dimension_checks(self):
        with self.assertRaises(DimensionError):
            PolyOneForm([Poly.zero(2)], 2)
        with self.assertRaises(DimensionError):
            PolyOneForm([Poly.zero(2), Poly.zero(3)])
        with self.assertRaises(DimensionError):
            PolyOneForm.basis(2, 2)


class TestDegreeOperators(unittest.TestCase):

    def setUp(self):
        self.p = parse_poly("x1^2*x2", 2)

    def test_values(self):
        self.assertEqual(degree_op_sym('L', self.p), parse_poly("3*x1^2*x2", 2))
        self.assertEqual(degree_op_sym('K', self.p), parse_poly("3*x1^2*x2", 2))
        self.assertEqual(degree_op_sym('J', self.p), parse_poly("4*x1^2*x2", 2))
        five = Poly.constant(5, 2)
        self.assertEqual(degree_op_sym('K', five), five)
        self.assertEqual(degree_op_sym('L', five), 0)
        self.assertEqual(degree_op_sym('J', five), five)

    def test_inverses(self):
        p = parse_poly("x1^2*x2 - 1/3*x2 + 7", 2)
        for kind in ('K', 'J'):
            self.assertEqual(degree_op_inverse_sym(kind, degree_op_sym(kind, p)), p)
            self.assertEqual(degree_op_sym(kind, degree_op_inverse_sym(kind, p)), p)

    def test_decompositions(self):
        p = parse_poly("x1^2*x2 - x2 + 7", 2)
        lp = degree_op_sym('L', p)
        self.assertEqual(lp, coderiving_sym(d_sym(p)))
        self.assertEqual(degree_op_sym('K', p), lp + zero_map_sym(p))
        self.assertEqual(degree_op_sym('J', p), lp + p)

    def test_unknown_operator(self):
        with self.assertRaises(ValueError):
            degree_op_sym('M', self.p)
        with self.assertRaises(ValueError):
            degree_op_inverse_sym('L', self.p)


class TestIntegralTransformation(unittest.TestCase):

    def setUp(self):
        self.omega = parse_oneform("x1^2*x2^5, x1^3", 2, mode='poly')

    def test_worked_example(self):
        self.assertEqual(format_poly(s_sym(self.omega)), "1/8*x1^3*x2^5 + 1/4*x1^3*x2")

    def test_constants(self):
        omega = PolyOneForm.basis(1, 3, Poly.constant(Fraction(2, 3), 3))
        self.assertEqual(s_sym(omega), Poly.variable(1, 3).scale(Fraction(2, 3)))
        self.assertEqual(naive_s_sym(omega), s_sym(omega))

    def test_rota_baxter_rule(self):
        omega = parse_oneform("x2 + x1^2, 3*x1*x2", 2, mode='poly')
        nu = parse_oneform("x1, x2^2 - 1", 2, mode='poly')
        s = s_sym
        self.assertEqual(s(omega) * s(nu), s(scale_oneform_sym(s(nu), omega)) + s(scale_oneform_sym(s(omega), nu)))

    def test_naive_rule_breaks_rota_baxter(self):
        omega = PolyOneForm([Poly.variable(1, 2), Poly.zero(2)], 2)
        nu = PolyOneForm.basis(1, 2)
        s = naive_s_sym
        self.assertNotEqual(s(omega) * s(nu),
                            s(scale_oneform_sym(s(nu), omega)) + s(scale_oneform_sym(s(omega), nu)))

    def test_naive_rule_agrees_in_dimension_one(self):
        omega = parse_oneform("x1^3 - 2*x1", 1, mode='poly')
        self.assertEqual(naive_s_sym(omega), s_sym(omega))

    def test_fundamental_theorem(self):
        p = parse_poly("x1^2*x2^5 - 3*x2 + 2", 2)
        self.assertEqual(s_sym(d_sym(p)) + p.constant_term(), p)

    def test_poincare(self):
        omega = d_sym(parse_poly("x1^3*x2 + x2^2", 2))
        self.assertEqual(d_sym(s_sym(omega)), omega)

    def test_factorizations(self):
        self.assertEqual(s_sym(self.omega), degree_op_inverse_sym('K', coderiving_sym(self.omega)))
        averaged = PolyOneForm([degree_op_inverse_sym('J', c) for c in self.omega], 2)
        self.assertEqual(s_sym(self.omega), coderiving_sym(averaged))

    def test_interchange(self):
        t = PolyTwoTensor([[parse_poly("x1*x2", 2), parse_poly("x2^2", 2)],
                           [parse_poly("1", 2), parse_poly("x1^3", 2)]], 2)
        self.assertEqual(s_sym(s_first_slot_sym(t)), s_sym(s_first_slot_sym(t.transpose())))

    def test_line_integral(self):
        v = [Fraction(1, 2), Fraction(-1)]
        self.assertEqual(line_integral_exact_sym(self.omega, v), poly_eval(s_sym(self.omega), v))
        self.assertEqual(line_integral_exact_sym(self.omega, v), Fraction(-3, 64))


class TestRotaBaxter(unittest.TestCase):

    def setUp(self):
        self.p = parse_poly("x1 + x2^2", 2)
        self.q = parse_poly("x1*x2 - 1", 2)
        self.r = parse_poly("x2 + 2", 2)
        self.v = [Fraction(1, 2), Fraction(-2)]

    def rb(self, a):
        return rota_baxter_sym(a, self.v)

    def star(self, a, b):
        return double_product_sym(a, b, self.v)

    def test_identity(self):
        p, q = self.p, self.q
        self.assertEqual(self.rb(p) * self.rb(q), self.rb(p * self.rb(q)) + self.rb(self.rb(p) * q))

    def test_double_product(self):
        p, q, r = self.p, self.q, self.r
        self.assertEqual(self.star(p, q), self.star(q, p))
        self.assertEqual(self.rb(self.star(p, q)), self.rb(p) * self.rb(q))
        self.assertEqual(self.star(self.star(p, q), r), self.star(p, self.star(q, r)))

    def test_one_dimensional_antiderivative(self):
        x = Poly.variable(0, 1)
        self.assertEqual(rota_baxter_sym(x * x, [1]), (x ** 3).scale(Fraction(1, 3)))

    def test_direction_length(self):
        with self.assertRaises(DimensionError):
            rota_baxter_sym(self.p, [1])


class TestCounitAndDuals(unittest.TestCase):

    def test_counit_and_epsilon(self):
        p = parse_poly("3*x1*x2 + 1/2*x2 - x1 + 4", 2)
        self.assertEqual(counit_sym(p), 4)
        self.assertEqual(epsilon_sym(p), (Fraction(-1), Fraction(1, 2)))

    def test_square_zero_lift_is_the_chain_rule(self):
        g = parse_poly("x1^2*x2", 2)
        alphas = [parse_poly("x1 + x2", 2), parse_poly("x1*x2", 2)]
        duals = [PolyDual(a, d_sym(a).components) for a in alphas]
        lifted = square_zero_apply_sym(g, duals)
        composite = parse_poly("(x1 + x2)^2*x1*x2", 2)
        self.assertEqual(lifted.base, composite)
        self.assertEqual(PolyOneForm(lifted.tangent, 2), d_sym(composite))

    def test_square_zero_arity(self):
        g = parse_poly("x1*x2", 2)
        with self.assertRaises(DimensionError):
            square_zero_apply_sym(g, [PolyDual(Poly.variable(0, 1), [Poly.constant(1, 1)])])


if __name__ == '__main__':
    sys.exit(unittest.main())
