#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
test_modality
----------------------------------

Tests for the differential and integral structure of smooth functions.
"""


import sys
import unittest

import numpy as np

from smoothcalc.algebra import s_sym
from smoothcalc.core import DimensionError, ExprError
from smoothcalc.parsing import parse_expr, parse_oneform
from smoothcalc.smooth.expr import Const, Param, Prim, Var, eval_expr, eval_points, from_poly, partial_expr
from smoothcalc.smooth.modality import (DualElement, SmoothOneForm, SmoothTwoTensor, coderiving_smooth, counit,
                                        d_smooth, d_twice, directional_derivation, double_product_smooth, epsilon,
                                        eval_oneform, format_oneform, inverse_smooth, is_closed, op_LKJ_smooth,
                                        rota_baxter_smooth, s_first_slot, s_smooth, scale_oneform,
                                        square_zero_apply, zero_map)


class TestSmoothModality(unittest.TestCase):

    def setUp(self):
        self.points = np.random.default_rng(5).uniform(-1, 1, size=(10, 2))
        self.f = parse_expr("sin(x1*x2) + exp(x2)*x1^2", 2)

    def assertPointwise(self, lhs, rhs, points=None, tol=1e-9):
        points = self.points if points is None else points
        np.testing.assert_allclose(eval_points(lhs, points), eval_points(rhs, points), rtol=tol, atol=tol)

    def test_gradient(self):
        omega = d_smooth(parse_expr("x1^2*x2^5"), 2)
        self.assertEqual(format_oneform(omega), "2*x1*x2^5, 5*x1^2*x2^4")

    def test_oneform_validation(self):
        with self.assertRaises(DimensionError):
            SmoothOneForm((Var(0),), 2)
        with self.assertRaises(DimensionError):
            SmoothOneForm((Var(2), Var(0)), 2)
        with self.assertRaises(ExprError):
            SmoothOneForm((Param('t'), Var(0)), 2)

    def test_hessian_symmetry(self):
        hessian = d_twice(self.f, 2)
        self.assertPointwise(hessian.entry(0, 1), hessian.entry(1, 0))

    def test_fundamental_theorem(self):
        lhs = s_smooth(d_smooth(self.f, 2)) + zero_map(self.f, 2)
        self.assertPointwise(lhs, self.f, tol=1e-8)

    def test_poincare(self):
        omega = d_smooth(self.f, 2)
        recovered = d_smooth(s_smooth(omega), 2)
        np.testing.assert_allclose(eval_oneform(recovered, self.points), eval_oneform(omega, self.points),
                                   rtol=1e-7, atol=1e-7)

    def test_closedness(self):
        self.assertTrue(is_closed(d_smooth(self.f, 2)).closed)
        verdict = is_closed(parse_oneform("x2, -x1", 2))
        self.assertFalse(verdict.closed)
        self.assertAlmostEqual(verdict.asymmetry, 2.0, delta=1e-9)
        self.assertTrue(is_closed(parse_oneform("sin(x1)", 1)).closed)

    def test_degree_operators(self):
        f = parse_expr("x1^2*x2 + 5", 2)
        self.assertPointwise(op_LKJ_smooth('L', f, 2), parse_expr("3*x1^2*x2"))
        self.assertPointwise(op_LKJ_smooth('K', f, 2), parse_expr("3*x1^2*x2 + 5"))
        self.assertPointwise(op_LKJ_smooth('J', f, 2), parse_expr("4*x1^2*x2 + 5"))
        self.assertPointwise(op_LKJ_smooth('L', f, 2), coderiving_smooth(d_smooth(f, 2)))
        with self.assertRaises(ValueError):
            op_LKJ_smooth('M', f, 2)

    def test_inverses(self):
        for kind in ('K', 'J'):
            self.assertPointwise(inverse_smooth(kind, op_LKJ_smooth(kind, self.f, 2), 2), self.f, tol=1e-7)
            self.assertPointwise(op_LKJ_smooth(kind, inverse_smooth(kind, self.f, 2), 2), self.f, tol=1e-7)
        with self.assertRaises(ValueError):
            inverse_smooth('L', self.f, 2)

    def test_integral_matches_polynomials(self):
        omega = parse_oneform("x1^2*x2^5, x1^3", 2, mode='poly')
        smooth = s_smooth(SmoothOneForm(tuple(from_poly(c) for c in omega), 2))
        points = np.random.default_rng(0).uniform(-1, 1, size=(20, 2))
        np.testing.assert_allclose(eval_points(smooth, points), eval_points(from_poly(s_sym(omega)), points),
                                   atol=1e-9, rtol=0)

    def test_rota_baxter_identity(self):
        f = parse_expr("cos(x1)", 1)
        g = parse_expr("x1*exp(x1)", 1)
        points = np.linspace(-1, 1, 10).reshape(-1, 1)

        def rb(a):
            return rota_baxter_smooth(a, [1.0])

        self.assertPointwise(rb(f) * rb(g), rb(f * rb(g)) + rb(rb(f) * g), points, tol=1e-8)
        self.assertPointwise(rb(f), Prim('sin', Var(0)), points)
        self.assertPointwise(double_product_smooth(f, g, [1.0]), double_product_smooth(g, f, [1.0]), points)

    def test_interchange(self):
        t = SmoothTwoTensor(((parse_expr("x1*x2"), parse_expr("sin(x2)")),
                             (parse_expr("1"), parse_expr("x1^3"))), 2)
        self.assertPointwise(s_smooth(s_first_slot(t)), s_smooth(s_first_slot(t.transpose())), tol=1e-8)

    def test_counit_and_epsilon(self):
        f = parse_expr("3*x1*x2 + 0.5*x2 - sin(x1) + 4", 2)
        self.assertAlmostEqual(counit(f, 2), 4.0)
        np.testing.assert_allclose(epsilon(f, 2), [-1.0, 0.5], atol=1e-15)
        np.testing.assert_array_equal(epsilon(Var(1), 3), [0.0, 1.0, 0.0])

    def test_counit_and_epsilon_need_the_dimension(self):
        np.testing.assert_array_equal(epsilon(Const(5.0), 2), [0.0, 0.0])
        self.assertEqual(len(epsilon(Var(0), 2)), 2)
        self.assertEqual(counit(Const(5.0), 3), 5.0)
        with self.assertRaises(TypeError):
            epsilon(Var(0))
        with self.assertRaises(TypeError):
            counit(Var(0))
        with self.assertRaises(DimensionError):
            epsilon(Var(2), 2)
        with self.assertRaises(DimensionError):
            counit(Var(1), 1)

    def test_module_action_and_derivations(self):
        omega = d_smooth(self.f, 2)
        scaled = scale_oneform(Var(0), omega)
        self.assertPointwise(scaled[1], Var(0) * partial_expr(self.f, 1))
        w = [0.5, -2.0]
        self.assertPointwise(directional_derivation(self.f, w),
                             0.5 * partial_expr(self.f, 0) - 2.0 * partial_expr(self.f, 1))

    def test_square_zero_lift(self):
        g = parse_expr("sin(x1)*x2", 2)
        alphas = [parse_expr("x1 + x2"), parse_expr("x1*x2")]
        duals = [DualElement(a, d_smooth(a, 2).components) for a in alphas]
        lifted = square_zero_apply(g, duals, 2)
        composite = parse_expr("sin(x1 + x2)*x1*x2")
        self.assertPointwise(lifted.base, composite)
        for i in range(2):
            self.assertPointwise(lifted.tangent[i], partial_expr(composite, i))

    def test_forward_mode(self):
        coordinates = [DualElement(Var(j), (Const(1.0 if j == 0 else 0.0),)) for j in range(2)]
        lifted = square_zero_apply(self.f, coordinates, 2)
        self.assertPointwise(lifted.tangent[0], partial_expr(self.f, 0))

    def test_square_zero_arity(self):
        with self.assertRaises(DimensionError):
            square_zero_apply(parse_expr("x1*x2"), [DualElement(Var(0), (Const(1.0),))], 1)
        with self.assertRaises(DimensionError):
            square_zero_apply(parse_expr("x1"), [], 1)

    def test_square_zero_dimensions(self):
        g = parse_expr("x1*x2", 2)
        with self.assertRaises(DimensionError):
            square_zero_apply(g, [DualElement(Var(0), (Const(1.0),)), DualElement(Var(1), (Const(0.0),))], 1)
        with self.assertRaises(DimensionError):
            square_zero_apply(g, [DualElement(Var(0), (Var(2),)), DualElement(Var(1), (Const(0.0),))], 2)
        with self.assertRaises(DimensionError):
            square_zero_apply(g, [DualElement(Var(0), (Const(1.0),)), DualElement(Var(1), (Const(0.0), Var(0)))], 2)
        lifted = square_zero_apply(g, [DualElement(Var(0), (Const(1.0),)), DualElement(Var(1), (Const(0.0),))], 2)
        self.assertPointwise(lifted.tangent[0], Var(1))

    def test_counit_of_integral(self):
        e = parse_expr("int[t](cos(t*x1))*x1 + 2")
        self.assertAlmostEqual(counit(e, 1), 2.0)
        self.assertAlmostEqual(eval_expr(e, [1.0]), np.sin(1.0) + 2.0, places=12)


if __name__ == '__main__':
    sys.exit(unittest.main())
