#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
test_expr
----------------------------------

Tests for `smoothcalc.smooth.expr`: evaluation, symbolic partials,
substitutions, simplification and printing.
"""


import sys
import unittest

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from smoothcalc.algebra import Poly
from smoothcalc.analysis.generators import GenConfig, gen_expr
from smoothcalc.core import DimensionError, ExprError
from smoothcalc.parsing import parse_expr, parse_poly
from smoothcalc.smooth.expr import (Const, Integral, Negate, Param, Power, Prim, Product, Sum, Var, ExprContext,
                                    eval_expr, eval_points, eval_with_params, free_params, fresh_param, from_poly,
                                    max_var_index, partial_expr, print_expr, rename_params, scale_expr, simplify,
                                    subst_linear, subst_vector)
from smoothcalc.smooth.quadrature import integrate_unit


CORPUS = [
    "x1^2*x2^5",
    "sin(x1*x2) + cos(x3)",
    "exp(x1 - x2^2)*x3",
    "tanh(2*x1 + x3)^2",
    "atan(x1*x2 - x3)",
    "-(x1 + 1)^3*sin(x2)",
    "exp(sin(x1))*atan(x2 + x3^2)",
    "int[t](sin(t*x1)*x2)",
    "int[t](int[s](exp(s*t*x1)))*x2",
]


def _central_difference(e, point, i, step=1e-5):
    forward = np.array(point, dtype=float)
    backward = np.array(point, dtype=float)
    forward[i] += step
    backward[i] -= step
    return (eval_expr(e, forward) - eval_expr(e, backward)) / (2 * step)


class TestEvaluation(unittest.TestCase):

    def test_scalar_values(self):
        e = parse_expr("x1^2*x2 + sin(x3)")
        self.assertAlmostEqual(eval_expr(e, [2.0, 3.0, 0.0]), 12.0)

    def test_points_are_vectorized(self):
        e = parse_expr("x1 + 2*x2")
        values = eval_points(e, [[1.0, 1.0], [0.0, -1.0], [2.0, 0.5]])
        np.testing.assert_allclose(values, [3.0, -2.0, 3.0])

    def test_constant_broadcasts(self):
        values = eval_points(Const(4.0), np.zeros((5, 2)))
        self.assertEqual(values.shape, (5,))
        np.testing.assert_allclose(values, 4.0)

    def test_integral(self):
        e = parse_expr("int[t](t^2*x1)")
        np.testing.assert_allclose(eval_points(e, [[3.0], [-1.5]]), [1.0, -0.5], atol=1e-12)

    def test_nested_integral(self):
        e = parse_expr("int[t](int[s](s*t))")
        self.assertAlmostEqual(eval_expr(e, []), 0.25, places=12)

    def test_nested_integrals_of_primitive_products(self):
        x = 1.3
        e = parse_expr("int[t](int[s](sin(s*x1)*cos(t*x1)))")
        self.assertAlmostEqual(eval_expr(e, [x]), (1 - np.cos(x)) / x * np.sin(x) / x, delta=1e-9)
        e = parse_expr("int[t](int[s](exp(s*x1)*tanh(t)))")
        self.assertAlmostEqual(eval_expr(e, [x]), (np.exp(x) - 1) / x * np.log(np.cosh(1.0)), delta=1e-9)
        e = parse_expr("int[t](int[s](atan(s*t*x1)))")
        reference = integrate_unit(lambda t: np.array([integrate_unit(lambda s: np.arctan(s * ti * x)).value
                                                       for ti in t])).value
        self.assertAlmostEqual(eval_expr(e, [x]), reference, delta=1e-9)

    def test_eval_with_params(self):
        e = Product((Param('t'), Var(0)))
        self.assertAlmostEqual(eval_with_params(e, [3.0], {'t': 0.5}), 1.5)
        with self.assertRaises(ExprError):
            eval_expr(e, [1.0])

    def test_dimension_checks(self):
        with self.assertRaises(DimensionError):
            eval_expr(parse_expr("x3"), [1.0, 2.0])
        with self.assertRaises(DimensionError):
            Var(-1)
        with self.assertRaises(DimensionError):
            ExprContext(1).check(parse_expr("x2"))


class TestPartials(unittest.TestCase):

    def test_matches_finite_differences(self):
        rng = np.random.default_rng(3)
        for text in CORPUS:
            e = parse_expr(text)
            n = 3
            for point in rng.uniform(-0.9, 0.9, size=(10, n)):
                for i in range(n):
                    exact = eval_expr(partial_expr(e, i), point)
                    approx = _central_difference(e, point, i)
                    self.assertLessEqual(abs(exact - approx), 1e-5 * max(1.0, abs(exact)), text)

    def test_generated_expressions(self):
        cfg = GenConfig(max_depth=4)
        rng = np.random.default_rng(11)
        for _ in range(100):
            n = 2
            e = gen_expr(cfg, rng, n)
            point = rng.uniform(-0.5, 0.5, size=n)
            for i in range(n):
                exact = eval_expr(partial_expr(e, i), point)
                approx = _central_difference(e, point, i)
                self.assertLessEqual(abs(exact - approx), 1e-5 * max(1.0, abs(exact)), print_expr(e))

    def test_symbolic_form(self):
        e = parse_expr("x1^2*x2^5")
        self.assertEqual(print_expr(partial_expr(e, 0)), "2*x1*x2^5")
        self.assertEqual(print_expr(partial_expr(e, 1)), "5*x1^2*x2^4")
        self.assertEqual(partial_expr(parse_expr("sin(x2)"), 0), Const(0.0))

    def test_index_checked(self):
        with self.assertRaises(DimensionError):
            partial_expr(Var(0), 2, dimension=2)


class TestSubstitutions(unittest.TestCase):

    def test_linear(self):
        e = parse_expr("x1*x2")
        moved = subst_linear(e, np.array([[1.0, 2.0], [0.0, 1.0]]))
        for point in ([0.5, -1.0], [2.0, 3.0]):
            x, y = point
            self.assertAlmostEqual(eval_expr(moved, point), x * (2 * x + y))

    def test_linear_shape_mismatch(self):
        with self.assertRaises(DimensionError):
            subst_linear(parse_expr("x3"), np.eye(2))

    def test_vector_renames_parameters_apart(self):
        g = parse_expr("int[t1](t1*x1)")
        alpha = parse_expr("int[t1](t1*x1)")
        composite = subst_vector(g, [alpha])
        self.assertFalse(free_params(composite))
        # x -> x/2 twice
        self.assertAlmostEqual(eval_expr(composite, [4.0]), 1.0)

    def test_scale(self):
        e = scale_expr(parse_expr("x1 + x2"), 't')
        self.assertEqual(free_params(e), frozenset(['t']))
        self.assertAlmostEqual(eval_with_params(e, [1.0, 2.0], {'t': 0.5}), 1.5)
        with self.assertRaises(ExprError):
            scale_expr(Integral('t', Param('t')), 't')

    def test_rename_params(self):
        e = Integral('t1', Product((Param('t1'), Var(0))))
        renamed = rename_params(e, {'t1'})
        self.assertNotEqual(renamed.param, 't1')
        self.assertEqual(renamed.body, Product((Param(renamed.param), Var(0))))

    def test_fresh_param(self):
        self.assertEqual(fresh_param(set()), 't1')
        self.assertEqual(fresh_param({'t1', 't2'}), 't3')

    def test_from_poly(self):
        p = parse_poly("1/2*x1^2*x2 - x2 + 3", 2)
        e = from_poly(p)
        self.assertAlmostEqual(eval_expr(e, [2.0, 3.0]), 6.0)
        self.assertEqual(from_poly(Poly.zero(2)), Const(0.0))


class TestSimplifyAndPrint(unittest.TestCase):

    def test_folding(self):
        self.assertEqual(simplify(parse_expr("x1*1 + 0")), Var(0))
        self.assertEqual(simplify(parse_expr("2*3*x1")), Product((Const(6.0), Var(0))))
        self.assertEqual(simplify(parse_expr("--x1")), Var(0))
        self.assertEqual(simplify(parse_expr("(x1^2)^3")), Power(Var(0), 6))
        self.assertEqual(simplify(parse_expr("sin(0)")), Const(0.0))
        self.assertEqual(simplify(parse_expr("x1*0")), Const(0.0))

    def test_constant_integral_collapses(self):
        self.assertEqual(simplify(Integral('t', Var(0))), Var(0))

    def test_printing(self):
        self.assertEqual(print_expr(simplify(parse_expr("x1 - x2*x3"))), "x1 - x2*x3")
        self.assertEqual(print_expr(simplify(parse_expr("x1 - 3*x2"))), "x1 - 3*x2")
        self.assertEqual(print_expr(parse_expr("sin(x1 + x2^2)")), "sin(x1 + x2^2)")
        self.assertEqual(print_expr(parse_expr("(x1 + 1)^2")), "(x1 + 1)^2")
        self.assertEqual(print_expr(Negate(Sum((Var(0), Var(1))))), "-(x1 + x2)")
        self.assertEqual(print_expr(Integral('t', Prim('cos', Product((Param('t'), Var(0)))))), "int[t](cos(t*x1))")

    @given(st.integers(min_value=0, max_value=2 ** 32 - 1))
    @settings(max_examples=50, deadline=None)
    def test_simplify_is_idempotent_and_sound(self, seed):
        rng = np.random.default_rng(seed)
        e = gen_expr(GenConfig(max_depth=4), rng, 2)
        once = simplify(e)
        self.assertEqual(simplify(once), once)
        points = rng.uniform(-1, 1, size=(5, 2))
        np.testing.assert_allclose(eval_points(once, points), eval_points(e, points), rtol=1e-9, atol=1e-9)

    def test_max_var_index(self):
        self.assertEqual(max_var_index(parse_expr("x3 + x1")), 2)
        self.assertEqual(max_var_index(Const(1.0)), -1)


if __name__ == '__main__':
    sys.exit(unittest.main())
