# -*- coding: utf-8 -*-
"""Worked examples with known answers, replayed against the implementation."""

import logging
from collections import namedtuple
from fractions import Fraction

import numpy as np

from ..algebra.polyring import format_poly
from ..algebra.sym import (PolyOneForm, d_sym, degree_op_sym, format_oneform_sym, line_integral_exact_sym,
                           naive_s_sym, s_sym, scale_oneform_sym)
from ..core import sample_points
from ..parsing import parse_oneform, parse_poly
from ..smooth.expr import Prim, Var, eval_points, from_poly
from ..smooth.modality import SmoothOneForm, is_closed, rota_baxter_smooth, s_smooth

logger = logging.getLogger(__name__)

DemoCase = namedtuple('DemoCase', ['name', 'expected', 'computed', 'ok'])


def _case(name, expected, computed, ok=None):
    if ok is None:
        ok = expected == computed
    logger.debug("Demo %s: expected %s, computed %s", name, expected, computed)
    return DemoCase(name, str(expected), str(computed), bool(ok))


def _gradient_formula():
    p = parse_poly("x1^2*x2^5", 2)
    return _case("gradient of x1^2*x2^5", "2*x1*x2^5, 5*x1^2*x2^4", format_oneform_sym(d_sym(p)))


def _degree_operators():
    p = parse_poly("x1^2*x2", 2)
    cases = [
        _case("K(x1^2*x2)", "3*x1^2*x2", format_poly(degree_op_sym('K', p))),
        _case("K(5)", "5", format_poly(degree_op_sym('K', parse_poly("5", 2)))),
        _case("J(x1^2*x2)", "4*x1^2*x2", format_poly(degree_op_sym('J', p))),
    ]
    return cases


def _polynomial_integral():
    omega = parse_oneform("x1^2*x2^5, x1^3", 2, mode='poly')
    return _case("s(x1^2*x2^5 dx1 + x1^3 dx2)", "1/8*x1^3*x2^5 + 1/4*x1^3*x2", format_poly(s_sym(omega)))


def _cross_modality(points=20, seed=0):
    omega = parse_oneform("x1^2*x2^5, x1^3", 2, mode='poly')
    exact = from_poly(s_sym(omega))
    smooth = s_smooth(SmoothOneForm(tuple(from_poly(c) for c in omega), 2))
    sample = sample_points(np.random.default_rng(seed), points, 2)
    error = float(np.max(np.abs(eval_points(smooth, sample) - eval_points(exact, sample))))
    return _case("smooth and polynomial integrals agree at {} points".format(points), "error <= 1e-09",
                 "error = {:.3g}".format(error), error <= 1e-9)


def _antiderivative_of_cos(points=10, seed=1):
    sample = sample_points(np.random.default_rng(seed), points, 1)
    p = rota_baxter_smooth(Prim('cos', Var(0)), [1.0])
    error = float(np.max(np.abs(eval_points(p, sample) - np.sin(sample[:, 0]))))
    return _case("P_1(cos) = sin at {} points".format(points), "error <= 1e-09", "error = {:.3g}".format(error),
                 error <= 1e-9)


def _naive_rule_fails():
    omega = PolyOneForm([parse_poly("x2", 2), parse_poly("0", 2)], 2)
    nu = PolyOneForm.basis(1, 2)
    s = naive_s_sym
    lhs = s(omega) * s(nu)
    rhs = s(scale_oneform_sym(s(nu), omega)) + s(scale_oneform_sym(s(omega), nu))
    return _case("per-variable rule breaks Rota-Baxter in dimension 2", "unequal",
                 "equal" if lhs == rhs else "unequal")


def _witness_not_closed():
    omega = parse_oneform("x2, -x1", 2)
    verdict = is_closed(omega)
    return _case("x2 dx1 - x1 dx2 is not closed", 2.0,
                 verdict.asymmetry, not verdict.closed and abs(verdict.asymmetry - 2.0) <= 1e-9)


def _line_integral():
    omega = parse_oneform("x1^2*x2^5, x1^3", 2, mode='poly')
    v = [Fraction(1, 2), Fraction(-1)]
    return _case("line integral to (1/2, -1)", Fraction(-3, 64), line_integral_exact_sym(omega, v))


def run_demo():
    """Runs every worked example.

    Returns
    -------
    list of DemoCase :
        Each with the expected and computed value as text and an ok flag.
    """
    cases = [_gradient_formula()]
    cases.extend(_degree_operators())
    cases.append(_polynomial_integral())
    cases.append(_cross_modality())
    cases.append(_antiderivative_of_cos())
    cases.append(_naive_rule_fails())
    cases.append(_witness_not_closed())
    cases.append(_line_integral())
    logger.info("Demo: %d of %d cases agree", sum(c.ok for c in cases), len(cases))
    return cases


def format_demo(cases):
    lines = []
    for case in cases:
        lines.append("[{}] {}".format("ok" if case.ok else "FAIL", case.name))
        lines.append("    expected: {}".format(case.expected))
        lines.append("    computed: {}".format(case.computed))
    return "\n".join(lines)
