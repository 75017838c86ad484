# -*- coding: utf-8 -*-
"""Executable law suites for the polynomial and the smooth structure.

Every suite exists in two modes: 'poly' checks the identity exactly on random
polynomials, 'smooth' checks it pointwise on random smooth expressions.  Each
trial draws its inputs from its own generator, seeded by (seed, trial index),
so reports do not depend on the order or the process in which trials run.
"""

import logging
import time
from collections import OrderedDict, namedtuple
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

import numpy as np
import pandas as pd

from ..algebra.polyring import Poly, poly_eval, poly_linear_substitute, poly_partial, poly_substitute
from ..algebra.sym import (PolyDual, PolyOneForm, PolyTwoTensor, coderiving_sym, counit_sym, d_sym,
                           degree_op_inverse_sym, degree_op_sym, double_product_sym, epsilon_sym,
                           line_integral_exact_sym, naive_s_sym, rota_baxter_sym, s_first_slot_sym, s_sym,
                           scale_oneform_sym, second_derivative_sym, square_zero_apply_sym, zero_map_sym)
from ..core import QuadratureError, UnknownSuiteError, mixed_deviation, sample_points
from ..smooth.expr import (Const, Expr, Integral, Param, Prim, Product, Sum, Var, all_params, eval_expr, eval_points,
                           fresh_param, from_poly, partial_expr, scale_expr, simplify, subst_linear, subst_vector)
from ..smooth.modality import (DualElement, SmoothOneForm, SmoothTwoTensor, coderiving_smooth, counit,
                               d_smooth, d_twice, directional_derivation, double_product_smooth, epsilon,
                               eval_oneform, inverse_smooth, is_closed, op_LKJ_smooth, rota_baxter_smooth,
                               s_first_slot, s_smooth, scale_oneform, square_zero_apply, zero_map)
from ..smooth.quadrature import QuadConfig
from .generators import (GenConfig, gen_closed_poly_oneform, gen_constant, gen_dimension, gen_expr, gen_matrix,
                         gen_oneform, gen_poly, gen_poly_oneform, gen_rational, gen_rational_matrix,
                         gen_rational_vector, gen_vector)

logger = logging.getLogger(__name__)

SUITES = ('d-axioms', 's-axioms', 'calculus', 'interchange', 'epsilon', 'naturality', 'lambda-compat', 'chain',
          'inverses', 'rota-baxter', 'derivation')

# Polynomial suites whose laws go through the integral rule under test.
INTEGRAL_SUITES = ('s-axioms', 'calculus', 'lambda-compat', 'rota-baxter')

MODES = ('poly', 'smooth')

DEFAULT_TOLERANCES = {
    'd-axioms': 1e-9,
    's-axioms': 1e-8,
    'calculus': 1e-8,
    'interchange': 1e-9,
    'epsilon': 1e-8,
    'naturality': 1e-9,
    'lambda-compat': 1e-9,
    'chain': 1e-9,
    'inverses': 1e-7,
    'rota-baxter': 1e-8,
    'derivation': 1e-9,
}

DEFAULT_SMOOTH_TRIALS = {
    'd-axioms': 50,
    's-axioms': 50,
    'calculus': 50,
    'interchange': 50,
    'epsilon': 100,
    'naturality': 100,
    'lambda-compat': 100,
    'chain': 50,
    'inverses': 50,
    'rota-baxter': 50,
    'derivation': 100,
}

DEFAULT_POLY_TRIALS = 200

# Share of inconclusive trials a suite tolerates before it is failed
INCONCLUSIVE_LIMIT = 0.05


@dataclass(frozen=True)
class TrialConfig:
    """How a suite is run.

    Parameters
    ----------
    seed : int
        Unsigned 64-bit seed.  Defaults to 0.

    trials : int or None
        Number of trials; None uses the suite default (200 in poly mode).

    points : int
        Sample points per trial in smooth mode.  Defaults to 10.

    tolerance : float or None
        Smooth-mode tolerance; None uses the suite default.  Ignored in poly
        mode, where any discrepancy fails.

    quad : QuadConfig
        Quadrature settings for Integral nodes.

    jobs : int
        Worker processes; 1 runs the trials in this process.

    timing : bool
        Record wall-clock time in the report.  Off by default so reports are
        reproducible byte for byte.
    """

    seed: int = 0
    trials: Optional[int] = None
    points: int = 10
    tolerance: Optional[float] = None
    quad: QuadConfig = field(default_factory=QuadConfig)
    jobs: int = 1
    timing: bool = False

    def __post_init__(self):
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be an unsigned 64-bit integer, got {}".format(self.seed))
        if self.trials is not None and self.trials < 1:
            raise ValueError("at least one trial is required")
        if self.points < 1:
            raise ValueError("at least one sample point is required")
        if self.tolerance is not None and not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.jobs < 1:
            raise ValueError("jobs must be positive")


@dataclass(frozen=True)
class LawReport:
    """Outcome of one suite in one mode."""

    law: str
    mode: str
    seed: int
    trials: int
    failures: int
    inconclusive: int
    worst_error: float
    elapsed_ms: int = 0

    @property
    def passed(self):
        return self.failures == 0 and self.inconclusive <= INCONCLUSIVE_LIMIT * self.trials

    def to_dict(self):
        return OrderedDict([
            ('law', self.law),
            ('mode', self.mode),
            ('seed', self.seed),
            ('trials', self.trials),
            ('failures', self.failures),
            ('inconclusive', self.inconclusive),
            ('worst_error', self.worst_error),
            ('elapsed_ms', self.elapsed_ms),
        ])


Comparison = namedtuple('Comparison', ['equal', 'max_abs', 'max_rel', 'inconclusive'])

TrialOutcome = namedtuple('TrialOutcome', ['index', 'error', 'failed', 'inconclusive', 'inputs', 'message'])


def pointwise_equal(f, g, points, tol=1e-9, quad=QuadConfig()):
    """Compares two closed expressions at the rows of `points`.

    Returns
    -------
    Comparison :
        `equal` when every absolute deviation |f - g| is at most `tol`;
        `max_abs` is the largest of them and `max_rel` the largest
        |f - g| / max(1, |g|), reported only.  A quadrature failure gives an
        inconclusive comparison.
    """
    try:
        a = eval_points(f, points, quad)
        b = eval_points(g, points, quad)
    except QuadratureError as error:
        logger.warning("Comparison inconclusive: %s", error)
        return Comparison(False, float('nan'), float('nan'), True)
    if a.size == 0:
        return Comparison(True, 0.0, 0.0, False)
    max_abs = float(np.max(np.abs(a - b)))
    max_rel = float(np.max(mixed_deviation(a, b)))
    return Comparison(bool(max_abs <= tol), max_abs, max_rel, False)


def exact_gap(lhs, rhs):
    """Largest absolute coefficient of lhs - rhs, for exact values of any shape."""
    if isinstance(lhs, Poly):
        return (lhs - rhs).max_abs_coefficient()
    if isinstance(lhs, PolyOneForm):
        return exact_gap(lhs.components, rhs.components)
    if isinstance(lhs, PolyTwoTensor):
        return exact_gap(lhs.entries, rhs.entries)
    if isinstance(lhs, PolyDual):
        return max(exact_gap(lhs.base, rhs.base), exact_gap(lhs.tangent, rhs.tangent))
    if isinstance(lhs, (tuple, list)):
        if len(lhs) != len(rhs):
            return float('inf')
        return max([exact_gap(a, b) for a, b in zip(lhs, rhs)] or [Fraction(0)])
    return abs(lhs - rhs)


def _values(value, points, quad):
    if isinstance(value, SmoothOneForm):
        return eval_oneform(value, points, quad)
    if isinstance(value, SmoothTwoTensor):
        n = value.dimension
        return np.stack([eval_points(value.entry(j, i), points, quad) for j in range(n) for i in range(n)], axis=-1) \
            if n else np.zeros((len(points), 0))
    if isinstance(value, DualElement):
        return np.stack([eval_points(e, points, quad) for e in (value.base,) + value.tangent], axis=-1)
    if isinstance(value, Expr):
        return eval_points(value, points, quad)
    return np.asarray(value, dtype=float)


class Trial(object):
    """One trial of a suite: its random source and the discrepancies it found."""

    def __init__(self, index, rng, gen, cfg, tolerance, integral):
        self.index = index
        self.rng = rng
        self.gen = gen
        self.quad = cfg.quad
        self.points = cfg.points
        self.tolerance = tolerance
        self.integral = integral
        self.error = 0.0
        self.failed = []
        self.inputs = OrderedDict()

    def dimension(self, gen=None):
        return gen_dimension(gen or self.gen, self.rng)

    def sample(self, dimension):
        return sample_points(self.rng, self.points, dimension)

    def record(self, name, value):
        if isinstance(value, (list, tuple)):
            value = ", ".join(str(v) for v in value)
        self.inputs[name] = str(value)

    def exact(self, name, lhs, rhs):
        gap = exact_gap(lhs, rhs)
        self.error = max(self.error, float(gap))
        if gap != 0:
            self.failed.append(name)

    def close(self, name, lhs, rhs, points, slack=1.0):
        a = _values(lhs, points, self.quad)
        b = _values(rhs, points, self.quad)
        deviation = float(np.max(np.abs(a - b))) if np.size(a) else 0.0
        self.error = max(self.error, deviation)
        if not deviation <= self.tolerance * slack:
            self.failed.append(name)

    def bound(self, name, value, limit):
        self.error = max(self.error, float(value))
        if not value <= limit:
            self.failed.append(name)


_REGISTRY = {}


def _law(suite, mode):
    def register(fn):
        _REGISTRY[(suite, mode)] = fn
        return fn
    return register


def _reduced(gen):
    """Smaller bounds for inputs that are composed or multiplied several times."""
    return replace(gen, max_degree=min(gen.max_degree, 3), max_terms=min(gen.max_terms, 4),
                   max_depth=min(gen.max_depth, 3),
                   max_value=max(min(gen.max_value, 10.0), float(gen.coefficient_range)))


def _squashed(alphas):
    """Inner maps composed into another expression, kept inside (-1, 1)."""
    return [Prim('tanh', a) for a in alphas]


def _contraction(h):
    """`h` scaled so that it maps [-1, 1]^n into [-1, 1]^m."""
    return h / max(1.0, float(np.max(np.sum(np.abs(h), axis=1))))


# Deriving transformation

@_law('d-axioms', 'poly')
def _d_axioms_poly(trial):
    n = trial.dimension()
    p, q = gen_poly(trial.gen, trial.rng, n), gen_poly(trial.gen, trial.rng, n)
    c = gen_rational(trial.gen, trial.rng)
    trial.record('p', p)
    trial.record('q', q)
    trial.exact('derivative of a constant', d_sym(Poly.constant(c, n)), PolyOneForm.zero(n))
    trial.exact('Leibniz rule', d_sym(p * q), scale_oneform_sym(p, d_sym(q)) + scale_oneform_sym(q, d_sym(p)))
    for i in range(n):
        trial.exact('derivative of a linear function', d_sym(Poly.variable(i, n)), PolyOneForm.basis(i, n))
    jacobian = second_derivative_sym(p)
    trial.exact('symmetric second derivative', jacobian, jacobian.transpose())


@_law('d-axioms', 'smooth')
def _d_axioms_smooth(trial):
    n = trial.dimension()
    f, g = gen_expr(trial.gen, trial.rng, n), gen_expr(trial.gen, trial.rng, n)
    c = gen_constant(trial.gen, trial.rng)
    trial.record('f', f)
    trial.record('g', g)
    points = trial.sample(n)
    trial.close('derivative of a constant', d_smooth(c, n), SmoothOneForm.zero(n), points)
    df, dg = d_smooth(f, n), d_smooth(g, n)
    leibniz = SmoothOneForm(tuple(simplify(f * dg[i] + g * df[i]) for i in range(n)), n)
    trial.close('Leibniz rule', d_smooth(f * g, n), leibniz, points)
    for i in range(n):
        basis = SmoothOneForm(tuple(Const(1.0 if j == i else 0.0) for j in range(n)), n)
        trial.close('derivative of a linear function', d_smooth(Var(i), n), basis, points)
    hessian = d_twice(f, n)
    trial.close('symmetric second derivative', hessian, hessian.transpose(), points)


# Integral transformation

def _poly_two_tensor(trial, n):
    return PolyTwoTensor([[gen_poly(trial.gen, trial.rng, n) for _ in range(n)] for _ in range(n)], n)


@_law('s-axioms', 'poly')
def _s_axioms_poly(trial):
    s = trial.integral
    n = trial.dimension()
    omega, nu = gen_poly_oneform(trial.gen, trial.rng, n), gen_poly_oneform(trial.gen, trial.rng, n)
    tensor = _poly_two_tensor(trial, n)
    c = gen_rational(trial.gen, trial.rng)
    trial.record('omega', omega)
    trial.record('nu', nu)
    for i in range(n):
        trial.exact('integral of a constant', s(PolyOneForm.basis(i, n, Poly.constant(c, n))),
                    Poly.variable(i, n).scale(c))
    trial.exact('Rota-Baxter rule', s(omega) * s(nu),
                s(scale_oneform_sym(s(nu), omega)) + s(scale_oneform_sym(s(omega), nu)))
    trial.exact('interchange', s(s_first_slot_sym(tensor, s)), s(s_first_slot_sym(tensor.transpose(), s)))
    trial.exact('s = K^-1 d°', s(omega), degree_op_inverse_sym('K', coderiving_sym(omega)))
    trial.exact('s = d° J^-1', s(omega),
                coderiving_sym(PolyOneForm([degree_op_inverse_sym('J', c) for c in omega], n)))


@_law('s-axioms', 'smooth')
def _s_axioms_smooth(trial):
    n = trial.dimension()
    small = _reduced(trial.gen)
    omega, nu = gen_oneform(trial.gen, trial.rng, n), gen_oneform(trial.gen, trial.rng, n)
    tensor = SmoothTwoTensor(tuple(tuple(gen_expr(small, trial.rng, n) for _ in range(n)) for _ in range(n)), n)
    c = gen_constant(trial.gen, trial.rng)
    trial.record('omega', omega)
    trial.record('nu', nu)
    points = trial.sample(n)
    for i in range(n):
        constant = SmoothOneForm(tuple(c if j == i else Const(0.0) for j in range(n)), n)
        trial.close('integral of a constant', s_smooth(constant), c * Var(i), points)
    trial.close('Rota-Baxter rule', s_smooth(omega) * s_smooth(nu),
                s_smooth(scale_oneform(s_smooth(nu), omega)) + s_smooth(scale_oneform(s_smooth(omega), nu)), points)
    trial.close('interchange', s_smooth(s_first_slot(tensor)), s_smooth(s_first_slot(tensor.transpose())), points)
    trial.close('s = K* d°', s_smooth(omega), inverse_smooth('K', coderiving_smooth(omega), n), points)
    averaged = SmoothOneForm(tuple(inverse_smooth('J', c, n) for c in omega), n)
    trial.close('s = d° J*', s_smooth(omega), coderiving_smooth(averaged), points)


# Calculus

@_law('calculus', 'poly')
def _calculus_poly(trial):
    s = trial.integral
    n = trial.dimension()
    p = gen_poly(trial.gen, trial.rng, n)
    omega = gen_closed_poly_oneform(trial.gen, trial.rng, n)
    trial.record('p', p)
    trial.record('omega', omega)
    trial.exact('second fundamental theorem', s(d_sym(p)) + p.constant_term(), p)
    jacobian = PolyTwoTensor([[poly_partial(omega[i], j) for i in range(n)] for j in range(n)], n)
    trial.exact('closed', jacobian, jacobian.transpose())
    trial.exact('Poincaré condition', d_sym(s(omega)), omega)


@_law('calculus', 'smooth')
def _calculus_smooth(trial):
    n = trial.dimension()
    f, g = gen_expr(trial.gen, trial.rng, n), gen_expr(trial.gen, trial.rng, n)
    trial.record('f', f)
    trial.record('g', g)
    points = trial.sample(n)
    trial.close('second fundamental theorem', s_smooth(d_smooth(f, n)) + zero_map(f, n), f, points)
    omega = d_smooth(g, n)
    verdict = is_closed(omega, points=trial.points, tol=1e-9, seed=int(trial.rng.integers(2 ** 32)), quad=trial.quad)
    trial.bound('closed', verdict.asymmetry, 1e-9)
    trial.close('Poincaré condition', d_smooth(s_smooth(omega), n), omega, points, slack=10.0)


@_law('interchange', 'poly')
def _interchange_poly(trial):
    n = trial.dimension()
    p = gen_poly(trial.gen, trial.rng, n)
    trial.record('p', p)
    for i in range(n):
        for j in range(i + 1, n):
            trial.exact('mixed partials', poly_partial(poly_partial(p, i), j), poly_partial(poly_partial(p, j), i))
    jacobian = second_derivative_sym(p)
    trial.exact('symmetric second derivative', jacobian, jacobian.transpose())


@_law('interchange', 'smooth')
def _interchange_smooth(trial):
    n = trial.dimension()
    f = gen_expr(trial.gen, trial.rng, n)
    trial.record('f', f)
    hessian = d_twice(f, n)
    trial.close('symmetric second derivative', hessian, hessian.transpose(), trial.sample(n))


# Counit and quasi-codereliction

@_law('epsilon', 'poly')
def _epsilon_poly(trial):
    n = trial.dimension()
    small = _reduced(trial.gen)
    p, q = gen_poly(trial.gen, trial.rng, n), gen_poly(trial.gen, trial.rng, n)
    c = gen_rational(trial.gen, trial.rng)
    trial.record('p', p)
    trial.record('q', q)
    zero = tuple(Fraction(0) for _ in range(n))
    trial.exact('gradient of a constant', epsilon_sym(Poly.constant(c, n)), zero)
    product = tuple(counit_sym(p) * b + a * counit_sym(q) for a, b in zip(epsilon_sym(p), epsilon_sym(q)))
    trial.exact('product rule at zero', epsilon_sym(p * q), product)
    for i in range(n):
        basis = tuple(Fraction(1 if j == i else 0) for j in range(n))
        trial.exact('gradient of a coordinate', epsilon_sym(Poly.variable(i, n)), basis)
    m = trial.dimension(small)
    g = gen_poly(small, trial.rng, m)
    alphas = [gen_poly(small, trial.rng, n) for _ in range(m)]
    trial.record('g', g)
    trial.record('alpha', alphas)
    at_zero = [counit_sym(a) for a in alphas]
    chain = [sum((poly_eval(poly_partial(g, j), at_zero) * epsilon_sym(alphas[j])[i] for j in range(m)),
                 Fraction(0)) for i in range(n)]
    trial.exact('chain rule at zero', epsilon_sym(poly_substitute(g, alphas, dimension=n)), tuple(chain))
    trial.exact('counit multiplicative', counit_sym(p * q), counit_sym(p) * counit_sym(q))


@_law('epsilon', 'smooth')
def _epsilon_smooth(trial):
    n = trial.dimension()
    small = _reduced(trial.gen)
    f, g = gen_expr(trial.gen, trial.rng, n), gen_expr(trial.gen, trial.rng, n)
    c = gen_constant(trial.gen, trial.rng)
    trial.record('f', f)
    trial.record('g', g)
    quad = trial.quad
    trial.close('gradient of a constant', epsilon(c, n, quad), np.zeros(n), None)
    product = counit(f, n, quad) * epsilon(g, n, quad) + epsilon(f, n, quad) * counit(g, n, quad)
    trial.close('product rule at zero', epsilon(f * g, n, quad), product, None)
    for i in range(n):
        trial.exact('gradient of a coordinate', tuple(epsilon(Var(i), n, quad)),
                    tuple(1.0 if j == i else 0.0 for j in range(n)))
    m = trial.dimension(small)
    h = gen_expr(small, trial.rng, m)
    alphas = _squashed([gen_expr(small, trial.rng, n) for _ in range(m)])
    trial.record('h', h)
    trial.record('alpha', alphas)
    at_zero = np.array([counit(a, n, quad) for a in alphas])
    chain = np.zeros(n)
    for j in range(m):
        chain = chain + eval_expr(partial_expr(h, j), at_zero, quad) * epsilon(alphas[j], n, quad)
    trial.close('chain rule at zero', epsilon(subst_vector(h, alphas), n, quad), chain, None)
    trial.close('counit multiplicative', counit(f * g, n, quad), counit(f, n, quad) * counit(g, n, quad), None)


# Functoriality

def _rational_product(left, right):
    return [[sum((left[i][k] * right[k][j] for k in range(len(right))), Fraction(0))
             for j in range(len(right[0]))] for i in range(len(left))]


@_law('naturality', 'poly')
def _naturality_poly(trial):
    n = trial.dimension()
    m = trial.dimension()
    k = trial.dimension()
    p = gen_poly(trial.gen, trial.rng, n)
    h = gen_rational_matrix(trial.gen, trial.rng, m, n)
    trial.record('p', p)
    trial.record('h', h)
    moved = poly_linear_substitute(p, h)
    dp = d_sym(p)
    expected = PolyOneForm([sum((poly_linear_substitute(dp[j], h).scale(h[i][j]) for j in range(n)), Poly.zero(m))
                            for i in range(m)], m)
    trial.exact('naturality of d', d_sym(moved), expected)
    identity = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    trial.exact('identity map', poly_linear_substitute(p, identity), p)
    h2 = gen_rational_matrix(trial.gen, trial.rng, k, m)
    trial.exact('composition', poly_linear_substitute(moved, h2), poly_linear_substitute(p, _rational_product(h2, h)))


@_law('naturality', 'smooth')
def _naturality_smooth(trial):
    n = trial.dimension()
    m = trial.dimension()
    k = trial.dimension()
    f = gen_expr(trial.gen, trial.rng, n)
    h = _contraction(gen_matrix(trial.rng, m, n))
    trial.record('f', f)
    trial.record('h', h.tolist())
    moved = subst_linear(f, h)
    df = d_smooth(f, n)
    expected = SmoothOneForm(tuple(simplify(Sum(tuple(Const(h[i, j]) * subst_linear(df[j], h) for j in range(n))))
                                   for i in range(m)), m)
    trial.close('naturality of d', d_smooth(moved, m), expected, trial.sample(m))
    h2 = _contraction(gen_matrix(trial.rng, k, m))
    trial.close('composition', subst_linear(moved, h2), subst_linear(f, h2 @ h), trial.sample(k))


# Polynomials inside smooth functions

@_law('lambda-compat', 'poly')
def _lambda_poly(trial):
    s = trial.integral
    n = trial.dimension()
    omega = gen_poly_oneform(trial.gen, trial.rng, n)
    p = gen_poly(trial.gen, trial.rng, n)
    v = gen_rational_vector(trial.gen, trial.rng, n)
    trial.record('omega', omega)
    trial.record('p', p)
    trial.record('v', v)
    trial.exact('integral is the line integral', line_integral_exact_sym(omega, v), poly_eval(s(omega), v))
    trial.exact('gradient theorem', line_integral_exact_sym(d_sym(p), v), poly_eval(p, v) - p.constant_term())


@_law('lambda-compat', 'smooth')
def _lambda_smooth(trial):
    n = trial.dimension()
    p, q = gen_poly(trial.gen, trial.rng, n), gen_poly(trial.gen, trial.rng, n)
    omega = gen_poly_oneform(trial.gen, trial.rng, n)
    trial.record('p', p)
    trial.record('q', q)
    trial.record('omega', omega)
    points = trial.sample(n)
    included = SmoothOneForm(tuple(from_poly(c) for c in d_sym(p)), n)
    trial.close('derivative of the inclusion', d_smooth(from_poly(p), n), included, points)
    form = SmoothOneForm(tuple(from_poly(c) for c in omega), n)
    trial.close('integral of the inclusion', s_smooth(form), from_poly(s_sym(omega)), points)
    trial.close('inclusion is multiplicative', from_poly(p * q), from_poly(p) * from_poly(q), points)


# Chain rule

@_law('chain', 'poly')
def _chain_poly(trial):
    small = _reduced(trial.gen)
    n = trial.dimension()
    m = trial.dimension(small)
    g = gen_poly(small, trial.rng, m)
    alphas = [gen_poly(small, trial.rng, n) for _ in range(m)]
    trial.record('g', g)
    trial.record('alpha', alphas)
    composite = poly_substitute(g, alphas, dimension=n)
    expected = PolyOneForm.zero(n)
    for j in range(m):
        expected = expected + scale_oneform_sym(poly_substitute(poly_partial(g, j), alphas, dimension=n),
                                                d_sym(alphas[j]))
    trial.exact('chain rule', d_sym(composite), expected)


@_law('chain', 'smooth')
def _chain_smooth(trial):
    small = _reduced(trial.gen)
    n = trial.dimension()
    m = trial.dimension(small)
    g = gen_expr(small, trial.rng, m)
    alphas = _squashed([gen_expr(small, trial.rng, n) for _ in range(m)])
    trial.record('g', g)
    trial.record('alpha', alphas)
    composite = subst_vector(g, alphas)
    weights = [subst_vector(partial_expr(g, j), alphas) for j in range(m)]
    derivatives = [d_smooth(a, n) for a in alphas]
    expected = SmoothOneForm(tuple(simplify(Sum(tuple(weights[j] * derivatives[j][i] for j in range(m))))
                                   for i in range(n)), n)
    trial.close('chain rule', d_smooth(composite, n), expected, trial.sample(n))


# Inverses of K and J

@_law('inverses', 'poly')
def _inverses_poly(trial):
    n = trial.dimension()
    p = gen_poly(trial.gen, trial.rng, n)
    trial.record('p', p)
    for kind in ('K', 'J'):
        trial.exact(kind + ' inverse after ' + kind, degree_op_inverse_sym(kind, degree_op_sym(kind, p)), p)
        trial.exact(kind + ' after its inverse', degree_op_sym(kind, degree_op_inverse_sym(kind, p)), p)
    lp = degree_op_sym('L', p)
    trial.exact('L = d° d', lp, coderiving_sym(d_sym(p)))
    trial.exact('K = L + Sym(0)', degree_op_sym('K', p), lp + zero_map_sym(p))
    trial.exact('J = L + 1', degree_op_sym('J', p), lp + p)


@_law('inverses', 'smooth')
def _inverses_smooth(trial):
    n = trial.dimension()
    f = gen_expr(trial.gen, trial.rng, n)
    trial.record('f', f)
    points = trial.sample(n)
    quad = trial.quad
    trial.close('K* after K', inverse_smooth('K', op_LKJ_smooth('K', f, n, quad), n), f, points)
    trial.close('K after K*', op_LKJ_smooth('K', inverse_smooth('K', f, n), n, quad), f, points)
    trial.close('J* after J', inverse_smooth('J', op_LKJ_smooth('J', f, n, quad), n), f, points)
    trial.close('J after J*', op_LKJ_smooth('J', inverse_smooth('J', f, n), n, quad), f, points)
    w = gen_vector(trial.rng, n)
    t = fresh_param(all_params(f))
    body = Sum(tuple(Product((Param(t), Const(w[i]), scale_expr(partial_expr(f, i, n), t))) for i in range(n)))
    trial.close('gradient of the average', directional_derivation(inverse_smooth('J', f, n), w),
                simplify(Integral(t, body)), points)


# Rota-Baxter operators

@_law('rota-baxter', 'poly')
def _rota_baxter_poly(trial):
    s = trial.integral
    small = _reduced(trial.gen)
    n = trial.dimension()
    p, q, r = (gen_poly(small, trial.rng, n) for _ in range(3))
    v = gen_rational_vector(trial.gen, trial.rng, n)
    trial.record('p', p)
    trial.record('q', q)
    trial.record('r', r)
    trial.record('v', v)

    def rb(a):
        return rota_baxter_sym(a, v, s)

    def star(a, b):
        return double_product_sym(a, b, v, s)

    trial.exact('Rota-Baxter identity', rb(p) * rb(q), rb(p * rb(q)) + rb(rb(p) * q))
    trial.exact('double product commutative', star(p, q), star(q, p))
    trial.exact('P of the double product', rb(star(p, q)), rb(p) * rb(q))
    trial.exact('double product associative', star(star(p, q), r), star(p, star(q, r)))
    trial.exact('Rota-Baxter for the double product', star(rb(p), rb(q)), rb(star(rb(p), q) + star(p, rb(q))))


@_law('rota-baxter', 'smooth')
def _rota_baxter_smooth(trial):
    small = _reduced(trial.gen)
    n = trial.dimension()
    f, g, h = (gen_expr(small, trial.rng, n) for _ in range(3))
    v = gen_vector(trial.rng, n)
    trial.record('f', f)
    trial.record('g', g)
    trial.record('h', h)
    trial.record('v', v.tolist())
    points = trial.sample(n)

    def rb(a):
        return rota_baxter_smooth(a, v)

    def star(a, b):
        return double_product_smooth(a, b, v)

    trial.close('Rota-Baxter identity', rb(f) * rb(g), rb(f * rb(g)) + rb(rb(f) * g), points)
    trial.close('double product commutative', star(f, g), star(g, f), points)
    trial.close('P of the double product', rb(star(f, g)), rb(f) * rb(g), points)
    trial.close('double product associative', star(star(f, g), h), star(f, star(g, h)), points)
    line = trial.sample(1)
    trial.close('antiderivative of cos', rota_baxter_smooth(Prim('cos', Var(0)), [1.0]), Prim('sin', Var(0)), line)


# Derivations through the square-zero extension

@_law('derivation', 'poly')
def _derivation_poly(trial):
    small = _reduced(trial.gen)
    n = trial.dimension()
    m = trial.dimension(small)
    g = gen_poly(small, trial.rng, m)
    alphas = [gen_poly(small, trial.rng, n) for _ in range(m)]
    trial.record('g', g)
    trial.record('alpha', alphas)
    duals = [PolyDual(a, d_sym(a).components) for a in alphas]
    lifted = square_zero_apply_sym(g, duals)
    composite = poly_substitute(g, alphas, dimension=n)
    trial.exact('lift of the base', lifted.base, composite)
    trial.exact('lift is the derivative', PolyOneForm(lifted.tangent, n), d_sym(composite))
    trial.exact('projection', square_zero_apply_sym(Poly.variable(0, m), duals), duals[0])
    if m >= 2:
        both = square_zero_apply_sym(Poly.variable(0, m) + Poly.variable(1, m), duals)
        expected = PolyDual(duals[0].base + duals[1].base, [a + b for a, b in zip(duals[0].tangent, duals[1].tangent)])
        trial.exact('additivity', both, expected)


@_law('derivation', 'smooth')
def _derivation_smooth(trial):
    small = _reduced(trial.gen)
    n = trial.dimension()
    m = trial.dimension(small)
    g = gen_expr(small, trial.rng, m)
    alphas = _squashed([gen_expr(small, trial.rng, n) for _ in range(m)])
    f = gen_expr(trial.gen, trial.rng, n)
    w = gen_vector(trial.rng, n)
    trial.record('g', g)
    trial.record('alpha', alphas)
    trial.record('f', f)
    points = trial.sample(n)
    composite = subst_vector(g, alphas)
    duals = [DualElement(a, d_smooth(a, n).components) for a in alphas]
    lifted = square_zero_apply(g, duals, n)
    trial.close('lift is the derivative', SmoothOneForm(lifted.tangent, n), d_smooth(composite, n), points)
    directional = [DualElement(a, (directional_derivation(a, w),)) for a in alphas]
    trial.close('lift of a directional derivation', square_zero_apply(g, directional, n).tangent[0],
                directional_derivation(composite, w), points)
    for i in range(n):
        coordinates = [DualElement(Var(j), (Const(1.0 if j == i else 0.0),)) for j in range(n)]
        forward = square_zero_apply(f, coordinates, n).tangent[0]
        trial.close('forward derivative', forward, partial_expr(f, i, n), points)


# Running suites

def _integral_rule(name):
    if name == 'exact':
        return s_sym
    if name == 'naive':
        return naive_s_sym
    raise ValueError("unknown integral rule {!r}".format(name))


def _run_trial(task):
    suite, mode, cfg, gen, tolerance, rule, index = task
    rng = np.random.default_rng([cfg.seed, index])
    trial = Trial(index, rng, gen, cfg, tolerance, _integral_rule(rule))
    try:
        _REGISTRY[(suite, mode)](trial)
    except QuadratureError as error:
        return TrialOutcome(index, trial.error, tuple(trial.failed), True, dict(trial.inputs), str(error))
    return TrialOutcome(index, trial.error, tuple(trial.failed), False, dict(trial.inputs), '')


def run_suite(suite, mode, trial_cfg=TrialConfig(), gen_cfg=GenConfig(), integral='exact'):
    """Runs one law suite.

    Parameters
    ----------
    suite : str
        One of `SUITES`.

    mode : {'poly', 'smooth'}
        Exact polynomial checks or pointwise smooth checks.

    trial_cfg : TrialConfig
        Seed, trial count, sample points, tolerance, quadrature and jobs.

    gen_cfg : GenConfig
        Bounds of the random inputs.

    integral : {'exact', 'naive'}
        The polynomial integral transformation; 'naive' substitutes the
        per-variable rule and is only meaningful as a negative control.

    Returns
    -------
    LawReport :
        The aggregated outcome.  A trial is inconclusive when quadrature did
        not converge; such trials are counted apart from failures.
    """
    if (suite, mode) not in _REGISTRY:
        raise UnknownSuiteError("unknown law suite {!r} in mode {!r}; suites are {}".format(
            suite, mode, ", ".join(SUITES)))
    if integral != 'exact' and mode != 'poly':
        raise ValueError("the naive integral rule only exists for polynomials")
    if mode == 'poly':
        trials = trial_cfg.trials or DEFAULT_POLY_TRIALS
    else:
        trials = trial_cfg.trials or DEFAULT_SMOOTH_TRIALS[suite]
    tolerance = trial_cfg.tolerance or DEFAULT_TOLERANCES[suite]
    tasks = [(suite, mode, trial_cfg, gen_cfg, tolerance, integral, index) for index in range(trials)]

    logger.info("Running %s (%s): %d trials, seed %d", suite, mode, trials, trial_cfg.seed)
    start = time.perf_counter()
    if trial_cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=trial_cfg.jobs) as executor:
            outcomes = list(executor.map(_run_trial, tasks, chunksize=max(1, trials // (4 * trial_cfg.jobs))))
    else:
        outcomes = [_run_trial(task) for task in tasks]
    elapsed = time.perf_counter() - start

    failures = 0
    inconclusive = 0
    worst = 0.0
    for outcome in outcomes:
        if outcome.inconclusive:
            inconclusive += 1
            logger.warning("%s (%s) seed %d trial %d inconclusive: %s; inputs %s",
                           suite, mode, trial_cfg.seed, outcome.index, outcome.message, outcome.inputs)
            continue
        worst = max(worst, outcome.error)
        if outcome.failed:
            failures += 1
            logger.warning("%s (%s) seed %d trial %d failed %s with error %.3g; inputs %s",
                           suite, mode, trial_cfg.seed, outcome.index, ", ".join(outcome.failed),
                           outcome.error, outcome.inputs)
        else:
            logger.debug("%s (%s) trial %d passed with error %.3g", suite, mode, outcome.index, outcome.error)

    report = LawReport(law=suite, mode=mode, seed=trial_cfg.seed, trials=trials, failures=failures,
                       inconclusive=inconclusive, worst_error=float(worst),
                       elapsed_ms=int(round(elapsed * 1000)) if trial_cfg.timing else 0)
    logger.info("%s (%s): %d failures, %d inconclusive, worst error %.3g", suite, mode, failures, inconclusive,
                worst)
    return report


def run_all(mode='both', trial_cfg=TrialConfig(), gen_cfg=GenConfig()):
    """Runs every suite in `mode` ('poly', 'smooth' or 'both')."""
    modes = MODES if mode == 'both' else (mode,)
    if any(m not in MODES for m in modes):
        raise UnknownSuiteError("unknown mode {!r}".format(mode))
    return [run_suite(suite, m, trial_cfg, gen_cfg) for suite in SUITES for m in modes]


def run_negative_control(suite='s-axioms', trial_cfg=TrialConfig(), gen_cfg=GenConfig()):
    """Runs a polynomial suite with the naive integral rule in dimension 2.

    The naive rule breaks the Rota-Baxter rule in every dimension above one,
    so the returned report is expected to show failures.
    """
    if suite in SUITES and suite not in INTEGRAL_SUITES:
        raise ValueError("suite {!r} never applies the integral rule".format(suite))
    gen = replace(gen_cfg, min_dimension=2, max_dimension=2)
    return run_suite(suite, 'poly', trial_cfg, gen, integral='naive')


def reports_frame(reports):
    """The reports as a DataFrame indexed by law and mode, with a `passed` column."""
    df = pd.DataFrame([r.to_dict() for r in reports],
                      columns=['law', 'mode', 'seed', 'trials', 'failures', 'inconclusive', 'worst_error',
                               'elapsed_ms'])
    df['passed'] = [r.passed for r in reports]
    df.set_index(['law', 'mode'], inplace=True)
    return df
