# -*- coding: utf-8 -*-
"""The differential and integral structure of C-infinity(R^n).

Operators build expressions and never evaluate eagerly: the integral
transformation and the inverses of K and J produce `Integral` nodes, whose
cost is paid when the result is evaluated.  Only `counit`, `epsilon`, `K`
(for the value at the origin) and `is_closed` evaluate numerically.
"""

import logging
from collections import namedtuple
from dataclasses import dataclass

import numpy as np

from ..core import DimensionError, ExprError, check_length, sample_points
from .expr import (ZERO, Const, Integral, Product, Sum, Var, all_params, as_context, eval_expr,
                   eval_points, free_params, fresh_param, max_var_index, partial_expr, print_expr, scale_expr,
                   simplify, subst_linear, subst_vector)
from .quadrature import QuadConfig

logger = logging.getLogger(__name__)


def _check_closed(e, dimension, what):
    if free_params(e):
        raise ExprError("{} has unbound parameters {}".format(what, sorted(free_params(e))))
    if max_var_index(e) >= dimension:
        raise DimensionError("{} uses x{} outside dimension {}".format(what, max_var_index(e) + 1, dimension))


@dataclass(frozen=True)
class SmoothOneForm:
    """sum_i f_i dx_i with f_i closed expressions over R^n."""

    components: tuple
    dimension: int

    def __post_init__(self):
        object.__setattr__(self, 'components', tuple(self.components))
        check_length(self.components, self.dimension, '1-form')
        for c in self.components:
            _check_closed(c, self.dimension, '1-form component')

    @classmethod
    def zero(cls, dimension):
        return cls((ZERO,) * dimension, dimension)

    def __getitem__(self, i):
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return self.dimension

    def __str__(self):
        return format_oneform(self)


@dataclass(frozen=True)
class SmoothTwoTensor:
    """An n x n matrix of expressions; entry (j, i) is the coefficient of e_j (x) e_i."""

    entries: tuple
    dimension: int

    def __post_init__(self):
        object.__setattr__(self, 'entries', tuple(tuple(row) for row in self.entries))
        check_length(self.entries, self.dimension, 'two-tensor')
        for row in self.entries:
            check_length(row, self.dimension, 'two-tensor row')
            for e in row:
                _check_closed(e, self.dimension, 'two-tensor entry')

    def entry(self, j, i):
        return self.entries[j][i]

    def transpose(self):
        """Swaps the two vector slots."""
        n = self.dimension
        return SmoothTwoTensor(tuple(tuple(self.entries[i][j] for i in range(n)) for j in range(n)), n)


@dataclass(frozen=True)
class DualElement:
    """An element (base, tangent) of A (+) M, with M free of rank k over A."""

    base: object
    tangent: tuple

    def __post_init__(self):
        object.__setattr__(self, 'tangent', tuple(self.tangent))

    def __str__(self):
        return format_dual(self)


def format_oneform(omega):
    return ", ".join(print_expr(c) for c in omega)


def format_dual(dual):
    return "({}; {})".format(print_expr(dual.base), ", ".join(print_expr(t) for t in dual.tangent))


ClosednessVerdict = namedtuple('ClosednessVerdict', ['closed', 'asymmetry'])


def _sum(terms):
    return simplify(Sum(tuple(terms)))


def scale_oneform(f, omega):
    """Module action f * omega."""
    return SmoothOneForm(tuple(simplify(Product((f, c))) for c in omega), omega.dimension)


# Differential structure

def d_smooth(f, dimension):
    """The gradient 1-form sum_i df/dx_i dx_i of `f` over R^n.

    Parameters
    ----------
    f : Expr
        A closed expression.

    dimension : int or ExprContext
        The ambient dimension n.

    Returns
    -------
    SmoothOneForm :
        Component i is `partial_expr(f, i)`.
    """
    n = as_context(dimension).dimension
    _check_closed(f, n, 'expression')
    return SmoothOneForm(tuple(partial_expr(f, i, n) for i in range(n)), n)


def d_twice(f, dimension):
    """Second derivatives as a two-tensor; entry (j, i) is d/dx_j df/dx_i."""
    first = d_smooth(f, dimension)
    n = first.dimension
    return SmoothTwoTensor(tuple(tuple(partial_expr(first[i], j, n) for i in range(n)) for j in range(n)), n)


def coderiving_smooth(omega):
    """d°(omega) = sum_i omega_i * x_i."""
    return _sum(Product((c, Var(i))) for i, c in enumerate(omega))


def directional_derivation(f, w, dimension=None):
    """The derivation f -> grad f . w for a fixed vector w."""
    n = len(w) if dimension is None else as_context(dimension).dimension
    check_length(w, n, 'direction')
    return _sum(Product((Const(float(wi)), partial_expr(f, i, n))) for i, wi in enumerate(w))


def zero_map(f, dimension):
    """C-infinity(0)(f) = f composed with the zero map, as a closed expression without variables."""
    n = as_context(dimension).dimension
    return subst_linear(f, np.zeros((n, n)))


def _constant_at_origin(f, dimension, quad):
    value = zero_map(f, dimension)
    if isinstance(value, Const):
        return value
    return Const(eval_expr(f, np.zeros(dimension), quad))


def op_LKJ_smooth(kind, f, dimension, quad=QuadConfig()):
    """The operators L, K and J on C-infinity(R^n).

    L(f) = sum_i df/dx_i * x_i, K(f) = L(f) + f(0) and J(f) = L(f) + f.  K
    evaluates f at the origin, which needs quadrature when f contains
    integrals.
    """
    n = as_context(dimension).dimension
    lf = coderiving_smooth(d_smooth(f, n))
    if kind == 'L':
        return lf
    if kind == 'K':
        return _sum((lf, _constant_at_origin(f, n, quad)))
    if kind == 'J':
        return _sum((lf, f))
    raise ValueError("unknown degree operator {!r}".format(kind))


def inverse_smooth(kind, f, dimension):
    """The inverses K* and J*.

    J*(f)(v) is the integral of f(t v) over t, and K*(f)(v) is the double
    integral of grad f(s t v) . v over s and t, plus f(0).  The parameters
    are fresh for `f`.
    """
    n = as_context(dimension).dimension
    _check_closed(f, n, 'expression')
    taken = set(all_params(f))
    if kind == 'J':
        t = fresh_param(taken)
        return simplify(Integral(t, scale_expr(f, t)))
    if kind == 'K':
        s = fresh_param(taken)
        t = fresh_param(taken | {s})
        inner = _sum(Product((scale_expr(scale_expr(partial_expr(f, i, n), s), t), Var(i))) for i in range(n))
        double = Integral(t, Integral(s, inner))
        return _sum((double, zero_map(f, n)))
    raise ValueError("only K and J are invertible, got {!r}".format(kind))


# Integral structure

def s_smooth(omega):
    """The integral transformation: the line integral of omega from 0 to v.

    s(omega)(v) is the integral over t of sum_i omega_i(t v) v_i.
    """
    taken = set()
    for c in omega:
        taken |= all_params(c)
    t = fresh_param(taken)
    body = Sum(tuple(Product((scale_expr(c, t), Var(i))) for i, c in enumerate(omega)))
    return simplify(Integral(t, body))


def s_first_slot(tensor, integral=s_smooth):
    """Integrates the 1-forms sum_j T[j][i] dx_j, one for each i."""
    n = tensor.dimension
    return SmoothOneForm(tuple(integral(SmoothOneForm(tuple(tensor.entry(j, i) for j in range(n)), n))
                               for i in range(n)), n)


def rota_baxter_smooth(f, v):
    """P_v(f) = s(sum_i v_i f dx_i)."""
    n = len(v)
    _check_closed(f, n, 'expression')
    return s_smooth(SmoothOneForm(tuple(simplify(Product((Const(float(vi)), f))) for vi in v), n))


def double_product_smooth(f, g, v):
    """f *_P g = f P_v(g) + P_v(f) g."""
    n = len(v)
    _check_closed(f, n, 'left factor')
    _check_closed(g, n, 'right factor')
    return _sum((Product((f, rota_baxter_smooth(g, v))), Product((rota_baxter_smooth(f, v), g))))


# Counit and quasi-codereliction

def counit(f, dimension, quad=QuadConfig()):
    """e(f) = f(0), for f over R^n."""
    n = as_context(dimension).dimension
    _check_closed(f, n, 'expression')
    return eval_expr(f, np.zeros(n), quad)


def epsilon(f, dimension, quad=QuadConfig()):
    """The gradient of f at the origin, as an array of length n."""
    n = as_context(dimension).dimension
    _check_closed(f, n, 'expression')
    origin = np.zeros(n)
    return np.array([eval_expr(partial_expr(f, i, n), origin, quad) for i in range(n)])


# Square-zero extension

def square_zero_apply(g, duals, dimension):
    """Lifts the smooth operation g of arity k to A (+) M.

    Returns (g(a), sum_i dg/dy_i(a) m_i), where a are the bases and m the
    tangents of the k duals. Every base and tangent is an expression over
    R^n, n = `dimension`.
    """
    n = as_context(dimension).dimension
    duals = list(duals)
    if not duals:
        raise DimensionError("square-zero lift needs at least one argument")
    if max_var_index(g) >= len(duals):
        raise DimensionError("operation uses y{} but only {} duals were given".format(max_var_index(g) + 1,
                                                                                     len(duals)))
    rank = len(duals[0].tangent)
    for dual in duals:
        if len(dual.tangent) != rank:
            raise DimensionError("dual arguments disagree on module rank")
        _check_closed(dual.base, n, 'dual base')
        for t in dual.tangent:
            _check_closed(t, n, 'dual tangent')
    bases = [dual.base for dual in duals]
    base = simplify(subst_vector(g, bases))
    weights = [simplify(subst_vector(partial_expr(g, i), bases)) for i in range(len(duals))]
    tangent = tuple(_sum(Product((w, dual.tangent[c])) for w, dual in zip(weights, duals))
                    for c in range(rank))
    return DualElement(base, tangent)


# Closedness

def is_closed(omega, points=25, tol=1e-9, seed=0, quad=QuadConfig()):
    """Decides numerically whether omega is closed.

    Compares d omega_i / dx_j with d omega_j / dx_i at `points` seeded
    uniform samples of [-1, 1]^n.

    Returns
    -------
    ClosednessVerdict :
        `closed` is true when the largest absolute asymmetry is at most
        `tol`; `asymmetry` is that largest value.
    """
    n = omega.dimension
    if n < 2:
        return ClosednessVerdict(True, 0.0)
    rng = np.random.default_rng(seed)
    sample = sample_points(rng, points, n)
    asymmetry = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            difference = simplify(partial_expr(omega[i], j, n) - partial_expr(omega[j], i, n))
            asymmetry = max(asymmetry, float(np.max(np.abs(eval_points(difference, sample, quad)))))
    logger.debug("Closedness check over %d points: asymmetry %.3g", points, asymmetry)
    return ClosednessVerdict(asymmetry <= tol, asymmetry)


def eval_oneform(omega, points, quad=QuadConfig()):
    """Values of the components at each of the P points, shape (P, n)."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    return np.stack([eval_points(c, points, quad) for c in omega], axis=1) if omega.dimension \
        else np.zeros((points.shape[0], 0))
