# -*- coding: utf-8 -*-
"""Closed smooth expressions over R^n.

An `Expr` denotes an element of C-infinity(R^n).  Nodes are immutable
dataclasses; the operations on them (evaluation, partial derivatives,
substitutions, simplification, printing) are single-dispatch functions over
the node types.  `Integral(t, body)` denotes the integral of `body` over
t in [0, 1]; `Param(t)` may only occur below an `Integral` binding t.
"""

import logging
from dataclasses import dataclass
from functools import singledispatch

import numpy as np

from ..core import DimensionError, ExprError, check_index
from .quadrature import QuadConfig, integrate_unit

logger = logging.getLogger(__name__)

PRIMS = ('sin', 'cos', 'exp', 'tanh', 'atan')

_PRIM_FUNCTIONS = {
    'sin': np.sin,
    'cos': np.cos,
    'exp': np.exp,
    'tanh': np.tanh,
    'atan': np.arctan,
}


class Expr(object):
    """Base class of every expression node; provides the arithmetic operators."""

    __slots__ = ()

    def __add__(self, other):
        return Sum((self, as_expr(other)))

    def __radd__(self, other):
        return Sum((as_expr(other), self))

    def __sub__(self, other):
        return Sum((self, Negate(as_expr(other))))

    def __rsub__(self, other):
        return Sum((as_expr(other), Negate(self)))

    def __mul__(self, other):
        return Product((self, as_expr(other)))

    def __rmul__(self, other):
        return Product((as_expr(other), self))

    def __neg__(self):
        return Negate(self)

    def __pow__(self, exponent):
        return Power(self, exponent)

    def __str__(self):
        return print_expr(self)


@dataclass(frozen=True)
class Var(Expr):
    """The coordinate x_{index + 1}."""

    index: int

    def __post_init__(self):
        if self.index < 0:
            raise DimensionError("variable index must be nonnegative, got {}".format(self.index))


@dataclass(frozen=True)
class Param(Expr):
    """An integration parameter, bound by an enclosing Integral."""

    name: str


@dataclass(frozen=True)
class Const(Expr):
    value: float

    def __post_init__(self):
        object.__setattr__(self, 'value', float(self.value))


@dataclass(frozen=True)
class Sum(Expr):
    terms: tuple

    def __post_init__(self):
        object.__setattr__(self, 'terms', tuple(self.terms))


@dataclass(frozen=True)
class Product(Expr):
    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, 'factors', tuple(self.factors))


@dataclass(frozen=True)
class Power(Expr):
    base: Expr
    exponent: int

    def __post_init__(self):
        if int(self.exponent) != self.exponent or self.exponent < 0:
            raise ExprError("exponents must be nonnegative integers, got {!r}".format(self.exponent))
        object.__setattr__(self, 'exponent', int(self.exponent))


@dataclass(frozen=True)
class Negate(Expr):
    arg: Expr


@dataclass(frozen=True)
class Prim(Expr):
    kind: str
    arg: Expr

    def __post_init__(self):
        if self.kind not in PRIMS:
            raise ExprError("unknown primitive {!r}".format(self.kind))


@dataclass(frozen=True)
class Integral(Expr):
    """The integral of `body` over `param` in [0, 1]."""

    param: str
    body: Expr


ZERO = Const(0.0)
ONE = Const(1.0)


def as_expr(value):
    if isinstance(value, Expr):
        return value
    return Const(value)


@dataclass(frozen=True)
class ExprContext:
    """The ambient space R^n of an expression."""

    dimension: int

    def __post_init__(self):
        if self.dimension < 0:
            raise DimensionError("dimension must be nonnegative")

    def variables(self):
        return [Var(i) for i in range(self.dimension)]

    def origin(self):
        return np.zeros(self.dimension)

    def check(self, e):
        """Raises unless every variable of `e` lives in this space."""
        top = max_var_index(e)
        if top >= self.dimension:
            raise DimensionError("variable x{} out of range for dimension {}".format(top + 1, self.dimension))
        return e


def as_context(context):
    return context if isinstance(context, ExprContext) else ExprContext(int(context))


# Structural queries

def children(e):
    if isinstance(e, Sum):
        return e.terms
    if isinstance(e, Product):
        return e.factors
    if isinstance(e, (Power,)):
        return (e.base,)
    if isinstance(e, (Negate, Prim)):
        return (e.arg,)
    if isinstance(e, Integral):
        return (e.body,)
    return ()


def max_var_index(e):
    """Largest variable index in `e`, -1 when there is none."""
    if isinstance(e, Var):
        return e.index
    return max([max_var_index(c) for c in children(e)] or [-1])


def free_params(e):
    if isinstance(e, Param):
        return frozenset([e.name])
    if isinstance(e, Integral):
        return free_params(e.body) - {e.param}
    result = frozenset()
    for c in children(e):
        result = result | free_params(c)
    return result


def all_params(e):
    """Every parameter name occurring in `e`, bound or free."""
    if isinstance(e, Param):
        return frozenset([e.name])
    result = frozenset([e.param]) if isinstance(e, Integral) else frozenset()
    for c in children(e):
        result = result | all_params(c)
    return result


def is_closed_expr(e):
    return not free_params(e)


def fresh_param(avoid):
    """The first name t1, t2, ... not in `avoid`."""
    k = 1
    while 't{}'.format(k) in avoid:
        k += 1
    return 't{}'.format(k)


def _map_children(e, fn):
    if isinstance(e, Sum):
        return Sum(tuple(fn(t) for t in e.terms))
    if isinstance(e, Product):
        return Product(tuple(fn(f) for f in e.factors))
    if isinstance(e, Power):
        return Power(fn(e.base), e.exponent)
    if isinstance(e, Negate):
        return Negate(fn(e.arg))
    if isinstance(e, Prim):
        return Prim(e.kind, fn(e.arg))
    if isinstance(e, Integral):
        return Integral(e.param, fn(e.body))
    return e


def replace_vars(e, replacement):
    """Replaces every Var(i) by `replacement(i)`; parameters are untouched."""
    if isinstance(e, Var):
        return replacement(e.index)
    return _map_children(e, lambda c: replace_vars(c, replacement))


def rename_params(e, avoid):
    """Renames the Integral parameters of `e` so none of them is in `avoid`."""
    taken = set(avoid) | set(all_params(e))
    renaming = {}

    def visit(node, scope):
        if isinstance(node, Param):
            return Param(scope.get(node.name, node.name))
        if isinstance(node, Integral):
            name = node.param
            if name in avoid:
                if name not in renaming:
                    renaming[name] = fresh_param(taken)
                    taken.add(renaming[name])
                name = renaming[name]
            inner = dict(scope)
            inner[node.param] = name
            return Integral(name, visit(node.body, inner))
        return _map_children(node, lambda c: visit(c, scope))

    return visit(e, {})


# Evaluation

@singledispatch
def _evaluate(e, env):
    raise TypeError("cannot evaluate {!r}".format(e))


class _Environment(object):
    """Variable columns, bound parameter arrays and the quadrature settings."""

    __slots__ = ('variables', 'params', 'quad')

    def __init__(self, variables, params, quad):
        self.variables = variables
        self.params = params
        self.quad = quad

    def shape(self):
        return np.broadcast_shapes(*[np.shape(v) for v in self.variables],
                                   *[np.shape(p) for p in self.params.values()])


@_evaluate.register(Var)
def _(e, env):
    if e.index >= len(env.variables):
        raise DimensionError("variable x{} out of range for dimension {}".format(e.index + 1, len(env.variables)))
    return env.variables[e.index]


@_evaluate.register(Param)
def _(e, env):
    try:
        return env.params[e.name]
    except KeyError:
        raise ExprError("unbound parameter {!r}".format(e.name))


@_evaluate.register(Const)
def _(e, env):
    return e.value


@_evaluate.register(Sum)
def _(e, env):
    total = 0.0
    for t in e.terms:
        total = total + _evaluate(t, env)
    return total


@_evaluate.register(Product)
def _(e, env):
    total = 1.0
    for f in e.factors:
        total = total * _evaluate(f, env)
    return total


@_evaluate.register(Power)
def _(e, env):
    return _evaluate(e.base, env) ** e.exponent


@_evaluate.register(Negate)
def _(e, env):
    return -_evaluate(e.arg, env)


@_evaluate.register(Prim)
def _(e, env):
    return _PRIM_FUNCTIONS[e.kind](_evaluate(e.arg, env))


@_evaluate.register(Integral)
def _(e, env):
    outer = env.shape()

    def integrand(nodes):
        k = len(nodes)
        params = dict(env.params)
        params[e.param] = nodes.reshape((k,) + (1,) * len(outer))
        values = _evaluate(e.body, _Environment(env.variables, params, env.quad))
        return np.broadcast_to(values, (k,) + outer)

    return integrate_unit(integrand, env.quad).value


def eval_points(e, points, quad=QuadConfig()):
    """Evaluates `e` at every row of `points`.

    Parameters
    ----------
    e : Expr
        A closed expression.

    points : array-like
        Array of shape (P, n).

    quad : QuadConfig
        Settings for the Integral nodes.

    Returns
    -------
    numpy.ndarray :
        The P values.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if points.ndim != 2:
        raise DimensionError("points must form a (count, dimension) array")
    if free_params(e):
        raise ExprError("unbound parameters {}".format(sorted(free_params(e))))
    ExprContext(points.shape[1]).check(e)
    env = _Environment([points[:, i] for i in range(points.shape[1])], {}, quad)
    return np.broadcast_to(np.asarray(_evaluate(e, env), dtype=float), (points.shape[0],)).copy()


def eval_expr(e, point, quad=QuadConfig()):
    """Value of the closed expression `e` at a single point of R^n."""
    point = np.asarray(point, dtype=float).reshape(1, -1)
    return float(eval_points(e, point, quad)[0])


def eval_with_params(e, point, params, quad=QuadConfig()):
    """Evaluates `e` with its free parameters set to the scalars in `params`."""
    point = np.asarray(point, dtype=float)
    ExprContext(len(point)).check(e)
    env = _Environment(list(point), dict(params), quad)
    return float(_evaluate(e, env))


# Differentiation

@singledispatch
def _partial(e, i):
    raise TypeError("cannot differentiate {!r}".format(e))


@_partial.register(Var)
def _(e, i):
    return ONE if e.index == i else ZERO


@_partial.register(Param)
@_partial.register(Const)
def _(e, i):
    return ZERO


@_partial.register(Sum)
def _(e, i):
    return Sum(tuple(_partial(t, i) for t in e.terms))


@_partial.register(Product)
def _(e, i):
    terms = []
    for k, f in enumerate(e.factors):
        factors = list(e.factors)
        factors[k] = _partial(f, i)
        terms.append(Product(tuple(factors)))
    return Sum(tuple(terms))


@_partial.register(Power)
def _(e, i):
    if e.exponent == 0:
        return ZERO
    return Product((Const(e.exponent), Power(e.base, e.exponent - 1), _partial(e.base, i)))


@_partial.register(Negate)
def _(e, i):
    return Negate(_partial(e.arg, i))


@_partial.register(Prim)
def _(e, i):
    u = e.arg
    if e.kind == 'sin':
        outer = Prim('cos', u)
    elif e.kind == 'cos':
        outer = Negate(Prim('sin', u))
    elif e.kind == 'exp':
        outer = e
    elif e.kind == 'tanh':
        outer = Sum((ONE, Negate(Power(e, 2))))
    else:
        # 1 / (1 + u^2) written inside the primitive set
        outer = Power(Prim('cos', e), 2)
    return Product((outer, _partial(u, i)))


@_partial.register(Integral)
def _(e, i):
    return Integral(e.param, _partial(e.body, i))


def partial_expr(e, i, dimension=None):
    """Symbolic partial derivative of `e` with respect to x_{i + 1}.

    Integral nodes are differentiated under the integral sign.  The result is
    simplified.  When `dimension` is given, `i` is checked against it.
    """
    if dimension is not None:
        check_index(i, dimension)
    elif i < 0:
        raise DimensionError("variable index must be nonnegative, got {}".format(i))
    return simplify(_partial(e, i))


# Substitutions

def subst_linear(g, h):
    """C-infinity(h)(g): precomposition of `g` with the transpose of `h`.

    Parameters
    ----------
    g : Expr
        A closed expression over n variables.

    h : array-like
        An m x n real matrix, the linear map R^n -> R^m.

    Returns
    -------
    Expr :
        Over m variables; Var(j) is replaced by sum_i h[i][j] * Var(i).
    """
    h = np.asarray(h, dtype=float)
    if h.ndim != 2:
        raise DimensionError("linear map must be a matrix, got shape {}".format(h.shape))
    m, n = h.shape
    if max_var_index(g) >= n:
        raise DimensionError("expression uses x{} but the matrix has {} columns".format(max_var_index(g) + 1, n))

    def column(j):
        terms = [Product((Const(h[i, j]), Var(i))) for i in range(m) if h[i, j] != 0]
        return Sum(tuple(terms)) if terms else ZERO

    return simplify(replace_vars(g, column))


def subst_vector(g, alphas):
    """The composite g(alpha_1, ..., alpha_m).

    The integral parameters of the alphas are renamed apart from those of
    `g`, so parameter names stay unique along every path.
    """
    alphas = list(alphas)
    if max_var_index(g) >= len(alphas):
        raise DimensionError("expression uses y{} but only {} arguments were given".format(max_var_index(g) + 1,
                                                                                         len(alphas)))
    for a in alphas:
        if free_params(a):
            raise ExprError("substituted expressions must be closed")
    taken = set(all_params(g))
    renamed = []
    for a in alphas:
        a = rename_params(a, taken)
        taken |= all_params(a)
        renamed.append(a)
    return replace_vars(g, lambda j: renamed[j])


def scale_expr(e, param):
    """Replaces every Var(i) by Param(param) * Var(i).

    The result has `param` free; it is meant to be bound by an enclosing
    Integral.
    """
    if param in all_params(e):
        raise ExprError("parameter {!r} already occurs in the expression".format(param))
    return replace_vars(e, lambda i: Product((Param(param), Var(i))))


def from_poly(p):
    """The inclusion of polynomials into smooth functions.

    Coefficients are rounded to the nearest double.
    """
    terms = []
    for monomial, coefficient in p.sorted_terms():
        factors = [Var(i) if e == 1 else Power(Var(i), e) for i, e in monomial.powers]
        value = float(coefficient)
        if not factors:
            terms.append(Const(value))
            continue
        if value == -1.0:
            factors.insert(0, Const(-1.0))
        elif value != 1.0:
            factors.insert(0, Const(value))
        terms.append(factors[0] if len(factors) == 1 else Product(tuple(factors)))
    if not terms:
        return ZERO
    return terms[0] if len(terms) == 1 else Sum(tuple(terms))


# Simplification

@singledispatch
def _simplify(e):
    return e


@_simplify.register(Sum)
def _(e):
    terms = []
    constant = 0.0
    for t in e.terms:
        t = _simplify(t)
        parts = t.terms if isinstance(t, Sum) else (t,)
        for part in parts:
            if isinstance(part, Const):
                constant += part.value
            else:
                terms.append(part)
    if constant != 0.0 or not terms:
        terms.append(Const(constant))
    return terms[0] if len(terms) == 1 else Sum(tuple(terms))


def _simplify_factors(factors, constant=1.0):
    rest = []
    pending = list(factors)
    while pending:
        f = _simplify(pending.pop(0))
        if isinstance(f, Product):
            pending[:0] = f.factors
        elif isinstance(f, Negate):
            constant = -constant
            pending.insert(0, f.arg)
        elif isinstance(f, Const):
            constant *= f.value
        else:
            rest.append(f)
    if constant == 0.0:
        return ZERO
    if constant != 1.0 or not rest:
        rest.insert(0, Const(constant))
    return rest[0] if len(rest) == 1 else Product(tuple(rest))


@_simplify.register(Product)
def _(e):
    return _simplify_factors(e.factors)


@_simplify.register(Power)
def _(e):
    base = _simplify(e.base)
    if e.exponent == 0:
        return ONE
    if e.exponent == 1:
        return base
    if isinstance(base, Const):
        return Const(base.value ** e.exponent)
    if isinstance(base, Power):
        return Power(base.base, base.exponent * e.exponent)
    return Power(base, e.exponent)


@_simplify.register(Negate)
def _(e):
    arg = _simplify(e.arg)
    if isinstance(arg, Const):
        return Const(-arg.value)
    if isinstance(arg, Negate):
        return arg.arg
    if isinstance(arg, Product):
        return _simplify_factors(arg.factors, -1.0)
    return Negate(arg)


@_simplify.register(Prim)
def _(e):
    arg = _simplify(e.arg)
    if isinstance(arg, Const):
        return Const(float(_PRIM_FUNCTIONS[e.kind](arg.value)))
    return Prim(e.kind, arg)


@_simplify.register(Integral)
def _(e):
    body = _simplify(e.body)
    if e.param not in free_params(body):
        return body
    return Integral(e.param, body)


def simplify(e):
    """A pointwise-equal expression in normal form.

    Constants are folded, 0 and 1 units removed and nested sums and products
    flattened.  Products carry at most one constant, in front; negations of
    products are absorbed into that constant; integrals whose body does not
    depend on their parameter are replaced by the body.  Idempotent.
    """
    return _simplify(e)


# Printing

_SUM, _PRODUCT, _ATOM = 1, 2, 4


def _format_const(value):
    if value.is_integer() and abs(value) < 1e16:
        return '{:d}'.format(int(value))
    return repr(value)


def _precedence(e):
    if isinstance(e, Sum):
        return _SUM
    if isinstance(e, (Product, Negate)):
        return _PRODUCT
    if isinstance(e, Power):
        return 3
    if isinstance(e, Const) and e.value < 0:
        return _PRODUCT
    return _ATOM


def _is_negative(e):
    return isinstance(e, Negate) or (isinstance(e, Const) and e.value < 0)


def _format(e, level):
    text = _format_node(e)
    return "(" + text + ")" if _precedence(e) < level else text


def _format_node(e):
    if isinstance(e, Var):
        return "x{}".format(e.index + 1)
    if isinstance(e, Param):
        return e.name
    if isinstance(e, Const):
        return _format_const(e.value)
    if isinstance(e, Sum):
        pieces = [_format(e.terms[0], _SUM)]
        for t in e.terms[1:]:
            if isinstance(t, Negate):
                pieces.append(" - " + _format(t.arg, _PRODUCT))
            elif isinstance(t, Const) and t.value < 0:
                pieces.append(" - " + _format_const(-t.value))
            elif isinstance(t, Product) and _is_negative(t.factors[0]) and isinstance(t.factors[0], Const):
                if t.factors[0].value == -1.0:
                    rest = t.factors[1:]
                    flipped = rest[0] if len(rest) == 1 else Product(rest)
                    pieces.append(" - " + _format(flipped, _PRODUCT))
                else:
                    flipped = Product((Const(-t.factors[0].value),) + t.factors[1:])
                    pieces.append(" - " + _format_node(flipped))
            else:
                pieces.append(" + " + _format(t, _SUM + 1))
        return "".join(pieces)
    if isinstance(e, Product):
        pieces = [_format(e.factors[0], _PRODUCT)]
        for f in e.factors[1:]:
            pieces.append("(" + _format_node(f) + ")" if _is_negative(f) else _format(f, _PRODUCT + 1))
        return "*".join(pieces)
    if isinstance(e, Power):
        return "{}^{}".format(_format(e.base, _ATOM), e.exponent)
    if isinstance(e, Negate):
        return "-" + _format(e.arg, _ATOM)
    if isinstance(e, Prim):
        return "{}({})".format(e.kind, _format(e.arg, _SUM))
    if isinstance(e, Integral):
        return "int[{}]({})".format(e.param, _format(e.body, _SUM))
    raise TypeError("cannot print {!r}".format(e))


def print_expr(e):
    """Text of `e` in the expression grammar, e.g. ``sin(x1 + x2^2)``."""
    return _format_node(e)
