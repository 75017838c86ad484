# -*- coding: utf-8 -*-
"""The polynomial differential and integral structure on Sym(R^n).

Everything here is exact: d, the coderiving map, the degree operators L, K, J
and their inverses, the integral transformation s, the Rota-Baxter operators
P_v with their double product, the counit and the gradient at zero, and the
square-zero extension used for Sym-derivations.
"""

import logging
from fractions import Fraction

from ..core import DimensionError, check_index, check_length
from .polyring import Monomial, Poly, format_poly, homogeneous_components, poly_partial, poly_substitute

logger = logging.getLogger(__name__)


class PolyOneForm(object):
    """An element sum_i p_i dx_i of Sym(R^n) (x) R^n.

    Parameters
    ----------
    components : sequence of Poly
        Component i is the coefficient of dx_i; all share the dimension n,
        and there are exactly n of them.
    """

    __slots__ = ('_components', '_dimension')

    def __init__(self, components, dimension=None):
        components = tuple(components)
        if dimension is None:
            if not components:
                raise DimensionError("an empty 1-form needs an explicit dimension")
            dimension = components[0].dimension
        check_length(components, dimension, '1-form')
        for c in components:
            if c.dimension != dimension:
                raise DimensionError("1-form component over dimension {}, expected {}".format(c.dimension, dimension))
        self._components = components
        self._dimension = dimension

    @classmethod
    def zero(cls, dimension):
        return cls([Poly.zero(dimension)] * dimension, dimension)

    @classmethod
    def basis(cls, index, dimension, coefficient=None):
        """coefficient * dx_index (coefficient defaults to 1)."""
        check_index(index, dimension)
        if coefficient is None:
            coefficient = Poly.constant(1, dimension)
        return cls([coefficient if i == index else Poly.zero(dimension) for i in range(dimension)], dimension)

    @property
    def components(self):
        return self._components

    @property
    def dimension(self):
        return self._dimension

    def __getitem__(self, i):
        return self._components[i]

    def __len__(self):
        return self._dimension

    def __iter__(self):
        return iter(self._components)

    def __add__(self, other):
        if other.dimension != self._dimension:
            raise DimensionError("1-form dimension mismatch")
        return PolyOneForm([a + b for a, b in zip(self, other)], self._dimension)

    def __sub__(self, other):
        if other.dimension != self._dimension:
            raise DimensionError("1-form dimension mismatch")
        return PolyOneForm([a - b for a, b in zip(self, other)], self._dimension)

    def __eq__(self, other):
        return isinstance(other, PolyOneForm) and self._components == other._components \
            and self._dimension == other._dimension

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self._dimension, self._components))

    def __repr__(self):
        return "PolyOneForm({!r})".format(format_oneform_sym(self))


class PolyTwoTensor(object):
    """An element of Sym(R^n) (x) R^n (x) R^n as an n x n matrix of Poly.

    Entry (j, i) is the coefficient of e_j (x) e_i.
    """

    __slots__ = ('_entries', '_dimension')

    def __init__(self, entries, dimension=None):
        entries = tuple(tuple(row) for row in entries)
        if dimension is None:
            dimension = len(entries)
        check_length(entries, dimension, 'two-tensor')
        for row in entries:
            check_length(row, dimension, 'two-tensor row')
            for p in row:
                if p.dimension != dimension:
                    raise DimensionError("two-tensor entry over the wrong dimension")
        self._entries = entries
        self._dimension = dimension

    @property
    def entries(self):
        return self._entries

    @property
    def dimension(self):
        return self._dimension

    def entry(self, j, i):
        return self._entries[j][i]

    def transpose(self):
        """Swaps the two vector slots."""
        n = self._dimension
        return PolyTwoTensor([[self._entries[i][j] for i in range(n)] for j in range(n)], n)

    def is_symmetric(self):
        return self == self.transpose()

    def __eq__(self, other):
        return isinstance(other, PolyTwoTensor) and self._entries == other._entries

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self._entries)


def format_oneform_sym(omega):
    return ", ".join(format_poly(c) for c in omega)


def scale_oneform_sym(p, omega):
    """Module action p * omega, componentwise."""
    return PolyOneForm([p * c for c in omega], omega.dimension)


# Differential structure

def d_sym(p):
    """The deriving transformation: the gradient 1-form sum_i dp/dx_i dx_i."""
    return PolyOneForm([poly_partial(p, i) for i in range(p.dimension)], p.dimension)


def second_derivative_sym(p):
    """d applied twice; entry (j, i) is d^2 p / dx_j dx_i."""
    first = d_sym(p)
    n = p.dimension
    return PolyTwoTensor([[poly_partial(first[i], j) for i in range(n)] for j in range(n)], n)


def coderiving_sym(omega):
    """d°(omega) = sum_i omega_i * x_i."""
    n = omega.dimension
    total = Poly.zero(n)
    for i, c in enumerate(omega):
        total = total + c * Poly.variable(i, n)
    return total


def _scale_by_degree(p, factor):
    result = Poly.zero(p.dimension)
    for degree, component in homogeneous_components(p).items():
        result = result + component.scale(factor(degree))
    return result


def zero_map_sym(p):
    """Sym(0)(p): the constant polynomial with p's constant term."""
    return Poly.constant(p.constant_term(), p.dimension)


def degree_op_sym(kind, p):
    """The operators L = d d°, K = L + Sym(0) and J = L + 1.

    Parameters
    ----------
    kind : {'L', 'K', 'J'}

    p : Poly

    Returns
    -------
    Poly :
        L multiplies the degree-d part by d, K by d and fixes constants, J by
        d + 1.
    """
    if kind == 'L':
        return _scale_by_degree(p, lambda d: d)
    if kind == 'K':
        return _scale_by_degree(p, lambda d: d if d else 1)
    if kind == 'J':
        return _scale_by_degree(p, lambda d: d + 1)
    raise ValueError("unknown degree operator {!r}".format(kind))


def degree_op_inverse_sym(kind, p):
    """Exact inverses of K and J."""
    if kind == 'K':
        return _scale_by_degree(p, lambda d: Fraction(1, d) if d else 1)
    if kind == 'J':
        return _scale_by_degree(p, lambda d: Fraction(1, d + 1))
    raise ValueError("only K and J are invertible, got {!r}".format(kind))


# Integral structure

def s_sym(omega):
    """The integral transformation on polynomial 1-forms.

    Each term x^a dx_i is sent to x^a * x_i / (1 + |a|), where |a| is the
    total degree of x^a.
    """
    n = omega.dimension
    terms = []
    for i, c in enumerate(omega):
        for monomial, coefficient in c.terms.items():
            terms.append((monomial * Monomial([(i, 1)]), coefficient / (1 + monomial.degree)))
    return Poly(n, terms)


def naive_s_sym(omega):
    """The per-variable rule x^a dx_i -> x^a * x_i / (a_i + 1).

    Integrates each component in its own variable only. It integrates constants
    correctly but breaks the Rota-Baxter rule once n >= 2; the law suites use
    it as a negative control.
    """
    n = omega.dimension
    terms = []
    for i, c in enumerate(omega):
        for monomial, coefficient in c.terms.items():
            terms.append((monomial * Monomial([(i, 1)]), coefficient / (1 + monomial.exponent(i))))
    return Poly(n, terms)


def s_first_slot_sym(tensor, integral=s_sym):
    """Applies s to S(C) (x) C, keeping the last vector slot.

    For every i, the 1-form sum_j T[j][i] dx_j is integrated; the results
    form a new 1-form indexed by i.
    """
    n = tensor.dimension
    return PolyOneForm([integral(PolyOneForm([tensor.entry(j, i) for j in range(n)], n)) for i in range(n)], n)


def rota_baxter_sym(p, v, integral=s_sym):
    """P_v(p) = s(sum_i v_i p dx_i)."""
    check_length(v, p.dimension, 'direction')
    return integral(PolyOneForm([p.scale(Fraction(vi)) for vi in v], p.dimension))


def double_product_sym(p, q, v, integral=s_sym):
    """p *_P q = p P_v(q) + P_v(p) q."""
    if p.dimension != q.dimension:
        raise DimensionError("double product of polynomials over different dimensions")
    return p * rota_baxter_sym(q, v, integral) + rota_baxter_sym(p, v, integral) * q


# Counit, gradient at zero and the polynomial line integral

def counit_sym(p):
    """Evaluation at the origin."""
    return p.constant_term()


def epsilon_sym(p):
    """Gradient at the origin: the coefficients of the linear monomials."""
    return tuple(p.coefficient(Monomial([(i, 1)])) for i in range(p.dimension))


def _univariate_at_ray(p, v):
    """Coefficients of t -> p(t v) as a dict degree -> Fraction."""
    coefficients = {}
    for monomial, coefficient in p.terms.items():
        value = coefficient
        for i, e in monomial.powers:
            value = value * Fraction(v[i]) ** e
        coefficients[monomial.degree] = coefficients.get(monomial.degree, 0) + value
    return coefficients


def line_integral_exact_sym(omega, v):
    """Integral of omega along the segment from 0 to v, computed exactly.

    The integrand t -> sum_i omega_i(t v) v_i is a polynomial in t with
    rational coefficients, integrated term by term over [0, 1].
    """
    check_length(v, omega.dimension, 'endpoint')
    total = Fraction(0)
    for i, c in enumerate(omega):
        for degree, coefficient in _univariate_at_ray(c, v).items():
            total += coefficient * Fraction(v[i]) / (degree + 1)
    return total


# Square-zero extension

class PolyDual(object):
    """A pair (base, tangent) in A (+) M with A = Sym(R^n) and M = A^k."""

    __slots__ = ('base', 'tangent')

    def __init__(self, base, tangent):
        tangent = tuple(tangent)
        for t in tangent:
            if t.dimension != base.dimension:
                raise DimensionError("dual tangent over the wrong dimension")
        self.base = base
        self.tangent = tangent

    def __eq__(self, other):
        return isinstance(other, PolyDual) and self.base == other.base and self.tangent == other.tangent

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.base, self.tangent))

    def __repr__(self):
        return "PolyDual(({}; {}))".format(format_poly(self.base), ", ".join(format_poly(t) for t in self.tangent))


def square_zero_apply_sym(g, duals):
    """Lifts the polynomial operation g to A (+) M.

    Returns the dual (g(a), sum_i dg/dy_i(a) m_i) where a are the bases and m
    the tangents of `duals`.
    """
    check_length(duals, g.dimension, 'dual arguments')
    if not duals:
        raise DimensionError("square-zero lift needs at least one argument")
    n = duals[0].base.dimension
    k = len(duals[0].tangent)
    for dual in duals:
        if dual.base.dimension != n or len(dual.tangent) != k:
            raise DimensionError("dual arguments disagree on dimension or module rank")
    bases = [dual.base for dual in duals]
    base = poly_substitute(g, bases, dimension=n)
    tangent = [Poly.zero(n) for _ in range(k)]
    for i, dual in enumerate(duals):
        weight = poly_substitute(poly_partial(g, i), bases, dimension=n)
        tangent = [t + weight * m for t, m in zip(tangent, dual.tangent)]
    return PolyDual(base, tangent)
