# -*- coding: utf-8 -*-
"""Sparse multivariate polynomials with exact rational coefficients.

A `Poly` over dimension n is an element of Sym(R^n) = R[x1..xn]. Coefficients
are `fractions.Fraction`, so every identity checked on polynomials is an
exact equality.
"""

import logging
import numbers
from fractions import Fraction
from types import MappingProxyType

from ..core import DimensionError, check_index, check_length

logger = logging.getLogger(__name__)

Rational = Fraction


class Monomial(object):
    """A product of variables, stored as sorted (index, exponent) pairs.

    Exponents are positive; the empty monomial is the constant 1.
    """

    __slots__ = ('_powers',)

    def __init__(self, powers=()):
        if isinstance(powers, dict):
            powers = powers.items()
        cleaned = {}
        for index, exponent in powers:
            if exponent < 0 or index < 0:
                raise ValueError("invalid monomial entry ({}, {})".format(index, exponent))
            if exponent:
                cleaned[int(index)] = cleaned.get(int(index), 0) + int(exponent)
        self._powers = tuple(sorted(cleaned.items()))

    @classmethod
    def from_exponents(cls, exponents):
        """Builds a monomial from a dense exponent vector."""
        return cls(enumerate(exponents))

    @property
    def powers(self):
        return self._powers

    @property
    def degree(self):
        return sum(e for _, e in self._powers)

    def exponent(self, index):
        for i, e in self._powers:
            if i == index:
                return e
        return 0

    def max_index(self):
        return self._powers[-1][0] if self._powers else -1

    def dense(self, dimension):
        exponents = [0] * dimension
        for i, e in self._powers:
            exponents[i] = e
        return tuple(exponents)

    def __mul__(self, other):
        return Monomial(self._powers + other._powers)

    def divide_variable(self, index):
        """Lowers the exponent of `index` by one; the caller checks it is positive."""
        return Monomial((i, e - 1 if i == index else e) for i, e in self._powers)

    def __eq__(self, other):
        return isinstance(other, Monomial) and self._powers == other._powers

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self._powers)

    def __repr__(self):
        return "Monomial({!r})".format(dict(self._powers))


ONE = Monomial()


def _as_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, numbers.Rational):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    raise TypeError("cannot use {!r} as an exact coefficient".format(value))


class Poly(object):
    """An immutable sparse polynomial over `dimension` variables.

    Parameters
    ----------
    dimension : int
        Number of variables n (0 is allowed: the polynomial is a constant).

    terms : mapping Monomial -> Fraction, or iterable of pairs
        Zero coefficients are dropped; repeated monomials are summed.
    """

    __slots__ = ('_dimension', '_terms', '_hash')

    def __init__(self, dimension, terms=()):
        if dimension < 0:
            raise DimensionError("dimension must be nonnegative")
        if isinstance(terms, dict) or isinstance(terms, MappingProxyType):
            terms = terms.items()
        collected = {}
        for monomial, coefficient in terms:
            if monomial.max_index() >= dimension:
                raise DimensionError("monomial {!r} invalid for dimension {}".format(monomial, dimension))
            collected[monomial] = collected.get(monomial, 0) + _as_fraction(coefficient)
        self._dimension = dimension
        self._terms = {m: c for m, c in collected.items() if c != 0}
        self._hash = None

    # Constructors

    @classmethod
    def zero(cls, dimension):
        return cls(dimension)

    @classmethod
    def constant(cls, value, dimension):
        return cls(dimension, [(ONE, value)])

    @classmethod
    def variable(cls, index, dimension):
        check_index(index, dimension)
        return cls(dimension, [(Monomial([(index, 1)]), 1)])

    @classmethod
    def generators(cls, dimension):
        return [cls.variable(i, dimension) for i in range(dimension)]

    # Accessors

    @property
    def dimension(self):
        return self._dimension

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def is_zero(self):
        return not self._terms

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max([m.degree for m in self._terms] or [-1])

    def coefficient(self, monomial):
        return self._terms.get(monomial, Fraction(0))

    def constant_term(self):
        return self.coefficient(ONE)

    def sorted_terms(self):
        """Terms in graded lexicographic order, highest first."""
        return sorted(self._terms.items(),
                      key=lambda item: (-item[0].degree,
                                        tuple(-e for e in item[0].dense(self._dimension))))

    # Arithmetic

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other._dimension != self._dimension:
                raise DimensionError("dimension mismatch: {} vs {}".format(self._dimension, other._dimension))
            return other
        return Poly.constant(_as_fraction(other), self._dimension)

    def __add__(self, other):
        other = self._coerce(other)
        return Poly(self._dimension, list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self):
        return Poly(self._dimension, [(m, -c) for m, c in self._terms.items()])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        other = self._coerce(other)
        products = [(m1 * m2, c1 * c2)
                    for m1, c1 in self._terms.items()
                    for m2, c2 in other._terms.items()]
        return Poly(self._dimension, products)

    __rmul__ = __mul__

    def scale(self, factor):
        factor = _as_fraction(factor)
        return Poly(self._dimension, [(m, c * factor) for m, c in self._terms.items()])

    def __pow__(self, exponent):
        if not isinstance(exponent, numbers.Integral) or exponent < 0:
            raise ValueError("polynomials only support nonnegative integer powers")
        result = Poly.constant(1, self._dimension)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._dimension == other._dimension and self._terms == other._terms
        if isinstance(other, numbers.Number):
            return self == Poly.constant(other, self._dimension)
        return NotImplemented

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._dimension, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return "Poly({}, {!r})".format(self._dimension, format_poly(self))

    def __str__(self):
        return format_poly(self)

    def max_abs_coefficient(self):
        return max([abs(c) for c in self._terms.values()] or [Fraction(0)])


def poly_arith(op, lhs, rhs):
    """Applies a ring operation.

    Parameters
    ----------
    op : {'add', 'mul', 'scale'}
        The operation.

    lhs : Poly

    rhs : Poly or rational
        A Poly for 'add' and 'mul' (a rational is read as a constant), a
        rational scalar for 'scale'.

    Returns
    -------
    Poly :
        The exact result.
    """
    if op == 'add':
        return lhs + rhs
    if op == 'mul':
        return lhs * rhs
    if op == 'scale':
        return lhs.scale(rhs)
    raise ValueError("unknown polynomial operation {!r}".format(op))


def poly_eval(p, point):
    """Evaluates `p` at `point`.

    The result is an exact Fraction when every coordinate is rational, and a
    float otherwise.
    """
    check_length(point, p.dimension, 'evaluation point')
    exact = all(isinstance(v, numbers.Rational) for v in point)
    values = [Fraction(v) for v in point] if exact else [float(v) for v in point]
    total = Fraction(0) if exact else 0.0
    for monomial, coefficient in p.terms.items():
        term = coefficient if exact else float(coefficient)
        for i, e in monomial.powers:
            term = term * values[i] ** e
        total = total + term
    return total


def poly_partial(p, i):
    """Exact partial derivative of `p` with respect to variable `i`."""
    check_index(i, p.dimension)
    derived = []
    for monomial, coefficient in p.terms.items():
        e = monomial.exponent(i)
        if e:
            derived.append((monomial.divide_variable(i), coefficient * e))
    return Poly(p.dimension, derived)


def poly_substitute(p, assignment, dimension=None):
    """Substitutes polynomials for the variables of `p`.

    Parameters
    ----------
    p : Poly
        A polynomial in m outer variables.

    assignment : sequence of Poly
        m polynomials over a common dimension n; variable j of `p` is
        replaced by `assignment[j]`.

    dimension : int or None
        The target dimension n; only needed when `p` has no variables.

    Returns
    -------
    Poly :
        The fully expanded composite, over dimension n.
    """
    check_length(assignment, p.dimension, 'assignment')
    if dimension is None:
        if not assignment:
            raise DimensionError("target dimension is required when substituting into a constant")
        dimension = assignment[0].dimension
    for a in assignment:
        if a.dimension != dimension:
            raise DimensionError("assignment polynomials have mixed dimensions")
    powers_cache = {}
    result = Poly.zero(dimension)
    for monomial, coefficient in p.terms.items():
        term = Poly.constant(coefficient, dimension)
        for j, e in monomial.powers:
            if (j, e) not in powers_cache:
                powers_cache[(j, e)] = assignment[j] ** e
            term = term * powers_cache[(j, e)]
        result = result + term
    return result


def poly_linear_substitute(p, matrix):
    """Sym(h) for a linear map h given as an m x n rational matrix.

    Variable j of `p` (over dimension n) becomes sum_i h[i][j] * x_i over
    dimension m, i.e. p is precomposed with the transpose of h.
    """
    m = len(matrix)
    for row in matrix:
        check_length(row, p.dimension, 'matrix row')
    assignment = [Poly(m, [(Monomial([(i, 1)]), matrix[i][j]) for i in range(m)])
                  for j in range(p.dimension)]
    return poly_substitute(p, assignment, dimension=m)


def homogeneous_components(p):
    """Splits `p` by total degree.

    Returns
    -------
    dict :
        Degree -> homogeneous Poly; the zero polynomial gives an empty dict.
    """
    buckets = {}
    for monomial, coefficient in p.terms.items():
        buckets.setdefault(monomial.degree, []).append((monomial, coefficient))
    return {d: Poly(p.dimension, items) for d, items in buckets.items()}


def _format_coefficient(c):
    return str(c) if c.denominator == 1 else "{}/{}".format(c.numerator, c.denominator)


def format_monomial(monomial):
    factors = []
    for i, e in monomial.powers:
        factors.append("x{}".format(i + 1) if e == 1 else "x{}^{}".format(i + 1, e))
    return "*".join(factors)


def format_poly(p):
    """Canonical text, graded lexicographic, e.g. ``3/8*x1^3*x2^5 + 1/4*x1^3*x2``."""
    if p.is_zero():
        return "0"
    pieces = []
    for k, (monomial, coefficient) in enumerate(p.sorted_terms()):
        magnitude = abs(coefficient)
        body = format_monomial(monomial)
        if not body:
            text = _format_coefficient(magnitude)
        elif magnitude == 1:
            text = body
        else:
            text = _format_coefficient(magnitude) + "*" + body
        if k == 0 and coefficient < 0:
            # a leading minus binds to the first atom, before its exponent
            pieces.append("-(" + text + ")" if text.split('*')[0].find('^') >= 0 else "-" + text)
        elif k == 0:
            pieces.append(text)
        else:
            pieces.append((" - " if coefficient < 0 else " + ") + text)
    return "".join(pieces)
