# -*- coding: utf-8 -*-
"""Text grammar shared by polynomials, smooth expressions, 1-forms and duals.

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' uint)?
    atom   := 'x' uint | number | prim '(' expr ')' | '(' expr ')' | '-' atom
            | 'int' '[' name ']' '(' expr ')' | name
    prim   := 'sin' | 'cos' | 'exp' | 'tanh' | 'atan'

A leading minus binds tighter than `^`, so ``-x1^2`` is ``(-x1)^2``.
Variables are 1-indexed in text.  Numbers may be decimals, use scientific
notation or be written as a ratio ``p/q``.  A bare name is only accepted
inside an integral binding it.  A 1-form is a comma-separated list of
expressions and a dual element is written ``(base; t1, t2, ...)``.
"""

import logging
import re
from fractions import Fraction

from .algebra.polyring import Poly
from .algebra.sym import PolyDual, PolyOneForm
from .core import DimensionError, ParseError
from .smooth.expr import PRIMS, Const, Integral, Negate, Param, Power, Prim, Product, Sum, Var, as_context
from .smooth.modality import DualElement, SmoothOneForm

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"""
    (?P<space>\s+)
  | (?P<number>\d+/\d+|(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<symbol>[-+*^(),;\[\]])
""", re.VERBOSE)

_VARIABLE = re.compile(r'x(\d+)$')

_KEYWORDS = set(PRIMS) | {'int'}


def tokenize(text):
    """Splits `text` into (kind, value, position) triples, ending with an 'end' token."""
    tokens = []
    position = 0
    while position < len(text):
        match = _TOKEN.match(text, position)
        if match is None:
            raise ParseError("unexpected character {!r}".format(text[position]), text, position)
        kind = match.lastgroup
        if kind != 'space':
            tokens.append((kind, match.group(), position))
        position = match.end()
    tokens.append(('end', '', len(text)))
    return tokens


class ExprBuilder(object):
    """Builds smooth expressions; numbers become double-precision constants."""

    allows_integrals = True

    def number(self, text):
        return Const(float(Fraction(text)))

    def variable(self, index):
        return Var(index)

    def param(self, name):
        return Param(name)

    def add(self, terms):
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def multiply(self, factors):
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def negate(self, value):
        return Negate(value)

    def power(self, base, exponent):
        return Power(base, exponent)

    def prim(self, kind, arg):
        return Prim(kind, arg)

    def integral(self, name, body):
        return Integral(name, body)


class PolyBuilder(object):
    """Builds exact polynomials over a fixed dimension; rejects primitives and integrals."""

    allows_integrals = False

    def __init__(self, dimension):
        self.dimension = dimension

    def number(self, text):
        return Poly.constant(Fraction(text), self.dimension)

    def variable(self, index):
        return Poly.variable(index, self.dimension)

    def param(self, name):
        raise ValueError("parameters are not polynomials")

    def add(self, terms):
        total = terms[0]
        for t in terms[1:]:
            total = total + t
        return total

    def multiply(self, factors):
        total = factors[0]
        for f in factors[1:]:
            total = total * f
        return total

    def negate(self, value):
        return -value

    def power(self, base, exponent):
        return base ** exponent

    def prim(self, kind, arg):
        raise ValueError("{} is not a polynomial operation".format(kind))

    def integral(self, name, body):
        raise ValueError("integrals are not polynomials")


class Parser(object):
    """Recursive descent parser over the grammar above.

    Parameters
    ----------
    text : str
        The input.

    builder : ExprBuilder or PolyBuilder
        Constructs the values of the recognized phrases.

    dimension : int or None
        When given, variables beyond x{dimension} are rejected.
    """

    def __init__(self, text, builder, dimension=None):
        self.text = text
        self.builder = builder
        self.dimension = dimension
        self.tokens = tokenize(text)
        self.index = 0
        self.bound = []

    # Token helpers

    def peek(self):
        return self.tokens[self.index]

    def advance(self):
        token = self.tokens[self.index]
        self.index += 1
        return token

    def at(self, value):
        kind, text, _ = self.peek()
        return kind in ('symbol', 'name') and text == value

    def expect(self, value):
        kind, text, position = self.peek()
        if not self.at(value):
            found = "end of input" if kind == 'end' else repr(text)
            raise ParseError("expected {!r} but found {}".format(value, found), self.text, position)
        return self.advance()

    def fail(self, message, position=None):
        if position is None:
            position = self.peek()[2]
        raise ParseError(message, self.text, position)

    def build(self, method, *args):
        try:
            return getattr(self.builder, method)(*args)
        except (ValueError, ZeroDivisionError) as error:
            self.fail(str(error))

    # Grammar

    def parse_expr(self):
        terms = [self.parse_term()]
        while self.at('+') or self.at('-'):
            sign = self.advance()[1]
            term = self.parse_term()
            terms.append(term if sign == '+' else self.build('negate', term))
        return self.build('add', terms)

    def parse_term(self):
        factors = [self.parse_factor()]
        while self.at('*'):
            self.advance()
            factors.append(self.parse_factor())
        return self.build('multiply', factors)

    def parse_factor(self):
        base = self.parse_atom()
        if self.at('^'):
            self.advance()
            kind, text, position = self.advance()
            if kind != 'number' or not text.isdigit():
                self.fail("exponent must be a nonnegative integer", position)
            return self.build('power', base, int(text))
        return base

    def parse_atom(self):
        kind, text, position = self.peek()
        if self.at('-'):
            self.advance()
            return self.build('negate', self.parse_atom())
        if kind == 'number':
            self.advance()
            return self.build('number', text)
        if self.at('('):
            self.advance()
            value = self.parse_expr()
            self.expect(')')
            return value
        if kind == 'name':
            return self.parse_name()
        if kind == 'end':
            self.fail("unexpected end of input")
        self.fail("unexpected {!r}".format(text))

    def parse_name(self):
        _, text, position = self.advance()
        match = _VARIABLE.match(text)
        if match:
            index = int(match.group(1)) - 1
            if index < 0:
                self.fail("variables are numbered from x1", position)
            if self.dimension is not None and index >= self.dimension:
                raise DimensionError("variable {} out of range for dimension {} (column {})".format(
                    text, self.dimension, position + 1))
            return self.build('variable', index)
        if text in PRIMS:
            self.expect('(')
            arg = self.parse_expr()
            self.expect(')')
            return self.build('prim', text, arg)
        if text == 'int':
            return self.parse_integral(position)
        if text in self.bound:
            return self.build('param', text)
        self.fail("unknown identifier {!r}".format(text), position)

    def parse_integral(self, position):
        if not self.builder.allows_integrals:
            self.fail("integrals are not polynomials", position)
        self.expect('[')
        kind, name, name_position = self.advance()
        if kind != 'name' or name in _KEYWORDS or _VARIABLE.match(name):
            self.fail("invalid integration parameter {!r}".format(name), name_position)
        if name in self.bound:
            self.fail("parameter {!r} is already bound".format(name), name_position)
        self.expect(']')
        self.expect('(')
        self.bound.append(name)
        body = self.parse_expr()
        self.bound.pop()
        self.expect(')')
        return self.build('integral', name, body)

    def parse_list(self, separator=','):
        values = [self.parse_expr()]
        while self.at(separator):
            self.advance()
            values.append(self.parse_expr())
        return values

    def finish(self):
        kind, text, position = self.peek()
        if kind != 'end':
            self.fail("unexpected {!r} after the end of the expression".format(text), position)


def _dimension(context):
    return None if context is None else as_context(context).dimension


def parse_expr(text, dimension=None):
    """Parses a smooth expression.

    Parameters
    ----------
    text : str
        E.g. ``"sin(x1 + x2^2)"``.

    dimension : int, ExprContext or None
        The ambient dimension used for the range check of variables.

    Returns
    -------
    Expr :
        The parsed expression, not simplified.
    """
    parser = Parser(text, ExprBuilder(), _dimension(dimension))
    value = parser.parse_expr()
    parser.finish()
    return value


def parse_poly(text, dimension):
    """Parses an exact polynomial over the given dimension."""
    n = _dimension(dimension)
    parser = Parser(text, PolyBuilder(n), n)
    value = parser.parse_expr()
    parser.finish()
    return value


def parse_oneform(text, dimension, mode='smooth'):
    """Parses ``f1, ..., fn`` as a 1-form; `mode` is 'smooth' or 'poly'.

    The number of components must equal the dimension.
    """
    n = _dimension(dimension)
    builder = PolyBuilder(n) if mode == 'poly' else ExprBuilder()
    parser = Parser(text, builder, n)
    components = parser.parse_list()
    parser.finish()
    if len(components) != n:
        raise DimensionError("1-form has {} components, expected {}".format(len(components), n))
    if mode == 'poly':
        return PolyOneForm(components, n)
    return SmoothOneForm(tuple(components), n)


def parse_dual(text, dimension, mode='smooth'):
    """Parses ``(base; t1, t2, ...)`` as a dual element."""
    n = _dimension(dimension)
    builder = PolyBuilder(n) if mode == 'poly' else ExprBuilder()
    parser = Parser(text, builder, n)
    parser.expect('(')
    base = parser.parse_expr()
    parser.expect(';')
    tangent = parser.parse_list()
    parser.expect(')')
    parser.finish()
    if mode == 'poly':
        return PolyDual(base, tangent)
    return DualElement(base, tuple(tangent))


def parse_vector(text):
    """Parses comma-separated reals, e.g. ``"0.5, -1"``; ratios ``p/q`` are kept exact."""
    values = []
    for piece in text.split(','):
        piece = piece.strip()
        try:
            values.append(Fraction(piece) if '/' in piece else float(piece))
        except (ValueError, ZeroDivisionError):
            raise ParseError("invalid number {!r}".format(piece), text, max(text.find(piece), 0))
    return values
