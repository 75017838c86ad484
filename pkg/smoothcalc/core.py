# -*- coding: utf-8 -*-
"""Shared exceptions and small helpers used across smoothcalc."""

import logging

import numpy as np

logger = logging.getLogger(__name__)


class SmoothCalcError(Exception):
    """Base class of every error raised by smoothcalc."""


class DimensionError(SmoothCalcError, ValueError):
    """Raised on dimension, arity, length or shape mismatches."""


class ParseError(SmoothCalcError, ValueError):
    """Raised when a text does not conform to the expression grammar.

    Parameters
    ----------
    message : str
        What went wrong.

    text : str
        The text being parsed, used to compute line and column.

    position : int
        Zero-based offset of the offending character.
    """

    def __init__(self, message, text='', position=0):
        self.position = position
        self.line = text.count('\n', 0, position) + 1
        self.column = position - (text.rfind('\n', 0, position) + 1) + 1
        super(ParseError, self).__init__(
            "{} (line {}, column {})".format(message, self.line, self.column))


class ExprError(SmoothCalcError):
    """Raised on unbound parameters, parameter collisions and open expressions."""


class QuadratureError(SmoothCalcError, ArithmeticError):
    """Raised when adaptive quadrature exhausts its depth budget.

    The best available estimate is kept in `result`.
    """

    def __init__(self, message, result=None):
        self.result = result
        super(QuadratureError, self).__init__(message)


class UnknownSuiteError(SmoothCalcError, KeyError):
    """Raised for an unknown law suite id or mode."""

    def __str__(self):
        return str(self.args[0]) if self.args else ''


def check_length(values, expected, what='vector'):
    """Raises a DimensionError unless `values` has `expected` entries."""
    if len(values) != expected:
        raise DimensionError("{} has length {}, expected {}".format(what, len(values), expected))


def check_index(i, dimension):
    """Raises a DimensionError unless 0 <= i < dimension."""
    if not 0 <= i < dimension:
        raise DimensionError("variable index {} out of range for dimension {}".format(i, dimension))


def sample_points(rng, count, dimension, low=-1.0, high=1.0):
    """Draws `count` points uniformly from the box [low, high]^dimension.

    Parameters
    ----------
    rng : numpy.random.Generator
        The random source.

    count : int
        Number of points.

    dimension : int
        Ambient dimension.

    Returns
    -------
    numpy.ndarray :
        Array of shape (count, dimension).
    """
    return rng.uniform(low, high, size=(count, dimension))


def mixed_deviation(a, b):
    """Elementwise |a - b| / max(1, |b|), reported next to absolute deviations."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return np.abs(a - b) / np.maximum(1.0, np.abs(b))
