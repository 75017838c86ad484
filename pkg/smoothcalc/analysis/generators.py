# -*- coding: utf-8 -*-
"""Seeded random polynomials, expressions, 1-forms and linear maps.

Every generator draws from the `numpy.random.Generator` it is given and
nothing else, so equal seeds give equal outputs.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..algebra.polyring import Monomial, Poly
from ..algebra.sym import PolyOneForm, d_sym
from ..core import sample_points
from ..smooth.expr import PRIMS, Const, Negate, Power, Prim, Product, Sum, Var, eval_points
from ..smooth.modality import SmoothOneForm, d_smooth

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GenConfig:
    """Bounds of the random generators.

    Parameters
    ----------
    min_dimension, max_dimension : int
        Range of the ambient dimension drawn per trial.  Defaults to 1 and 3.

    max_depth : int
        Maximum expression depth.  Defaults to 5.

    max_degree : int
        Maximum total degree of a polynomial term.  Defaults to 6.

    max_terms : int
        Maximum number of polynomial terms.  Defaults to 6.

    prim_weights : tuple of (str, float)
        Relative frequency of each primitive.  Defaults to uniform.

    coefficient_range : int
        Coefficients are drawn from [-coefficient_range, coefficient_range].
        Defaults to 3.

    max_denominator : int
        Largest denominator of polynomial coefficients.  Defaults to 4.

    max_value : float
        Generated expressions whose magnitude exceeds this on sampled points
        of [-1, 1]^n are redrawn.  Defaults to 50.
    """

    min_dimension: int = 1
    max_dimension: int = 3
    max_depth: int = 5
    max_degree: int = 6
    max_terms: int = 6
    prim_weights: tuple = tuple((kind, 1.0) for kind in PRIMS)
    coefficient_range: int = 3
    max_denominator: int = 4
    max_value: float = 50.0

    def __post_init__(self):
        if not 0 <= self.min_dimension <= self.max_dimension:
            raise ValueError("invalid dimension range [{}, {}]".format(self.min_dimension, self.max_dimension))
        for name in ('max_depth', 'max_degree', 'max_terms', 'coefficient_range', 'max_denominator'):
            if getattr(self, name) < 1:
                raise ValueError("{} must be positive".format(name))
        kinds = [kind for kind, _ in self.prim_weights]
        if not kinds or any(kind not in PRIMS for kind in kinds):
            raise ValueError("primitive weights must name primitives among {}".format(PRIMS))
        if any(weight < 0 for _, weight in self.prim_weights) or sum(w for _, w in self.prim_weights) <= 0:
            raise ValueError("primitive weights must be nonnegative and not all zero")
        if self.max_value < self.coefficient_range:
            raise ValueError("max_value must be at least coefficient_range")


def gen_dimension(cfg, rng):
    return int(rng.integers(cfg.min_dimension, cfg.max_dimension + 1))


def gen_rational(cfg, rng, nonzero=True):
    numerator = 0
    while True:
        numerator = int(rng.integers(-cfg.coefficient_range, cfg.coefficient_range + 1))
        if numerator or not nonzero:
            break
    return Fraction(numerator, int(rng.integers(1, cfg.max_denominator + 1)))


def gen_poly(cfg, rng, dimension):
    """A polynomial with at most `cfg.max_terms` terms of degree at most `cfg.max_degree`."""
    terms = []
    for _ in range(int(rng.integers(1, cfg.max_terms + 1))):
        degree = int(rng.integers(0, cfg.max_degree + 1)) if dimension else 0
        powers = [(int(rng.integers(0, dimension)), 1) for _ in range(degree)]
        terms.append((Monomial(powers), gen_rational(cfg, rng)))
    return Poly(dimension, terms)


def gen_poly_oneform(cfg, rng, dimension):
    return PolyOneForm([gen_poly(cfg, rng, dimension) for _ in range(dimension)], dimension)


def gen_closed_poly_oneform(cfg, rng, dimension):
    """An exact, hence closed, polynomial 1-form."""
    return d_sym(gen_poly(cfg, rng, dimension))


def gen_rational_vector(cfg, rng, dimension):
    return [gen_rational(cfg, rng, nonzero=False) for _ in range(dimension)]


def gen_rational_matrix(cfg, rng, rows, columns):
    return [[gen_rational(cfg, rng, nonzero=False) for _ in range(columns)] for _ in range(rows)]


def gen_constant(cfg, rng):
    return Const(round(float(rng.uniform(-cfg.coefficient_range, cfg.coefficient_range)), 2))


def _well_conditioned(e, cfg, rng, dimension):
    sample = np.vstack([np.zeros((1, dimension)), sample_points(rng, 8, dimension)])
    values = eval_points(e, sample)
    return bool(np.all(np.isfinite(values)) and np.max(np.abs(values)) <= cfg.max_value)


def gen_expr(cfg, rng, dimension, depth=None):
    """A random closed expression over `dimension` variables.

    Depth 0 gives a variable or a constant; deeper levels combine binary sums
    and products, squares and cubes, negations and the primitives.  Draws
    that exceed `cfg.max_value` somewhere on a sample of [-1, 1]^n are
    rejected and redrawn.
    """
    if depth is None:
        depth = cfg.max_depth
    while True:
        e = _gen_node(cfg, rng, dimension, depth)
        if _well_conditioned(e, cfg, rng, dimension):
            logger.debug("Generated expression %s", e)
            return e


def _gen_node(cfg, rng, dimension, depth):
    if depth <= 0 or rng.random() < 0.15:
        if dimension and rng.random() < 0.7:
            return Var(int(rng.integers(0, dimension)))
        return gen_constant(cfg, rng)
    choice = rng.choice(['sum', 'product', 'power', 'negate', 'prim'], p=[0.3, 0.25, 0.1, 0.05, 0.3])
    if choice == 'sum':
        return Sum((_gen_node(cfg, rng, dimension, depth - 1), _gen_node(cfg, rng, dimension, depth - 1)))
    if choice == 'product':
        return Product((_gen_node(cfg, rng, dimension, depth - 1), _gen_node(cfg, rng, dimension, depth - 1)))
    if choice == 'power':
        return Power(_gen_node(cfg, rng, dimension, depth - 1), int(rng.integers(2, 4)))
    if choice == 'negate':
        return Negate(_gen_node(cfg, rng, dimension, depth - 1))
    kinds = [kind for kind, _ in cfg.prim_weights]
    weights = np.array([weight for _, weight in cfg.prim_weights], dtype=float)
    kind = kinds[int(rng.choice(len(kinds), p=weights / weights.sum()))]
    return Prim(kind, _gen_node(cfg, rng, dimension, depth - 1))


def gen_oneform(cfg, rng, dimension, depth=None):
    return SmoothOneForm(tuple(gen_expr(cfg, rng, dimension, depth) for _ in range(dimension)), dimension)


def gen_closed_oneform(cfg, rng, dimension, depth=None):
    """The gradient of a random expression."""
    return d_smooth(gen_expr(cfg, rng, dimension, depth), dimension)


def gen_matrix(rng, rows, columns):
    """A real matrix with entries uniform in [-1, 1]."""
    return rng.uniform(-1.0, 1.0, size=(rows, columns))


def gen_vector(rng, dimension):
    return rng.uniform(-1.0, 1.0, size=dimension)
