# -*- coding: utf-8 -*-
"""Adaptive Gauss-Legendre integration over the unit interval.

Integrands are vectorized: they receive a 1-D array of k abscissae and
return an array of shape (k,) + S, so one call integrates a whole batch of
evaluation points, and nested integrals simply add a leading axis.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import roots_legendre

from ..core import QuadratureError

logger = logging.getLogger(__name__)

# numpy's leggauss is accurate up to this order; beyond it scipy computes the
# roots by a Newton scheme with asymptotic starting values
_LEGGAUSS_MAX_ORDER = 100

_ROUNDOFF_FACTOR = 64 * np.finfo(float).eps


@dataclass(frozen=True)
class QuadConfig:
    """Tunables of `integrate_unit`.

    Parameters
    ----------
    order : int
        Gauss-Legendre points per panel for the coarse estimate; the fine
        estimate uses twice as many.  Defaults to 16.

    max_depth : int
        Maximum number of bisections of a panel.  Defaults to 12.

    atol : float
        Absolute tolerance on the whole interval.  Defaults to 1e-11.

    rtol : float
        Relative tolerance.  Defaults to 1e-10.
    """

    order: int = 16
    max_depth: int = 12
    atol: float = 1e-11
    rtol: float = 1e-10

    def __post_init__(self):
        if self.order < 2:
            raise ValueError("quadrature order must be at least 2, got {}".format(self.order))
        if self.max_depth < 1:
            raise ValueError("quadrature depth must be positive, got {}".format(self.max_depth))
        if not (self.atol > 0 and self.rtol > 0):
            raise ValueError("quadrature tolerances must be positive")


@dataclass(frozen=True)
class QuadResult:
    """The outcome of `integrate_unit`.

    `value` is a float for scalar integrands and an array of shape S for
    batched ones; `error` is the largest per-element estimate.
    """

    value: object
    error: float
    panels: int


@lru_cache(maxsize=None)
def gauss_legendre_nodes(order):
    """Nodes and weights of the `order`-point rule on [-1, 1], read-only."""
    if order <= _LEGGAUSS_MAX_ORDER:
        nodes, weights = np.polynomial.legendre.leggauss(order)
    else:
        nodes, weights = roots_legendre(order)
    nodes = np.asarray(nodes, dtype=float)
    weights = np.asarray(weights, dtype=float)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def gauss_legendre_panel(f, a, b, order):
    """Integrates `f` over [a, b] with a single `order`-point rule.

    Returns
    -------
    tuple :
        The estimate and the sum of |w f|, the magnitude used for the
        roundoff floor.
    """
    nodes, weights = gauss_legendre_nodes(order)
    half = 0.5 * (b - a)
    values = np.asarray(f(0.5 * (a + b) + half * nodes), dtype=float)
    if values.shape[:1] != (order,):
        raise ValueError("integrand returned shape {} for {} nodes".format(values.shape, order))
    estimate = half * np.tensordot(weights, values, axes=1)
    magnitude = half * np.tensordot(weights, np.abs(values), axes=1)
    return estimate, magnitude


def integrate_unit(f, cfg=QuadConfig()):
    """Integrates `f` over [0, 1] by adaptive bisection.

    Each panel is integrated with `cfg.order` and `2 * cfg.order` points; the
    difference of the two is the error estimate.  A panel of width w is
    accepted when, for every element, the estimate is below
    max(atol * w, rtol * |value|) plus a roundoff floor, and bisected
    otherwise.

    Parameters
    ----------
    f : callable
        Maps a 1-D array of k abscissae to an array of shape (k,) + S.

    cfg : QuadConfig
        Orders, depth and tolerances.

    Returns
    -------
    QuadResult :
        The integral, of shape S.

    Raises
    ------
    QuadratureError :
        When some panel still misses the tolerance at `cfg.max_depth`; the
        exception carries the best estimate.
    """
    total = 0.0
    error = 0.0
    panels = 0
    unresolved = 0
    pending = [(0.0, 1.0, 0)]
    while pending:
        a, b, depth = pending.pop()
        coarse, _ = gauss_legendre_panel(f, a, b, cfg.order)
        fine, magnitude = gauss_legendre_panel(f, a, b, 2 * cfg.order)
        estimate = np.abs(fine - coarse)
        allowed = np.maximum(cfg.atol * (b - a), cfg.rtol * np.abs(fine)) + _ROUNDOFF_FACTOR * magnitude
        if np.all(estimate <= allowed) or depth >= cfg.max_depth:
            if not np.all(estimate <= allowed):
                unresolved += 1
            total = total + fine
            error += float(np.max(estimate)) if np.size(estimate) else 0.0
            panels += 1
        else:
            mid = 0.5 * (a + b)
            pending.append((mid, b, depth + 1))
            pending.append((a, mid, depth + 1))

    value = float(total) if np.ndim(total) == 0 else total
    result = QuadResult(value=value, error=error, panels=panels)
    if unresolved:
        logger.warning("Quadrature did not converge: %d of %d panels at depth %d, error estimate %.3g",
                       unresolved, panels, cfg.max_depth, error)
        raise QuadratureError("quadrature did not converge within depth {} (error estimate {:.3g})"
                              .format(cfg.max_depth, error), result)
    logger.debug("Quadrature used %d panels, error estimate %.3g", panels, error)
    return result
