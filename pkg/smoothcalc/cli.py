# -*- coding: utf-8 -*-
"""Command-line front end.

    smoothcalc diff -n 2 "x1^2*x2^5"
    smoothcalc lineint -n 2 --mode poly "x1^2*x2^5, x1^3"
    smoothcalc check --suite calculus --mode smooth --seed 7 --trials 50 --format json

Exit status is 0 on success, 1 when a law fails or a 1-form is not closed,
2 on usage, parse and dimension errors and 3 when quadrature does not
converge.
"""

import argparse
import json
import logging
import sys
from fractions import Fraction

import numpy as np

from .algebra.polyring import Poly, format_poly, poly_eval, poly_partial
from .algebra.sym import (PolyOneForm, PolyTwoTensor, coderiving_sym, counit_sym, d_sym, degree_op_inverse_sym,
                          degree_op_sym, double_product_sym, epsilon_sym, format_oneform_sym,
                          line_integral_exact_sym, rota_baxter_sym, s_sym, zero_map_sym)
from .analysis.demo import format_demo, run_demo
from .analysis.laws import (INTEGRAL_SUITES, MODES, SUITES, TrialConfig, reports_frame, run_all, run_negative_control,
                            run_suite)
from .core import DimensionError, ExprError, ParseError, QuadratureError, UnknownSuiteError
from .parsing import Parser, ExprBuilder, parse_expr, parse_oneform, parse_poly, parse_vector
from .smooth.expr import Expr, eval_expr, max_var_index, print_expr
from .smooth.modality import (SmoothOneForm, coderiving_smooth, counit, d_smooth, double_product_smooth, epsilon,
                              eval_oneform, format_oneform, inverse_smooth, is_closed, op_LKJ_smooth,
                              rota_baxter_smooth, s_smooth, zero_map)
from .smooth.quadrature import QuadConfig

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_QUADRATURE = 3

OPERATORS = ('d', 'coderiving', 'L', 'K', 'J', 'K-inverse', 'J-inverse', 's', 'zero-map', 'counit')

# Operators whose argument is a 1-form rather than a function
_ONEFORM_OPERATORS = ('coderiving', 's')


def _expression_dimension(text):
    parser = Parser(text, ExprBuilder())
    value = parser.parse_expr()
    parser.finish()
    return max(max_var_index(value) + 1, 1)


def _oneform_dimension(text):
    parser = Parser(text, ExprBuilder())
    components = parser.parse_list()
    parser.finish()
    return len(components)


def _function(args, text, dimension=None):
    n = dimension or args.dim or _expression_dimension(text)
    if args.mode == 'poly':
        return parse_poly(text, n), n
    return parse_expr(text, n), n


def _oneform(args, text):
    n = args.dim or _oneform_dimension(text)
    return parse_oneform(text, n, mode=args.mode), n


def _quad(args):
    return QuadConfig(order=args.quad_order, max_depth=args.quad_depth, atol=args.quad_atol, rtol=args.quad_rtol)


def _number(value):
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else "{}/{}".format(value.numerator, value.denominator)
    return repr(float(value))


def _show(value):
    if isinstance(value, Poly):
        return format_poly(value)
    if isinstance(value, PolyOneForm):
        return format_oneform_sym(value)
    if isinstance(value, SmoothOneForm):
        return format_oneform(value)
    if isinstance(value, Expr):
        return print_expr(value)
    if isinstance(value, (list, tuple, np.ndarray)):
        return ", ".join(_number(v) for v in value)
    return _number(value)


def _at(value, point, quad):
    """Evaluates a function or a 1-form at `point`."""
    if isinstance(value, Poly):
        return poly_eval(value, point)
    if isinstance(value, PolyOneForm):
        return [poly_eval(c, point) for c in value]
    if isinstance(value, SmoothOneForm):
        return list(eval_oneform(value, [[float(x) for x in point]], quad)[0])
    if isinstance(value, Expr):
        return eval_expr(value, [float(x) for x in point], quad)
    return value


def _point(args, n):
    point = parse_vector(args.at)
    if len(point) != n:
        raise DimensionError("point has {} coordinates, expected {}".format(len(point), n))
    return point


def _emit(args, out, command, value, evaluate=True):
    if evaluate and args.at is not None:
        value = _at(value, _point(args, args.n_resolved), _quad(args))
    text = _show(value)
    if args.format == 'json':
        out.write(json.dumps({'command': command, 'result': text}) + "\n")
    else:
        out.write(text + "\n")
    return EXIT_OK


# Subcommands

def cmd_diff(args, out):
    f, n = _function(args, args.expression)
    args.n_resolved = n
    return _emit(args, out, 'diff', d_sym(f) if args.mode == 'poly' else d_smooth(f, n))


def cmd_grad(args, out):
    f, n = _function(args, args.expression)
    args.n_resolved = n
    if args.at is None:
        raise DimensionError("grad needs a point, given with --at")
    return _emit(args, out, 'grad', d_sym(f) if args.mode == 'poly' else d_smooth(f, n))


def cmd_lineint(args, out):
    omega, n = _oneform(args, args.oneform)
    args.n_resolved = n
    if args.mode == 'poly':
        if args.at is not None:
            value = line_integral_exact_sym(omega, _point(args, n))
            return _emit(args, out, 'lineint', value, evaluate=False)
        return _emit(args, out, 'lineint', s_sym(omega))
    return _emit(args, out, 'lineint', s_smooth(omega))


def _apply_poly(op, arg):
    if op == 'd':
        return d_sym(arg)
    if op == 'coderiving':
        return coderiving_sym(arg)
    if op in ('L', 'K', 'J'):
        return degree_op_sym(op, arg)
    if op in ('K-inverse', 'J-inverse'):
        return degree_op_inverse_sym(op[0], arg)
    if op == 's':
        return s_sym(arg)
    if op == 'zero-map':
        return zero_map_sym(arg)
    return counit_sym(arg)


def _apply_smooth(op, arg, n, quad):
    if op == 'd':
        return d_smooth(arg, n)
    if op == 'coderiving':
        return coderiving_smooth(arg)
    if op in ('L', 'K', 'J'):
        return op_LKJ_smooth(op, arg, n, quad)
    if op in ('K-inverse', 'J-inverse'):
        return inverse_smooth(op[0], arg, n)
    if op == 's':
        return s_smooth(arg)
    if op == 'zero-map':
        return zero_map(arg, n)
    return counit(arg, n, quad)


def cmd_apply(args, out):
    if args.operator in _ONEFORM_OPERATORS:
        arg, n = _oneform(args, args.argument)
    else:
        arg, n = _function(args, args.argument)
    args.n_resolved = n
    if args.mode == 'poly':
        value = _apply_poly(args.operator, arg)
    else:
        value = _apply_smooth(args.operator, arg, n, _quad(args))
    return _emit(args, out, 'apply', value)


def cmd_epsilon(args, out):
    f, n = _function(args, args.expression)
    value = epsilon_sym(f) if args.mode == 'poly' else epsilon(f, n, _quad(args))
    return _emit(args, out, 'epsilon', value, evaluate=False)


def _poly_asymmetry(omega):
    n = omega.dimension
    jacobian = PolyTwoTensor([[poly_partial(omega[i], j) for i in range(n)] for j in range(n)], n)
    gaps = [(a - b).max_abs_coefficient() for row, other in zip(jacobian.entries, jacobian.transpose().entries)
            for a, b in zip(row, other)]
    return float(max(gaps or [0]))


def _closed(args, omega):
    if args.mode == 'poly':
        asymmetry = _poly_asymmetry(omega)
        return asymmetry == 0, asymmetry
    verdict = is_closed(omega, points=args.points or 25, tol=args.tol or 1e-9, seed=args.seed, quad=_quad(args))
    return verdict.closed, verdict.asymmetry


def cmd_closed(args, out):
    omega, _ = _oneform(args, args.oneform)
    closed, asymmetry = _closed(args, omega)
    if args.format == 'json':
        out.write(json.dumps({'command': 'closed', 'closed': closed, 'asymmetry': asymmetry}) + "\n")
    else:
        out.write("closed\n" if closed else "not closed (asymmetry {!r})\n".format(asymmetry))
    return EXIT_OK if closed else EXIT_FAILED


def cmd_potential(args, out):
    omega, n = _oneform(args, args.oneform)
    args.n_resolved = n
    closed, asymmetry = _closed(args, omega)
    if not closed:
        logger.error("1-form is not closed (asymmetry %.3g); it has no potential", asymmetry)
        return EXIT_FAILED
    return _emit(args, out, 'potential', s_sym(omega) if args.mode == 'poly' else s_smooth(omega))


def cmd_rota_baxter(args, out):
    direction = parse_vector(args.direction)
    f, n = _function(args, args.expression, args.dim or len(direction))
    if len(direction) != n:
        raise DimensionError("direction has {} coordinates, expected {}".format(len(direction), n))
    args.n_resolved = n
    if args.other is None:
        value = rota_baxter_sym(f, direction) if args.mode == 'poly' else rota_baxter_smooth(f, direction)
    else:
        g, _ = _function(args, args.other, n)
        value = double_product_sym(f, g, direction) if args.mode == 'poly' else double_product_smooth(f, g, direction)
    return _emit(args, out, 'rota-baxter', value)


def cmd_check(args, out):
    cfg = TrialConfig(seed=args.seed, trials=args.trials, points=args.points or 10, tolerance=args.tol,
                      quad=_quad(args), jobs=args.jobs, timing=args.timing)
    if args.naive_integral:
        suites = INTEGRAL_SUITES if args.suite == 'all' else (args.suite,)
        reports = [run_negative_control(suite, cfg) for suite in suites]
    elif args.suite == 'all':
        reports = run_all(args.mode, cfg)
    else:
        modes = MODES if args.mode == 'both' else (args.mode,)
        reports = [run_suite(args.suite, mode, cfg) for mode in modes]
    if args.format == 'json':
        out.write(json.dumps([r.to_dict() for r in reports], indent=2) + "\n")
    else:
        out.write(reports_frame(reports).to_string() + "\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


def cmd_demo(args, out):
    cases = run_demo()
    if args.format == 'json':
        out.write(json.dumps([c._asdict() for c in cases], indent=2) + "\n")
    else:
        out.write(format_demo(cases) + "\n")
    return EXIT_OK if all(c.ok for c in cases) else EXIT_FAILED


# Argument parsing

def _common():
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument('-n', '--dim', type=int, default=None,
                        help="ambient dimension (inferred from the input when omitted)")
    parser.add_argument('--seed', type=int, default=0, help="random seed")
    parser.add_argument('--tol', type=float, default=None, help="comparison tolerance")
    parser.add_argument('--points', type=int, default=None, help="sample points per check")
    parser.add_argument('--quad-order', type=int, default=16, help="Gauss-Legendre nodes per panel")
    parser.add_argument('--quad-depth', type=int, default=12, help="maximum bisection depth")
    parser.add_argument('--quad-atol', type=float, default=1e-11, help="absolute quadrature tolerance")
    parser.add_argument('--quad-rtol', type=float, default=1e-10, help="relative quadrature tolerance")
    parser.add_argument('--format', choices=('text', 'json'), default='text', help="output format")
    parser.add_argument('--at', default=None, help="evaluate the result at this comma-separated point")
    parser.add_argument('-v', '--verbose', action='count', default=0, help="more logging")
    parser.add_argument('-q', '--quiet', action='store_true', help="only log errors")
    return parser


def build_parser():
    common = _common()
    modal = argparse.ArgumentParser(add_help=False)
    modal.add_argument('--mode', choices=MODES, default='smooth', help="polynomial or smooth functions")

    parser = argparse.ArgumentParser(prog='smoothcalc',
                                     description="Differential and integral calculus of smooth and polynomial "
                                                 "functions, with executable law suites.")
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    p = commands.add_parser('diff', parents=[common, modal], help="gradient 1-form of a function")
    p.add_argument('expression')
    p.set_defaults(run=cmd_diff)

    p = commands.add_parser('grad', parents=[common, modal], help="gradient of a function at a point")
    p.add_argument('expression')
    p.set_defaults(run=cmd_grad)

    p = commands.add_parser('lineint', parents=[common, modal], help="line integral of a 1-form from the origin")
    p.add_argument('oneform')
    p.set_defaults(run=cmd_lineint)

    p = commands.add_parser('apply', parents=[common, modal], help="apply one operator")
    p.add_argument('operator', choices=OPERATORS)
    p.add_argument('argument')
    p.set_defaults(run=cmd_apply)

    p = commands.add_parser('epsilon', parents=[common, modal], help="gradient at the origin")
    p.add_argument('expression')
    p.set_defaults(run=cmd_epsilon)

    p = commands.add_parser('closed', parents=[common, modal], help="decide whether a 1-form is closed")
    p.add_argument('oneform')
    p.set_defaults(run=cmd_closed)

    p = commands.add_parser('potential', parents=[common, modal], help="potential of a closed 1-form")
    p.add_argument('oneform')
    p.set_defaults(run=cmd_potential)

    p = commands.add_parser('rota-baxter', parents=[common, modal],
                            help="Rota-Baxter operator, or the double product of two functions")
    p.add_argument('expression')
    p.add_argument('other', nargs='?', default=None)
    p.add_argument('--direction', required=True, help="comma-separated direction vector")
    p.set_defaults(run=cmd_rota_baxter)

    p = commands.add_parser('check', parents=[common], help="run law suites")
    p.add_argument('--suite', choices=SUITES + ('all',), default='all')
    p.add_argument('--mode', choices=MODES + ('both',), default='both')
    p.add_argument('--trials', type=int, default=None, help="trials per suite")
    p.add_argument('--jobs', type=int, default=1, help="worker processes")
    p.add_argument('--timing', action='store_true', help="record elapsed time")
    p.add_argument('--naive-integral', action='store_true',
                   help="replace the polynomial integral by the per-variable rule (negative control); "
                        "only suites that apply the integral rule")
    p.set_defaults(run=cmd_check)

    p = commands.add_parser('demo', parents=[common], help="replay the worked examples")
    p.set_defaults(run=cmd_demo)
    return parser


def _configure_logging(args):
    level = logging.WARNING
    if args.quiet:
        level = logging.ERROR
    elif args.verbose == 1:
        level = logging.INFO
    elif args.verbose > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def main(argv=None, out=None):
    """Runs the command line and returns the exit status."""
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exit:
        return exit.code
    _configure_logging(args)
    args.n_resolved = args.dim
    try:
        return args.run(args, out)
    except (ParseError, DimensionError, ExprError, UnknownSuiteError, ValueError) as error:
        sys.stderr.write("error: {}\n".format(error))
        return EXIT_USAGE
    except QuadratureError as error:
        sys.stderr.write("error: {}\n".format(error))
        return EXIT_QUADRATURE


if __name__ == '__main__':
    sys.exit(main())
