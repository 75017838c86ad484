#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
test_laws
----------------------------------

Tests for the randomized law suites in `smoothcalc.analysis.laws`.
"""


import sys
import unittest

import numpy as np

from smoothcalc.algebra import s_sym
from smoothcalc.analysis.generators import GenConfig
from smoothcalc.analysis.laws import (SUITES, LawReport, Trial, TrialConfig, pointwise_equal, reports_frame, run_all,
                                      run_negative_control, run_suite)
from smoothcalc.core import UnknownSuiteError
from smoothcalc.parsing import parse_expr

SMALL = GenConfig(max_dimension=2, max_depth=3)


class TestPolySuites(unittest.TestCase):

    def test_every_suite_holds(self):
        cfg = TrialConfig(seed=3, trials=20)
        for suite in SUITES:
            report = run_suite(suite, 'poly', cfg)
            self.assertEqual(report.failures, 0, suite)
            self.assertEqual(report.inconclusive, 0, suite)
            self.assertTrue(report.passed, suite)
            self.assertEqual(report.worst_error, 0.0, suite)

    def test_default_trial_count(self):
        self.assertEqual(run_suite('d-axioms', 'poly').trials, 200)

    def test_negative_control_fails(self):
        report = run_negative_control(trial_cfg=TrialConfig(seed=1, trials=50))
        self.assertGreater(report.failures, 0)
        self.assertFalse(report.passed)
        self.assertGreater(report.worst_error, 0.0)

    def test_naive_rule_is_poly_only(self):
        with self.assertRaises(ValueError):
            run_suite('s-axioms', 'smooth', TrialConfig(trials=1), integral='naive')

    def test_negative_control_needs_an_integral_suite(self):
        with self.assertRaises(ValueError):
            run_negative_control('chain', TrialConfig(trials=1))
        with self.assertRaises(UnknownSuiteError):
            run_negative_control('no-such-law', TrialConfig(trials=1))


class TestSmoothSuites(unittest.TestCase):

    def test_every_suite_holds(self):
        cfg = TrialConfig(seed=7, trials=3, points=4)
        for suite in SUITES:
            report = run_suite(suite, 'smooth', cfg, SMALL)
            self.assertEqual(report.failures, 0, suite)
            self.assertEqual(report.trials, 3)

    def test_calculus(self):
        report = run_suite('calculus', 'smooth', TrialConfig(seed=7, trials=10))
        self.assertEqual(report.failures, 0)

    def test_pointwise_equal(self):
        points = np.random.default_rng(0).uniform(-1, 1, size=(10, 1))
        same = pointwise_equal(parse_expr("sin(x1)^2 + cos(x1)^2"), parse_expr("1"), points)
        self.assertTrue(same.equal)
        self.assertFalse(same.inconclusive)
        different = pointwise_equal(parse_expr("x1 + 1"), parse_expr("x1"), points)
        self.assertFalse(different.equal)
        self.assertAlmostEqual(different.max_abs, 1.0)

    def test_tolerance_is_absolute(self):
        points = np.random.default_rng(0).uniform(-1, 1, size=(10, 1))
        large = pointwise_equal(parse_expr("500 + x1"), parse_expr("500.0000002 + x1"), points, tol=1e-9)
        self.assertFalse(large.equal)
        self.assertAlmostEqual(large.max_abs, 2e-7, delta=1e-12)
        self.assertLess(large.max_rel, 1e-9)

        trial = Trial(0, np.random.default_rng(0), SMALL, TrialConfig(), 1e-9, s_sym)
        trial.close('offset', parse_expr("500 + x1"), parse_expr("500.0000002 + x1"), points)
        self.assertEqual(trial.failed, ['offset'])
        self.assertAlmostEqual(trial.error, 2e-7, delta=1e-12)
        trial.close('small offset', parse_expr("x1"), parse_expr("x1 + 1e-10"), points)
        self.assertEqual(trial.failed, ['offset'])


class TestReports(unittest.TestCase):

    def test_deterministic(self):
        cfg = TrialConfig(seed=42, trials=4, points=3)
        first = run_suite('chain', 'smooth', cfg, SMALL)
        second = run_suite('chain', 'smooth', cfg, SMALL)
        self.assertEqual(first, second)
        self.assertEqual(first.elapsed_ms, 0)

    def test_parallel_matches_serial(self):
        serial = run_suite('rota-baxter', 'poly', TrialConfig(seed=9, trials=8))
        parallel = run_suite('rota-baxter', 'poly', TrialConfig(seed=9, trials=8, jobs=2))
        self.assertEqual(serial, parallel)

    def test_dict_order(self):
        report = LawReport('chain', 'poly', 1, 10, 0, 0, 0.0)
        self.assertEqual(list(report.to_dict()), ['law', 'mode', 'seed', 'trials', 'failures', 'inconclusive',
                                                  'worst_error', 'elapsed_ms'])

    def test_inconclusive_limit(self):
        self.assertTrue(LawReport('chain', 'smooth', 0, 100, 0, 5, 0.0).passed)
        self.assertFalse(LawReport('chain', 'smooth', 0, 100, 0, 6, 0.0).passed)
        self.assertFalse(LawReport('chain', 'smooth', 0, 100, 1, 0, 0.0).passed)

    def test_frame(self):
        reports = run_all('poly', TrialConfig(trials=2))
        df = reports_frame(reports)
        self.assertEqual(len(df), len(SUITES))
        self.assertTrue(df['passed'].all())
        self.assertEqual(df.loc[('calculus', 'poly'), 'trials'], 2)

    def test_unknown_suite(self):
        with self.assertRaises(UnknownSuiteError):
            run_suite('no-such-law', 'poly')
        with self.assertRaises(UnknownSuiteError):
            run_all('symbolic')

    def test_config_validation(self):
        for kwargs in ({'seed': -1}, {'seed': 2 ** 64}, {'trials': 0}, {'points': 0}, {'tolerance': 0.0},
                       {'jobs': 0}):
            with self.assertRaises(ValueError, msg=str(kwargs)):
                TrialConfig(**kwargs)


if __name__ == '__main__':
    sys.exit(unittest.main())
