# -*- coding: utf-8 -*-

from .generators import GenConfig
from .laws import SUITES, INTEGRAL_SUITES, MODES, TrialConfig, LawReport, pointwise_equal, run_suite, run_all, \
    run_negative_control, reports_frame
from .demo import DemoCase, run_demo, format_demo
