# -*- coding: utf-8 -*-

__author__ = 'Oren Lederman'
__email__ = 'orenled@mit.edu'
__version__ = '0.1.0'

__all__ = ["core", "algebra", "smooth", "parsing", "analysis", "cli"]
