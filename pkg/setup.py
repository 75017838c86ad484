#!/usr/bin/env python
# -*- coding: utf-8 -*-

from setuptools import setup, find_packages

with open('README.rst') as readme_file:
    readme = readme_file.read()

with open('HISTORY.rst') as history_file:
    history = history_file.read()

requirements = [
    'numpy',
    'scipy',
    'pandas',
]

test_requirements = [
    'hypothesis',
]

setup(
    name='smoothcalc',
    version='0.1.0',
    description="Differential and integral calculus of smooth and polynomial functions, with executable law suites",
    long_description=readme + '\n\n' + history,
    author="Oren Lederman",
    author_email='orenled@mit.edu',
    url='https://github.com/orenlederman/smoothcalc',
    packages=find_packages(exclude=['tests', 'docs']),
    package_dir={'smoothcalc':
                 'smoothcalc'},
    include_package_data=True,
    install_requires=requirements,
    entry_points={
        'console_scripts': [
            'smoothcalc=smoothcalc.cli:main',
        ],
    },
    license="MIT license",
    zip_safe=False,
    keywords='smoothcalc',
    classifiers=[
        'Development Status :: 2 - Pre-Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Natural Language :: English',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.7',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    python_requires='>=3.7',
    test_suite='tests',
    tests_require=test_requirements
)
