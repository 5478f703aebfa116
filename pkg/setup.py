#!/usr/bin/env python
"""
Setup script for motif-elites.

All package metadata is defined in pyproject.toml.
"""

from setuptools import setup, find_packages

# Pure Python setup - all metadata comes from pyproject.toml
setup(
    # Package discovery
    packages=find_packages(exclude=['tests*', 'examples*']),
    package_data={
        'motif_elites': ['py.typed'],
    },
)
