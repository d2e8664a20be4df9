#
# Copyright 2026 The Casorati Authors.
# This software is distributed under the terms of the MIT License.
#
"""
Enable pytest integration of doctests in source and/or in documentation.
"""

from sybil import Sybil
from sybil.parsers.rest import DocTestParser, PythonCodeBlockParser

# Documentation lives in both rst and py files.
s = Sybil(
    parsers=[
        DocTestParser(),
        PythonCodeBlockParser(),
    ],
    patterns=['*.rst', '*.py'],
    excludes=['test/material/*'],
)

pytest_collect_file = s.pytest()
