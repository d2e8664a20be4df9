#
# Copyright 2026 The Casorati Authors.
# This software is distributed under the terms of the MIT License.
#
#              .---------------------------------.
#              |  f_1(x-h)   f_1(x+h)  ...       |
#          det |  f_2(x-h)   f_2(x+h)  ...       |  = w(x) Q^x
#              |  ...                            |
#              '---------------------------------'
#  casorati
#
"""
Additional pytest hooks defined by the Casorati plugin.
"""
import typing

import casorati.fixtures  # noqa: F401


def pytest_casorati_fixture_type() -> typing.Type['casorati.fixtures.Fixture']:
    """
    Casorati entrypoint. Retrieves the concrete suite type defined by a given pytest plugin module.
    """
