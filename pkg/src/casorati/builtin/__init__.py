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
Built-in :class:`casorati.fixtures.Fixture` verification suites, one per area of the library. See the
individual suite documentation for the artifacts each produces.
"""
