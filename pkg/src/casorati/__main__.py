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

import sys

import casorati.cli

sys.exit(casorati.cli.main())
