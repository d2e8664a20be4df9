#
# Copyright 2026 The Casorati Authors.
# This software is distributed under the terms of the MIT License.
#
"""
Contains data files used in tests. Use conftest.py for fixtures.
"""
import pathlib
import typing

import casorati
import casorati.fixtures


class DummyFixture(casorati.fixtures.Fixture):
    """
    Reports whatever ``dummy_value`` it was given and succeeds unless ``dummy_fail`` is set.
    """

    argument_prefix = 'dummy'

    @classmethod
    def on_visit_test_arguments(cls, arguments: casorati.Arguments) -> None:
        arguments.add_argument('--value', type=int, help='Copied into the artifacts.')
        arguments.add_argument('--fail', action='store_true', help='Report a failure.')

    async def on_gather(self, args: casorati.Namespace) -> casorati.Artifacts:
        artifacts = casorati.Artifacts()
        setattr(artifacts, 'value', self.get_arg_covariant(args, 'value', 0))
        setattr(artifacts, 'trial_squares', await self.gather_trials(lambda i: i * i, 5))
        artifacts.result_code = (1 if self.get_arg_covariant(args, 'fail', False) else 0)
        return artifacts


class Paths:
    """
    Locations of the files under ``test/material``.
    """

    def __init__(self, test_module_file: str):
        self._root = pathlib.Path(__file__).parent

    @property
    def root(self) -> pathlib.Path:
        return self._root

    def __call__(self, name: str) -> pathlib.Path:
        return self._root / pathlib.Path(name)

    def names(self, suffix: str = '.json') -> typing.List[str]:
        return sorted(p.name for p in self._root.glob('*{}'.format(suffix)))
