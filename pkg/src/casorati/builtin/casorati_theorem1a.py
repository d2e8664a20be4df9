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
import typing

import numpy as np

import casorati
import casorati.fixtures
from casorati import matrixz


ACCEPTANCE_TRIALS = 10000
"""
Trial count of the full falsification run (``tox -e acceptance``). The default of 200 keeps unit runs fast.
"""


class Fixture(casorati.fixtures.Fixture):
    """
    Randomized falsification of the matrix reality statement: real angles, a real characteristic polynomial with
    roots in ``|Im z| < 1`` and every diagonal ``a`` that produces it. Any non-real ``a`` is a failure. A control
    with roots at ``+- 1.3 i`` must produce non-real diagonals and the scaled matrices ``eps * Z_eps`` must approach
    their limit as ``eps`` shrinks.

    .. invisible-code-block: python

        import asyncio
        from casorati.fixtures import FixtureManager
        from casorati.builtin import casorati_theorem1a

        loop = asyncio.new_event_loop()
        manager = FixtureManager(loop=loop)

    .. code-block:: python

        async def falsify():
            return await casorati_theorem1a.Fixture(manager).gather(theorem1a_trials=6)

    .. invisible-code-block: python

        artifacts = loop.run_until_complete(falsify())

        assert artifacts.result_code == 0
        assert artifacts.counterexamples == []

    +---------------------+---------------------------+------------------------------------------------------+
    | **Artifacts**                                                                                          |
    |                                                                                                        |
    +---------------------+---------------------------+------------------------------------------------------+
    | key                 | type                      | Notes                                                |
    +=====================+===========================+======================================================+
    | ``trials``          | int                       | Number of random targets.                            |
    +---------------------+---------------------------+------------------------------------------------------+
    | ``solutions``       | int                       | Diagonals found over all trials.                     |
    +---------------------+---------------------------+------------------------------------------------------+
    | ``counterexamples`` | List[dict]                | Trials with a non-real diagonal.                     |
    +---------------------+---------------------------+------------------------------------------------------+
    | ``control``         | List[List[complex]]       | Diagonals of the out-of-strip control.               |
    +---------------------+---------------------------+------------------------------------------------------+
    | ``trend``           | List[Tuple[float, float]] | ``(eps, ||eps Z_eps - Z_0||)``.                      |
    +---------------------+---------------------------+------------------------------------------------------+
    | ``failures``        | List[str]                 | Which properties failed.                             |
    +---------------------+---------------------------+------------------------------------------------------+
    """

    fixture_name = 'casorati_theorem1a'
    argument_prefix = 'theorem1a'

    @classmethod
    def on_visit_test_arguments(cls, arguments: casorati.Arguments) -> None:
        arguments.add_argument('--trials',
                               type=int,
                               enable_default_from_environ=True,
                               help='Number of random targets (default 200, {} for acceptance).'
                               .format(ACCEPTANCE_TRIALS))
        arguments.add_argument('--max-rank', type=int, help='Largest matrix size (default 4).')
        arguments.add_argument('--restarts', type=int, help='Random Newton starts per target (default 10).')
        arguments.add_argument('--seed', type=int, help='Seed for every trial.')

    async def on_gather(self, args: casorati.Namespace) -> casorati.Artifacts:
        trials = int(self.get_arg_covariant(args, 'trials', 200))
        max_rank = int(self.get_arg_covariant(args, 'max-rank', 4))
        restarts = int(self.get_arg_covariant(args, 'restarts', 10))
        seed = int(self.get_arg_covariant(args, 'seed', 0))
        if max_rank < 2:
            raise casorati.InputError('max rank must be at least 2')

        records = await self.gather_trials(
            lambda i: matrixz.falsification_trial(i, seed, 2 + i % (max_rank - 1), restarts), trials)
        control = matrixz.control_case()
        rng = np.random.default_rng([seed, trials])
        mu = list(np.arange(3) + rng.uniform(0, 0.5, 3))
        trend = matrixz.degeneration_trend(list(rng.normal(size=3)), mu)

        failures = []  # type: typing.List[str]
        counterexamples = [r for r in records if r['failures']]
        if counterexamples:
            failures.append('reality')
        if not control or all(np.max(np.abs(a.imag)) < 1e-7 for a in control):
            failures.append('control')
        if any(later >= earlier for (_, earlier), (_, later) in zip(trend, trend[1:])):
            failures.append('trend')
        self.logger.info('%d trials, failures: %s', trials, failures)

        artifacts = casorati.Artifacts()
        setattr(artifacts, 'trials', trials)
        setattr(artifacts, 'solutions', sum(r['solutions'] for r in records))
        setattr(artifacts, 'counterexamples', counterexamples)
        setattr(artifacts, 'control', [a.tolist() for a in control])
        setattr(artifacts, 'trend', trend)
        setattr(artifacts, 'failures', failures)
        artifacts.result_code = (0 if len(failures) == 0 else 1)
        return artifacts


def pytest_casorati_fixture_type() -> typing.Type['casorati.fixtures.Fixture']:
    return Fixture
