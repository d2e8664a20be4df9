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

import casorati
import casorati.config
import casorati.fixtures
from casorati import inverse

RESIDUAL_TOL = 1e-7
STRIP_MARGIN = 1e-3


class Fixture(casorati.fixtures.Fixture):
    """
    Randomized reality harness for the inverse problem. Each trial draws positive bases, an imaginary half-step
    and a real target whose roots lie in the strip ``|Im z| <= |h|``, solves for every space with that
    Wronskian and records any non-real one. Control trials use :func:`casorati.inverse.counterexample_base`
    with roots outside the strip, where non-real solutions are expected.

    With ``--theorem1-degree 0`` (the default) the Wronskian degree cycles through 1..4 across trials.

    ``--theorem1-tolerances`` takes ``key = value`` lines, usually from a configuration file::

        [theorem1]
        tolerances =
            residual = 1e-7
            strip_margin = 1e-3

    ``residual`` bounds the Newton residual of every solution and ``strip_margin`` keeps the drawn roots that
    fraction inside the strip.

    .. invisible-code-block: python

        import asyncio
        from casorati.fixtures import FixtureManager
        from casorati.builtin import casorati_theorem1

        loop = asyncio.new_event_loop()
        manager = FixtureManager(loop=loop)

    .. code-block:: python

        async def harness():
            suite = casorati_theorem1.Fixture(manager)
            return await suite.gather(theorem1_trials=3, theorem1_degree=2, theorem1_controls=1)

    .. invisible-code-block: python

        artifacts = loop.run_until_complete(harness())

        assert artifacts.result_code == 0
        assert artifacts.report['reality_failures'] == []

    +--------------+---------------------------+-------------------------------------------------------------+
    | **Artifacts**                                                                                          |
    |                                                                                                        |
    +--------------+---------------------------+-------------------------------------------------------------+
    | key          | type                      | Notes                                                       |
    +==============+===========================+=============================================================+
    | ``report``   | dict                      | :func:`casorati.inverse.summarize_theorem1` of all trials.  |
    +--------------+---------------------------+-------------------------------------------------------------+
    | ``failures`` | List[str]                 | Which properties failed.                                    |
    +--------------+---------------------------+-------------------------------------------------------------+
    """

    fixture_name = 'casorati_theorem1'
    argument_prefix = 'theorem1'

    @classmethod
    def on_visit_test_arguments(cls, arguments: casorati.Arguments) -> None:
        arguments.add_argument('--trials',
                               type=int,
                               enable_default_from_environ=True,
                               help='Number of random trials (default 50).')
        arguments.add_argument('--members', type=int, help='Members per space, 2 or 3 (default 2).')
        arguments.add_argument('--degree', type=int, help='Wronskian degree 1..4, 0 to cycle (default 0).')
        arguments.add_argument('--restarts', type=int, help='Random Newton starts per trial (default 40).')
        arguments.add_argument('--controls', type=int, help='Number of control trials (default 5).')
        arguments.add_argument('--seed', type=int, help='Seed for every trial.')
        arguments.add_argument('--tolerances', help='residual and strip_margin as key = value lines.')

    @classmethod
    def _tolerances(cls, args: casorati.Namespace) -> typing.Tuple[float, float]:
        given = dict(casorati.config.ArgumentDefaults.as_dict(cls.get_arg_covariant(args, 'tolerances')))
        unknown = set(given) - {'residual', 'strip_margin'}
        if unknown:
            raise casorati.InputError('unknown tolerances {}'.format(sorted(unknown)))
        try:
            residual_tol = float(given.get('residual', RESIDUAL_TOL))
            strip_margin = float(given.get('strip_margin', STRIP_MARGIN))
        except ValueError as e:
            raise casorati.InputError('bad tolerance: {}'.format(e)) from e
        if residual_tol <= 0 or not 0 <= strip_margin < 1:
            raise casorati.InputError('need residual > 0 and 0 <= strip_margin < 1')
        return residual_tol, strip_margin

    async def on_gather(self, args: casorati.Namespace) -> casorati.Artifacts:
        trials = int(self.get_arg_covariant(args, 'trials', 50))
        members = int(self.get_arg_covariant(args, 'members', 2))
        degree = int(self.get_arg_covariant(args, 'degree', 0))
        restarts = int(self.get_arg_covariant(args, 'restarts', 40))
        controls = int(self.get_arg_covariant(args, 'controls', 5))
        seed = int(self.get_arg_covariant(args, 'seed', 0))
        residual_tol, strip_margin = self._tolerances(args)
        if trials < 1:
            raise casorati.InputError('at least one trial is needed')

        def trial(i: int) -> typing.Dict[str, typing.Any]:
            return inverse.theorem1_trial(i, seed, members, degree if degree > 0 else 1 + i % 4, restarts,
                                          strip_margin=strip_margin)

        records = await self.gather_trials(trial, trials)
        control_records = await self.gather_trials(lambda i: inverse.control_trial(i, seed, restarts), controls)
        report = inverse.summarize_theorem1(records, control_records)

        failures = []  # type: typing.List[str]
        if report['reality_failures']:
            failures.append('reality')
        if report['max_residual'] > residual_tol:
            failures.append('residual')
        if report['control_nonreal'] < report['control_trials']:
            failures.append('control')
        self.logger.info('%d trials, %d solutions, failures: %s', report['trials'], report['solutions'], failures)

        artifacts = casorati.Artifacts()
        setattr(artifacts, 'report', report)
        setattr(artifacts, 'failures', failures)
        artifacts.result_code = (0 if len(failures) == 0 else 1)
        return artifacts


def pytest_casorati_fixture_type() -> typing.Type['casorati.fixtures.Fixture']:
    return Fixture
