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
Discrete Wronskians approach the differential Wronskian as the step shrinks.
"""
import math
import typing

import casorati
import casorati.fixtures
from casorati.poly import CPoly
from casorati.quasiexp import LogBase, QESpace, QuasiExp, limit_errors

NOISE_FLOOR = 1e-9
MIN_ORDER = 1 - math.log10(3)


def default_space() -> QESpace:
    return QESpace([QuasiExp(CPoly([1, 1]), LogBase(0)), QuasiExp(CPoly([-2, 0, 1]), LogBase(0.5))])


def observed_order(errors: typing.Sequence[typing.Tuple[complex, float]]) -> float:
    """
    Slope of ``log10(err)`` against ``log10|h|`` over the leading points that are still above the noise floor.
    """
    usable = [(abs(h), e) for h, e in errors if e > NOISE_FLOOR]
    if len(usable) < 2:
        return math.inf
    (h0, e0), (h1, e1) = usable[0], usable[1]
    return (math.log10(e0) - math.log10(e1)) / (math.log10(h0) - math.log10(h1))


class Fixture(casorati.fixtures.Fixture):
    """
    Root distance between the monic discrete and differential Wronskians for ``h = i 10^-k``. Errors must shrink
    (or sit below ``1e-9``) and the leading slope must be at least ``1 - log10(3)``.

    .. invisible-code-block: python

        import asyncio
        from casorati.fixtures import FixtureManager
        from casorati.builtin import casorati_convergence

        loop = asyncio.new_event_loop()
        manager = FixtureManager(loop=loop)

    .. code-block:: python

        async def converge():
            return await casorati_convergence.Fixture(manager).gather()

    .. invisible-code-block: python

        artifacts = loop.run_until_complete(converge())

        assert artifacts.result_code == 0
        assert artifacts.order > 0.5

    +---------------------+---------------------------+------------------------------------------------------+
    | **Artifacts**                                                                                          |
    |                                                                                                        |
    +---------------------+---------------------------+------------------------------------------------------+
    | key                 | type                      | Notes                                                |
    +=====================+===========================+======================================================+
    | ``errors``          | List[Tuple[complex,float]]| ``(h, root distance)`` by decreasing ``|h|``.        |
    +---------------------+---------------------------+------------------------------------------------------+
    | ``order``           | float                     | Observed order from the leading points.              |
    +---------------------+---------------------------+------------------------------------------------------+
    | ``failures``        | List[str]                 | Which properties failed.                             |
    +---------------------+---------------------------+------------------------------------------------------+
    """

    fixture_name = 'casorati_convergence'
    argument_prefix = 'convergence'

    @classmethod
    def on_visit_test_arguments(cls, arguments: casorati.Arguments) -> None:
        arguments.add_argument('--exponents', type=int, nargs='+',
                               help='Use h = i * 10**-k for each k given (default 2 3 4 5).')

    async def on_gather(self, args: casorati.Namespace) -> casorati.Artifacts:
        exponents = self.get_arg_covariant(args, 'exponents', [2, 3, 4, 5])
        if isinstance(exponents, str):
            exponents = [int(k) for k in exponents.split()]
        exponents = sorted(int(k) for k in exponents)
        space = default_space()

        errors = (await self.gather_trials(lambda _: limit_errors(space, exponents), 1))[0]
        order = observed_order(errors)

        failures = []  # type: typing.List[str]
        for (h0, e0), (h1, e1) in zip(errors, errors[1:]):
            if not (e1 < e0 or e1 < NOISE_FLOOR):
                self.logger.warning('error grew from %g (|h|=%g) to %g (|h|=%g)', e0, abs(h0), e1, abs(h1))
                failures.append('monotone')
                break
        if order < MIN_ORDER:
            failures.append('order')
        self.logger.info('order %.3f, failures: %s', order, failures)

        artifacts = casorati.Artifacts()
        setattr(artifacts, 'errors', errors)
        setattr(artifacts, 'order', order)
        setattr(artifacts, 'failures', failures)
        artifacts.result_code = (0 if len(failures) == 0 else 1)
        return artifacts


def pytest_casorati_fixture_type() -> typing.Type['casorati.fixtures.Fixture']:
    return Fixture
