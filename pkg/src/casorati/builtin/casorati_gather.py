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
import asyncio
import typing

import casorati
import casorati.fixtures


class Fixture(casorati.fixtures.Fixture):
    """
    Runs other suites concurrently and returns their :meth:`casorati.Artifacts.combine` ed artifacts. With no
    ``--gather-coroutine`` every other built-in suite is run, which is what ``dwr verify --suite all`` does.

    Coroutines can be passed directly from a test:

    .. invisible-code-block: python

        from casorati.fixtures import BuiltinFixtureManager
        from casorati.builtin import casorati_convergence, casorati_lemma_wron, casorati_gather
        import asyncio

        loop = asyncio.new_event_loop()
        manager = BuiltinFixtureManager(loop=loop)

    .. code-block:: python

        async def both():
            return await casorati_gather.Fixture(manager).gather(
                gather_coroutine=[
                    casorati_lemma_wron.Fixture(manager).gather(lemma_wron_trials=4),
                    casorati_convergence.Fixture(manager).gather()
                ]
            )

    .. invisible-code-block: python

        result = loop.run_until_complete(both())

        assert result.result_code == 0
        assert 'order' in result
        assert 'max_trace_error' in result

    or by canonical name::

        dwr verify --suite gather --gather-coroutine casorati_lemma_wron --gather-coroutine casorati_convergence

    +---------------------+---------------------------+------------------------------------------------------+
    | **Artifacts**                                                                                          |
    |                                                                                                        |
    +---------------------+---------------------------+------------------------------------------------------+
    | key                 | type                      | Notes                                                |
    +=====================+===========================+======================================================+
    | ``suites``          | Dict[str, dict]           | ``result_code`` and ``failures`` of each named suite.|
    +---------------------+---------------------------+------------------------------------------------------+

    Every other key is whatever the gathered suites set; the right-most suite wins on collisions.
    """

    fixture_name = 'casorati_gather'
    argument_prefix = 'gather'

    @classmethod
    def on_visit_test_arguments(cls, arguments: casorati.Arguments) -> None:
        arguments.add_argument('--coroutine', action='append',
                               help='Canonical name of a suite to run (repeatable, default: every other suite).')

    def _default_names(self) -> typing.List[str]:
        names = []  # type: typing.List[str]
        for module_name in casorati.fixtures.BUILTIN_MODULES:
            name = module_name.rsplit('.', 1)[-1]
            if name != self.get_canonical_name():
                names.append(name)
        return names

    async def on_gather(self, args: casorati.Namespace) -> casorati.Artifacts:
        coroutines = []  # type: typing.List[typing.Coroutine]
        names = []  # type: typing.List[typing.Optional[str]]
        requested = self.get_arg_covariant(args, 'coroutine')
        if requested is None:
            requested = self._default_names()

        for arg in requested:
            if asyncio.iscoroutine(arg):
                coroutines.append(arg)
                names.append(None)
            else:
                try:
                    coroutines.append(self.manager.create_fixture(arg, args).gather())
                except KeyError:
                    raise casorati.InputError('unknown suite "{}"'.format(arg))
                names.append(arg)

        if not coroutines:
            raise casorati.InputError('nothing to gather')
        results = await asyncio.gather(*coroutines)
        combined = casorati.Artifacts.combine(*results)
        suites = {}  # type: typing.Dict[str, typing.Dict[str, typing.Any]]
        for name, result in zip(names, results):
            if name is not None:
                suites[name] = {'result_code': result.result_code, 'failures': getattr(result, 'failures', [])}
                if result.result_code != 0:
                    self.logger.warning('%s failed: %s', name, suites[name]['failures'])
        setattr(combined, 'suites', suites)
        return combined


def pytest_casorati_fixture_type() -> typing.Type['casorati.fixtures.Fixture']:
    return Fixture
