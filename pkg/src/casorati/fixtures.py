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
Every verification suite in casorati is a :class:`casorati.fixtures.Fixture`. A suite declares its arguments
once and can then run as a pytest fixture, from ``dwr verify`` or awaited directly.
"""
import abc
import asyncio
import importlib
import logging
import typing

import casorati

T = typing.TypeVar('T')


class Fixture(metaclass=abc.ABCMeta):
    """
    Common, abstract class for verification suites. Suites use a visitor pattern for arguments that are common
    for both pytest extra arguments and argparse commandline arguments, and provide a :func:`gather` coroutine
    that takes a :class:`casorati.Namespace` of arguments and returns the :class:`casorati.Artifacts` the suite
    produced. The contents of these artifacts are documented by each concrete suite.

    .. invisible-code-block: python

        import casorati
        import casorati.fixtures
        import asyncio

        _doc_loop = asyncio.new_event_loop()

    .. code-block:: python

        class MySuite(casorati.fixtures.Fixture):
            @classmethod
            def on_visit_test_arguments(cls, arguments: casorati.Arguments) -> None:
                arguments.add_argument('--trials', default=3)

            async def on_gather(self, args: casorati.Namespace) -> casorati.Artifacts:
                artifacts = casorati.Artifacts(-1)
                squares = await self.gather_trials(lambda i: i * i, 3)
                setattr(artifacts, 'squares', squares)
                artifacts.result_code = 0
                return artifacts

    .. invisible-code-block: python

        suite = MySuite(casorati.fixtures.FixtureManager(_doc_loop), casorati.Namespace())

        assert _doc_loop.run_until_complete(suite.gather()).squares == [0, 1, 4]

    :param FixtureManager manager: The fixture manager that is the scope for this fixture. There must be
        a 1:1 relationship between a fixture instance and a fixture manager instance.
    :param casorati.Namespace args: A namespace containing the arguments for this fixture.
    :param kwargs: An initial value for :data:`gather_timeout_seconds` as ``gather_timeout_seconds (float)``.
    """

    @classmethod
    def get_canonical_name(cls) -> str:
        """
        The key suites are registered, created and reported under: ``fixture_name`` when the class defines
        one, otherwise the dotted module and class name.

        .. invisible-code-block: python
            import casorati
            import casorati.fixtures

        .. code-block:: python

            class MySuite(casorati.fixtures.Fixture):

                fixture_name = 'my_suite'

            assert 'my_suite' == MySuite.get_canonical_name()

        """
        explicit = getattr(cls, 'fixture_name', None)
        return str(explicit) if explicit is not None else '{}.{}'.format(cls.__module__, cls.__qualname__)

    @classmethod
    def get_argument_prefix(cls) -> str:
        """
        Prefix of the suite's long options and name of its configuration section: ``argument_prefix`` when
        the class defines one, otherwise the canonical name with dashes for underscores.

        .. invisible-code-block: python
            import casorati
            import casorati.fixtures

        .. code-block:: python

            class MySuite(casorati.fixtures.Fixture):

                argument_prefix = 'ms'

        >>> MySuite.get_argument_prefix()  # noqa : F821
        'ms'

        .. code-block:: python

            class MyOtherSuite(casorati.fixtures.Fixture):
                fixture_name = 'my_other_suite'

        >>> MyOtherSuite.get_argument_prefix()  # noqa : F821
        'my-other-suite'

        """
        explicit = getattr(cls, 'argument_prefix', None)
        return str(explicit) if explicit is not None else cls.get_canonical_name().replace('_', '-')

    @classmethod
    def get_arg_covariant(cls,
                          args: casorati.Namespace,
                          base_name: str,
                          default_value: typing.Optional[typing.Any] = None) -> typing.Any:
        """
        Value of this suite's ``base_name`` option in ``args``, e.g. ``theorem1_trials`` for ``trials`` on the
        ``theorem1`` suite, or ``default_value`` when that is unset.
        """
        parts = [cls.get_argument_prefix(), base_name]
        value = getattr(args, '_'.join(p for p in parts if p).replace('-', '_'))
        return default_value if value is None else value

    @classmethod
    def get_arg_covariant_or_fail(cls, args: casorati.Namespace, base_name: str) -> typing.Any:
        """
        Calls :meth:`get_arg_covariant` but raises :class:`casorati.InputError` if the result is `None`.

        :raises casorati.InputError: if no value could be found for the argument.
        """
        value = cls.get_arg_covariant(args, base_name)
        if value is None:
            raise casorati.InputError('{} argument not provided (--{}-{})'
                                      .format(base_name, cls.get_argument_prefix(), base_name.replace('_', '-')))
        return value

    def __init__(self,
                 manager: 'FixtureManager',
                 args: typing.Optional[casorati.Namespace] = None,
                 **kwargs: typing.Any):
        if 'loop' in kwargs:
            raise ValueError('suites run on the loop of their FixtureManager; do not pass one in')
        self._manager = manager
        self._args = casorati.Namespace() if args is None else args
        self._name = self.get_canonical_name()
        self._logger = logging.getLogger(self._name)
        self._gather_timeout_seconds = kwargs.get('gather_timeout_seconds')  # type: typing.Optional[float]

    def gather_until_complete(self, *args: typing.Any, **kwargs: typing.Any) -> casorati.Artifacts:
        """
        Blocking form of :meth:`gather` for code that is not already running on the loop. This:

        .. invisible-code-block: python

            import casorati
            import casorati.fixtures
            import asyncio

            _doc_loop = asyncio.new_event_loop()

            class MySuite(casorati.fixtures.Fixture):

                @classmethod
                def on_visit_test_arguments(cls, arguments: casorati.Arguments) -> None:
                    pass

                async def on_gather(self, args: casorati.Namespace) -> casorati.Artifacts:
                    return casorati.Artifacts(0)

            foo = MySuite(casorati.fixtures.FixtureManager(_doc_loop), casorati.Namespace())

        .. code-block:: python

            foo.gather_until_complete()

        is equivalent to this:

        .. code-block:: python

            foo.loop.run_until_complete(foo.gather())

        """
        return self.loop.run_until_complete(self.gather(*args, **kwargs))

    async def gather(self, *args: typing.Any, **kwargs: typing.Any) -> casorati.Artifacts:
        """
        Run the suite once. ``kwargs`` override the constructor's arguments for this run only.

        :return: Artifacts whose :attr:`casorati.Artifacts.result_code` is 0 iff every checked property held.
        :raises asyncio.TimeoutError: If :data:`gather_timeout_seconds` is set and :meth:`on_gather` takes longer
            than this to complete.
        """
        run_args = self._args.merge(**kwargs)
        timeout = self._gather_timeout_seconds
        if timeout is None:
            return await self.on_gather(run_args)
        try:
            return await asyncio.wait_for(self.on_gather(run_args), timeout=timeout)
        except asyncio.TimeoutError:
            raise asyncio.TimeoutError('{} gather was cancelled after waiting for {} seconds'
                                       .format(self._name, timeout))

    async def gather_trials(self, trial: typing.Callable[[int], T], count: int) -> typing.List[T]:
        """
        Runs ``trial(0) .. trial(count - 1)`` on the loop's default executor. Results are ordered by trial index
        whatever order the trials complete in.
        """
        if count < 0:
            raise casorati.InputError('negative trial count {}'.format(count))
        futures = [self.loop.run_in_executor(None, trial, i) for i in range(count)]
        self._logger.debug('%d trials submitted', count)
        return list(await asyncio.gather(*futures))

    # +-----------------------------------------------------------------------+
    # | PROPERTIES
    # +-----------------------------------------------------------------------+
    @property
    def name(self) -> str:
        """
        Same as :meth:`get_canonical_name`.
        """
        return self._name

    @property
    def loop(self) -> asyncio.AbstractEventLoop:
        """
        The manager's event loop.
        """
        return self.manager.loop

    @property
    def manager(self) -> 'FixtureManager':
        return self._manager

    @property
    def logger(self) -> logging.Logger:
        """
        A logger named after this fixture's canonical name.
        """
        return self._logger

    @property
    def fixture_arguments(self) -> casorati.Namespace:
        """
        Arguments given at construction. :meth:`gather` keyword arguments override them per run.
        """
        return self._args

    @property
    def gather_timeout_seconds(self) -> typing.Optional[float]:
        """
        Seconds :meth:`gather` waits for :meth:`on_gather` before raising :class:`asyncio.TimeoutError`.
        ``None`` waits forever.
        """
        return self._gather_timeout_seconds

    @gather_timeout_seconds.setter
    def gather_timeout_seconds(self, gather_timeout_seconds: float) -> None:
        self._gather_timeout_seconds = gather_timeout_seconds

    @classmethod
    def visit_test_arguments(cls, arguments: casorati.Arguments) -> None:
        """
        :meth:`on_visit_test_arguments` with :data:`casorati.Arguments.required_prefix` set to this suite's
        prefix for the duration of the call.
        """
        outer_prefix = arguments.required_prefix
        arguments.required_prefix = cls.get_argument_prefix().replace('_', '-')
        try:
            cls.on_visit_test_arguments(arguments)
        finally:
            arguments.required_prefix = outer_prefix

    # +-----------------------------------------------------------------------+
    # | ABSTRACT METHODS
    # +-----------------------------------------------------------------------+
    @classmethod
    @abc.abstractmethod
    def on_visit_test_arguments(cls, arguments: casorati.Arguments) -> None:
        """
        Declare the suite's options. Called on the type, before any instance exists, once for ``dwr``'s argparse
        parser and once for pytest, so only use keywords both accept. A suite is found through the
        ``pytest_casorati_fixture_type`` hook of its plugin module.
        """
        ...

    @abc.abstractmethod
    async def on_gather(self, args: casorati.Namespace) -> casorati.Artifacts:
        """
        The suite body, awaited by :meth:`gather` with the merged arguments. Failed properties go into the
        artifacts and a non-zero :attr:`casorati.Artifacts.result_code`; they are not raised. Malformed arguments
        raise :class:`casorati.InputError`.
        """
        ...

    # +-----------------------------------------------------------------------+
    # | Optional Hooks
    # +-----------------------------------------------------------------------+
    def on_test_teardown(self, test_name: str) -> None:
        """
        Called by the pytest plugin after each test that used this suite.
        """
        pass


class FixtureManager:
    """
    Owns the event loop suites run on. Subclasses know how to create suites by canonical name.
    """

    def __init__(self, loop: typing.Optional[asyncio.AbstractEventLoop] = None) -> None:
        self._loop = loop

    @property
    def loop(self) -> asyncio.AbstractEventLoop:
        """
        The loop given to the constructor, or :func:`asyncio.get_event_loop` once that one is closed.
        """
        if self._loop is None or self._loop.is_closed():
            self._loop = asyncio.get_event_loop()
        return self._loop

    def create_fixture(self,
                       canonical_name: str,
                       args: typing.Optional[casorati.Namespace] = None) -> Fixture:
        """
        A new suite of the type registered under ``canonical_name``, bound to this manager.

        :raises KeyError: if ``canonical_name`` was not registered with this manager.
        """
        raise NotImplementedError('{} cannot create suites'.format(type(self).__name__))


BUILTIN_MODULES = (
    'casorati.builtin.casorati_bethe',
    'casorati.builtin.casorati_lemma_wron',
    'casorati.builtin.casorati_theorem1',
    'casorati.builtin.casorati_theorem1a',
    'casorati.builtin.casorati_examples',
    'casorati.builtin.casorati_convergence',
    'casorati.builtin.casorati_gather',
)


class BuiltinFixtureManager(FixtureManager):
    """
    Creates the built-in suites by canonical name without going through pytest.

    .. invisible-code-block: python

        import asyncio
        from casorati.fixtures import BuiltinFixtureManager

    .. code-block:: python

        manager = BuiltinFixtureManager(asyncio.new_event_loop())

        assert 'casorati_bethe' in manager.fixture_types
        assert manager.by_argument_prefix('lemma-wron').get_canonical_name() == 'casorati_lemma_wron'

    """

    def __init__(self, loop: typing.Optional[asyncio.AbstractEventLoop] = None) -> None:
        super().__init__(loop)
        self._types = {}  # type: typing.Dict[str, typing.Type[Fixture]]
        for module_name in BUILTIN_MODULES:
            module = importlib.import_module(module_name)
            fixture_type = module.pytest_casorati_fixture_type()  # type: ignore
            self._types[fixture_type.get_canonical_name()] = fixture_type

    @property
    def fixture_types(self) -> typing.Dict[str, typing.Type[Fixture]]:
        return dict(self._types)

    def by_argument_prefix(self, prefix: str) -> typing.Type[Fixture]:
        """
        :raises KeyError: if no built-in suite uses ``prefix``.
        """
        for fixture_type in self._types.values():
            if fixture_type.get_argument_prefix() == prefix:
                return fixture_type
        raise KeyError(prefix)

    def visit_test_arguments(self, arguments: casorati.Arguments) -> None:
        for fixture_type in self._types.values():
            fixture_type.visit_test_arguments(arguments)

    def create_fixture(self,
                       canonical_name: str,
                       args: typing.Optional[casorati.Namespace] = None) -> Fixture:
        return self._types[canonical_name](self, args)
