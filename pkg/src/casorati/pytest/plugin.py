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
Casorati exposes each verification suite as a pytest fixture named for the suite's canonical name. Any package
can contribute a suite the same way the built-in ones do:

.. invisible-code-block: python
    import casorati
    import casorati.fixtures
    import typing

.. code-block:: python

    # In my_namespace/__init__.py

    class MySuite(casorati.fixtures.Fixture):

        fixture_name = 'my_suite'
        argument_prefix = 'mys'

        @classmethod
        def on_visit_test_arguments(cls, arguments: casorati.Arguments) -> None:
            arguments.add_argument('--tol', type=float, help='Residual tolerance.')

        async def on_gather(self, args: casorati.Namespace) -> casorati.Artifacts:
            artifacts = casorati.Artifacts()
            # Check your identities here and store the residuals in casorati.Artifacts.
            return artifacts


    def pytest_casorati_fixture_type() -> typing.Type['casorati.fixtures.Fixture']:
        return MySuite

and register both the core plugin and the module in setup.cfg::

    [options.entry_points]
    pytest11 =
        pytest_casorati = casorati.pytest.plugin
        pytest_casorati_plugin_my_suite = my_namespace

Only one :class:`Fixture <casorati.fixtures.Fixture>` may be exposed per module. A test then asks for it by name::

    async def test_my_suite(my_suite):
        assert_success(await my_suite.gather(mys_tol=1e-10))

"""
import asyncio
import logging
import re
import textwrap
import typing

import _pytest
import pytest

import casorati
import casorati.config
import casorati.fixtures
import casorati.version


# +---------------------------------------------------------------------------+
# | CASORATI PYTEST FIXTURES
# +---------------------------------------------------------------------------+


@pytest.fixture
def casorati_fixture_manager(request: typing.Any) -> casorati.fixtures.FixtureManager:
    """
    Provides a :class:`FixtureManager <casorati.fixtures.FixtureManager>` that creates suites through the pytest
    plugin registry.

    .. invisible-code-block: python

        import casorati.fixtures

    .. code-block:: python

        def test_example(casorati_fixture_manager: casorati.fixtures.FixtureManager) -> None:
            common_loop = casorati_fixture_manager.loop

    """
    return PytestFixtureManager(request.config.pluginmanager)


@pytest.fixture
def casorati_arguments(request: typing.Any) -> casorati.Namespace:
    """
    The command-line arguments and configured defaults provided to a test.

    .. invisible-code-block: python

        import casorati

    .. code-block:: python

        def test_example(casorati_arguments: casorati.Namespace) -> None:
            trials = casorati_arguments.theorem1_trials

    """
    args = request.config.option
    return casorati.Namespace(args, casorati.config.ArgumentDefaults(args), allow_none_values=False)


@pytest.fixture
def casorati_log(request: typing.Any) -> logging.Logger:
    """
    A logger named for the requesting test. Configure output in tox.ini::

        [pytest]
        log_cli = true
        log_cli_level = DEBUG
        log_format = %(asctime)s %(levelname)s %(name)s: %(message)s
        log_date_format = %Y-%m-%d %H:%M:%S

    """
    return logging.getLogger(request.function.__name__)


# +===========================================================================+
# | CASORATI PYTEST PLUGIN INTERNALS
# +===========================================================================+


class PytestFixtureManager(casorati.fixtures.FixtureManager):
    """
    :class:`FixtureManager <casorati.fixtures.FixtureManager>` implemented using pytest plugin APIs.
    """

    def __init__(self,
                 pluginmanager: '_pytest.config.PytestPluginManager',
                 loop: typing.Optional[asyncio.AbstractEventLoop] = None):
        super().__init__(loop=loop)
        self._pluginmanager = pluginmanager

    def create_fixture(self,
                       canonical_name: str,
                       args: typing.Optional[casorati.Namespace] = None) -> casorati.fixtures.Fixture:
        fixture_plugin = self._pluginmanager.get_plugin(canonical_name)
        if fixture_plugin is None:
            raise KeyError(canonical_name)
        return fixture_plugin.fixture_type(self, args)


class _SyntheticPlugin:
    """
    A pytest plugin with the same name as a suite's canonical name, exposing a fixture of that name.
    """

    _RemoveInvisiblesPattern = re.compile(r'\.\.\s+invisible-code-block:.*\n(?:[\n]|\s{4,}.*\n)+')

    def __init__(self, fixture_type: typing.Type['casorati.fixtures.Fixture']):
        self._fixture_type = fixture_type

        fixture_type_name = fixture_type.get_canonical_name()

        def _generic_async_fixture(request: typing.Any,
                                   casorati_fixture_manager: casorati.fixtures.FixtureManager) -> typing.Any:
            args = request.config.option
            args_ns = casorati.Namespace(args, casorati.config.ArgumentDefaults(args), allow_none_values=False)
            fixture = fixture_type(casorati_fixture_manager, args_ns,
                                   gather_timeout_seconds=args_ns.gather_timeout_seconds)
            if fixture.get_canonical_name() != request.fixturename:
                raise ValueError('Requested fixture {} but that fixture\'s canonical name is {}'.format(
                    request.fixturename,
                    fixture.get_canonical_name()))
            return fixture

        cleaned_docstring = self._RemoveInvisiblesPattern.sub('', textwrap.dedent(fixture_type.__doc__ or ''))
        _generic_async_fixture.__doc__ = cleaned_docstring
        # pytest >= 8 looks fixtures up on the plugin's type, not the instance, so hang it on a per-instance subclass.
        self.__class__ = type(type(self).__name__, (type(self),),
                              {fixture_type_name: staticmethod(pytest.fixture(_generic_async_fixture,
                                                                                 name=fixture_type_name))})

    @property
    def fixture_type(self) -> typing.Type['casorati.fixtures.Fixture']:
        return self._fixture_type


# +---------------------------------------------------------------------------+
# | INTERNALS :: PYTEST HOOKS
# +---------------------------------------------------------------------------+

def pytest_addoption(parser: '_pytest.config.argparsing.Parser',
                     pluginmanager: '_pytest.config.PytestPluginManager') -> None:
    """
    See :func:`_pytest.hookspec.pytest_addoption`. Every registered suite contributes its prefixed options in a
    group named for the suite.
    """
    casorati_defaults = casorati.config.ArgumentDefaults.create_defaults_with_early_rc_config()

    casorati_options = parser.getgroup('casorati', description='Casorati Options')
    casorati_options.addoption('--gather-timeout-seconds',
                               type=float,
                               help=textwrap.dedent('''
                            A gather timeout in fractional seconds to use for all suites.
                            If not provided then Fixture.gather will not timeout.''').lstrip())

    casorati_arguments = casorati.Arguments(casorati_options, defaults=casorati_defaults, filter_duplicates=True)

    # Suites live in other distributions' pytest11 entry points; load them now so they can add options.
    pluginmanager.load_setuptools_entrypoints('pytest11')

    for fixture_type in pluginmanager.hook.pytest_casorati_fixture_type():
        name = fixture_type.get_canonical_name()
        if pluginmanager.get_plugin(name) is None:
            pluginmanager.register(_SyntheticPlugin(fixture_type), name)
        group = parser.getgroup(name)
        casorati_arguments.set_inner_arguments(group)
        fixture_type.visit_test_arguments(casorati_arguments)


def pytest_addhooks(pluginmanager: '_pytest.config.PytestPluginManager') -> None:
    """
    See :func:`_pytest.hookspec.pytest_addhooks`.
    """
    from casorati.pytest import hooks

    pluginmanager.add_hookspecs(hooks)


def pytest_runtest_teardown(item: pytest.Item, nextitem: typing.Optional[pytest.Item]) -> None:
    """
    See :func:`_pytest.hookspec.pytest_runtest_teardown`.
    """
    if hasattr(item, 'funcargs'):
        for value in item.funcargs.values():
            if isinstance(value, casorati.fixtures.Fixture):
                typing.cast(casorati.fixtures.Fixture, value).on_test_teardown(item.name)


def pytest_report_header(config: '_pytest.config.Config') -> typing.List[str]:
    """
    See :func:`_pytest.hookspec.pytest_report_header`.
    """
    return ['casorati={}'.format(casorati.version.__version__)]
