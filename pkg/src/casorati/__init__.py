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
This module contains the common types used by Casorati: the error hierarchy shared by the numerical
modules and the argument, namespace and artifact types used by the verification suites.

"""
import argparse
import logging
import typing

from .config import ArgumentDefaults

_logger = logging.getLogger(__name__)


class AssertionError(RuntimeError):
    """
    Thrown by Casorati verification suites when a mathematical property did not hold within tolerance.

    .. Note::
        This exception is reserved for verification failures. Malformed input raises :class:`InputError`
        and input that is well-formed but degenerate raises :class:`DegenerateInputError`.
    """
    pass


class InputError(ValueError):
    """
    Raised when an input violates a documented precondition (negative degree, zero step, mismatched
    lengths, unsupported shape). The command-line exits with status 2 for this error.
    """
    pass


class DegenerateInputError(ValueError):
    """
    Raised when an input is well-formed but degenerate: linearly dependent members, coincident spectral
    parameters, a vanishing leading coefficient or a non-generic Bethe setup. The command-line exits
    with status 3 for this error.
    """
    pass


def _long_form_position(option_strings: typing.Sequence[str]) -> int:
    if not option_strings:
        raise InputError('an option needs at least one name')
    for position, name in enumerate(option_strings):
        if name.startswith('--'):
            return position
    return 0


class Arguments:
    """
    Declares suite and command-line options once for two kinds of receiver: an
    :class:`argparse.ArgumentParser` (used by ``dwr``) or a pytest option group (used by the pytest plugin).

    :param inner_arguments: The parser or pytest group that receives the options.
    :param defaults: Configuration consulted for each option's default.
    :type defaults: typing.Optional[ArgumentDefaults]
    :param str required_prefix: Long options that do not start with ``--<required_prefix>`` are renamed so
        they do. Suites use this to keep ``--seed`` from colliding across suites.
    :param bool filter_duplicates: Silently drop an option whose long form was already declared.
    """

    def __init__(self,
                 inner_arguments: typing.Any,
                 defaults: typing.Optional[ArgumentDefaults] = None,
                 required_prefix: typing.Optional[str] = None,
                 filter_duplicates: bool = False):
        self._receiver = inner_arguments
        self._defaults = defaults
        self.required_prefix = None if required_prefix is None else required_prefix.replace('_', '-')
        self._seen = set() if filter_duplicates else None  # type: typing.Optional[typing.Set[str]]

    def set_inner_arguments(self, inner_arguments: typing.Any) -> None:
        """
        Point this object at a different parser or group. Long forms seen so far stay filtered.

        .. invisible-code-block: python
            from casorati import Arguments
            from unittest.mock import MagicMock
            import argparse

            parser = MagicMock(spec=argparse.ArgumentParser)
            parser.add_argument = MagicMock()

            other_parser = MagicMock(spec=argparse.ArgumentParser)
            other_parser.add_argument = MagicMock()

        .. code-block:: python

            a = Arguments(parser, filter_duplicates=True)
            a.add_argument('--bethe-rank')

            # never reaches the parser
            a.add_argument('--bethe-rank')

            a.set_inner_arguments(other_parser)

            # still filtered
            a.add_argument('--bethe-rank')

        .. invisible-code-block: python

            parser.add_argument.assert_called_once_with('--bethe-rank')
            other_parser.add_argument.assert_not_called()

        """
        self._receiver = inner_arguments

    def add_argument(self, *args: typing.Any, **kwargs: typing.Any) -> None:
        """
        Same signature as :meth:`argparse.ArgumentParser.add_argument` plus ``enable_default_from_environ``.
        When that is True an environment variable named after the long option provides the default:

        .. invisible-code-block: python
            from casorati import Arguments
            from unittest.mock import MagicMock, ANY
            from casorati.config import ArgumentDefaults
            import argparse
            import os

            parser = argparse.ArgumentParser()
            parser.add_argument = MagicMock()
            config = ArgumentDefaults()

        .. code-block:: python

            # For --theorem1-trials the environment variable is...
            os.environ['CASORATI_THEOREM1_TRIALS'] = '12'

            a = Arguments(parser, config)
            a.add_argument('--theorem1-trials',
                           default=100,
                           type=int,
                           enable_default_from_environ=True,
                           help='Number of random trials.')

        .. invisible-code-block: python

            parser.add_argument.assert_called_once_with('--theorem1-trials', default=12, type=int, help=ANY)
            call_kwargs = parser.add_argument.call_args[1]
            del os.environ['CASORATI_THEOREM1_TRIALS']

        .. code-block:: python

            assert call_kwargs['default'] == 12

        .. invisible-code-block: python

            parser.add_argument = MagicMock()

        .. code-block:: python

            # With a required prefix...
            a = Arguments(parser, config, required_prefix='bethe')
            a.add_argument('--rank')

            # ...the option becomes
            renamed = '--bethe-rank'

        .. invisible-code-block: python

            parser.add_argument.assert_called_once_with(renamed)

        """
        names = list(args)
        position = _long_form_position(names)
        if self.required_prefix is not None:
            names[position] = self._with_prefix(names[position])

        if self._seen is not None:
            # pytest's addoption leaves its parser half-updated when it raises for a duplicate.
            if names[position] in self._seen:
                _logger.debug('Dropping duplicate option %s', names[position])
                return
            self._seen.add(names[position])

        if self._defaults is not None:
            self._defaults.populate_default(self._receiver, tuple(names), kwargs)
        else:
            kwargs.pop('enable_default_from_environ', None)

        if isinstance(self._receiver, argparse.ArgumentParser):
            self._receiver.add_argument(*names, **kwargs)
        else:
            self._receiver.addoption(*names, **kwargs)

    def _with_prefix(self, name: str) -> str:
        wanted = '--{}'.format(self.required_prefix)
        if name.startswith(wanted):
            return name
        renamed = '{}-{}'.format(wanted, name.lstrip('-'))
        _logger.debug('Renamed option %s to %s', name, renamed)
        return renamed


class Namespace:
    """
    Attribute bag that behaves like :class:`argparse.Namespace` but can also be built from pytest options and
    falls back to configuration for anything it was not given.

    When :class:`casorati.config.ArgumentDefaults` are supplied a value is resolved from, in order:

        1. the value set on the namespace (command line or keyword override)
        2. the file named by ``--rcfile``
        3. ``~/casorati.cfg``
        4. ``/etc/casorati.cfg``
        5. ``setup.cfg`` or ``tox.ini`` in the working directory
        6. a ``CASORATI_*`` environment variable (only for options declared with ``enable_default_from_environ``)
        7. the option's declared default.

    Configuration keys are split on underscores to find their section:

    .. invisible-code-block: python

        from casorati.config import ArgumentDefaults
        from unittest.mock import MagicMock
        import casorati

        argument_defaults = ArgumentDefaults()
        argument_defaults._configparser = MagicMock()

        values = MagicMock()
        count = 0

        def fifth_time(_):
            global count, values
            count += 1
            if count < 5:
                raise KeyError
            return values

        argument_defaults._configparser.__getitem__.side_effect = fifth_time

    .. code-block:: python

        # given
        key = 'theorem1_max_roots'

        # the sections consulted, most specific first
        config_lookups = {
            'casorati:theorem1_max': 'roots',
            'casorati:theorem1': 'max_roots',
            'theorem1_max': 'roots',
            'theorem1': 'max_roots',
            'casorati': 'theorem1_max_roots'
        }

        _ = argument_defaults[key]

    .. invisible-code-block: python

        for item in config_lookups.items():
            argument_defaults._configparser.__getitem__.assert_any_call(item[0])
        values.__getitem__.assert_any_call('theorem1_max_roots')

    So with::

        [casorati]
        theorem1_trials = 10

        [theorem1]
        trials = 500

    ``theorem1_trials`` resolves to ``500``.

    Unset attributes read as ``None``; ``in`` tells the two apart:

    .. code-block:: python

        ns = casorati.Namespace()
        assert ns.foo is None
        assert 'foo' not in ns

    :param parent: Object whose attributes (``vars(parent)``) are copied in.
    :param defaults: Configuration used for attributes this namespace does not hold.
    :type defaults: typing.Optional[ArgumentDefaults]
    :param bool allow_none_values: When False, ``None`` values on ``parent`` are not copied so the lookup
        continues into ``defaults``.
    """

    def __init__(self,
                 parent: typing.Optional[typing.Any] = None,
                 defaults: typing.Optional[ArgumentDefaults] = None,
                 allow_none_values: bool = True):
        self._defaults = defaults
        inherited = {} if parent is None else vars(parent)
        for key, value in inherited.items():
            if value is None and not allow_none_values:
                continue
            setattr(self, key, value)

    def __getattr__(self, key: str) -> typing.Any:
        # Only reached for attributes missing from __dict__.
        defaults = self.__dict__.get('_defaults')
        if defaults is None or key.startswith('__'):
            return None
        try:
            return defaults[key]
        except KeyError:
            return None

    def __contains__(self, key: str) -> bool:
        if key in self.__dict__:
            return True
        return self._defaults is not None and key in self._defaults

    def as_config_dict(self) -> typing.Dict[str, typing.Any]:
        """
        The explicitly set (non-private) attributes of this namespace. Reports embed this as the resolved
        configuration of a run.
        """
        return {key: value for key, value in sorted(vars(self).items()) if not key.startswith('_')}

    T = typing.TypeVar('T')

    def merge(self, **kwargs: typing.Any) -> 'Namespace.T':
        """
        A copy of this namespace with ``kwargs`` applied on top. The original is left alone.

        .. invisible-code-block: python
            from casorati import Namespace

        .. code-block:: python

            original = Namespace()
            setattr(original, 'bethe_rank', 2)

            merged = original.merge(bethe_rank=3, bethe_sites=2)

            assert 2 == original.bethe_rank
            assert 3 == merged.bethe_rank
            assert 2 == merged.bethe_sites

        """
        merged = self.__class__(parent=self, defaults=self._defaults)
        for key, value in kwargs.items():
            setattr(merged, key, value)
        return typing.cast('Namespace.T', merged)


class Artifacts(Namespace):
    """
    What a :class:`casorati.fixtures.Fixture` returns from a gather: residuals, counts and reports, plus a
    :data:`result_code`.

    :param int result_code: 0 if every property held, non-zero otherwise.
    :param parent: See :class:`Namespace`.
    :param defaults: See :class:`Namespace`.
    :param bool allow_none_values: See :class:`Namespace`.
    """

    @classmethod
    def combine(cls, *artifacts: 'Artifacts') -> 'Artifacts':
        '''
        Fold several artifacts into one with :meth:`Namespace.merge`.

        .. invisible-code-block: python
            from casorati import Artifacts

            first = Artifacts()
            second = Artifacts()

        Later arguments win where attributes overlap:

        .. code-block:: python

            setattr(first, 'max_residual', 1e-12)
            setattr(second, 'max_residual', 3e-11)

            assert Artifacts.combine(first, second).max_residual == 3e-11
            assert Artifacts.combine(second, first).max_residual == 1e-12

        The combined :data:`result_code` is 0 only if every input was 0:

        .. code-block:: python

            first.result_code = 0
            second.result_code = 1

            assert Artifacts.combine(first, second).result_code == -1

        :raises ValueError: if called with nothing.
        '''
        if not artifacts:
            raise ValueError('Nothing to combine.')
        combined = artifacts[0]
        for later in artifacts[1:]:
            combined = combined.merge(**vars(later))
        combined.result_code = 0 if all(a.result_code == 0 for a in artifacts) else -1
        return combined

    def __init__(self,
                 result_code: int = 0,
                 parent: typing.Optional[typing.Any] = None,
                 defaults: typing.Optional[ArgumentDefaults] = None,
                 allow_none_values: bool = True):
        super().__init__(parent=parent, defaults=defaults, allow_none_values=allow_none_values)
        self._result_code = result_code

    @property
    def result_code(self) -> int:
        """
        0 if every verified property held. Non-zero if any failed.
        """
        return self._result_code

    @result_code.setter
    def result_code(self, new_result: int) -> None:
        self._result_code = new_result

    def dump(self, logger: logging.Logger, log_level: int = logging.DEBUG) -> None:
        """
        Log every public artifact as ``key: value`` at ``log_level``.
        """
        for key, value in self.as_config_dict().items():
            logger.log(log_level, '%s: %s', key, value)

    def __int__(self) -> int:
        return self._result_code


def assert_success(artifacts: Artifacts) -> Artifacts:
    """
    Fail a test when a suite reported failure, otherwise hand the artifacts back.

    .. invisible-code-block: python

        import casorati

    .. code-block:: python

        lemma = casorati.Artifacts()
        setattr(lemma, 'max_residual', 2e-13)

        assert casorati.assert_success(lemma).max_residual < 1e-9

    :raises casorati.AssertionError: if the result code was not 0.
    """
    if artifacts.result_code != 0:
        raise AssertionError('result_code was {}'.format(artifacts.result_code))
    return artifacts


def assert_success_if(artifacts: Artifacts, conditional: typing.Callable[[Artifacts], bool]) -> Artifacts:
    """
    :func:`assert_success` followed by a caller-supplied check.

    .. invisible-code-block: python

        import pytest
        import casorati

    .. code-block:: python

        lemma = casorati.Artifacts()
        setattr(lemma, 'max_residual', 1e-6)

        with pytest.raises(casorati.AssertionError):
            casorati.assert_success_if(lemma, lambda a: a.max_residual < 1e-9)

    :param conditional: Only called when the result code is 0. Returning False fails the assertion.
    :raises casorati.AssertionError: if the result code was not 0 or the conditional returned False.
    """
    assert_success(artifacts)
    if not conditional(artifacts):
        raise AssertionError('conditional rejected the artifacts')
    return artifacts
