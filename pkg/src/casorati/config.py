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
Verification suites are configured from the command line, from configuration files and from the
environment. This module resolves the last two into argument defaults.
"""
import argparse
import configparser
import logging
import os
import pathlib
import sys
import typing
import weakref

_logger = logging.getLogger(__name__)


def _option_key(option_strings: typing.Sequence[typing.Any]) -> str:
    """
    ``('-r', '--bethe-rank')`` -> ``'bethe_rank'``
    """
    long_forms = [str(name) for name in option_strings[:2] if str(name).startswith('--')]
    if not long_forms:
        raise ValueError('no long option among {}'.format(option_strings))
    return long_forms[0][2:].replace('-', '_')


def _sections_for(key: str) -> typing.Iterator[typing.Tuple[str, str]]:
    """
    (section, option) pairs consulted for ``key``, most specific first.
    """
    parts = key.split('_')
    splits = [('_'.join(parts[:i]), '_'.join(parts[i:])) for i in range(len(parts) - 1, 0, -1)]
    for group, option in splits:
        yield 'casorati:' + group, option
    for group, option in splits:
        yield group, option
    yield 'casorati', key


class ArgumentDefaults:
    """
    Configuration-file and environment defaults for Casorati options. :class:`casorati.Arguments` asks it for
    defaults while options are declared and :class:`casorati.Namespace` falls back to it for values that were
    never declared.

    The ``dwr`` command-line and the pytest plugin wire these objects up for you.
    """

    default_read_locations = ('~/casorati.cfg', '/etc/casorati.cfg', 'setup.cfg', 'tox.ini')
    """
    Read after ``--rcfile``. Files read later override earlier ones (:meth:`configparser.ConfigParser.read`).
    """

    environment_prefix = 'CASORATI_'

    @classmethod
    def create_defaults_with_early_rc_config(cls) -> 'ArgumentDefaults':
        '''
        Build defaults before the command line is parsed, taking ``--rcfile`` straight from :data:`sys.argv`.
        '''
        early = argparse.Namespace(rcfile=None)
        argv = sys.argv[1:]
        if '--rcfile' in argv[:-1]:
            early.rcfile = argv[argv.index('--rcfile') + 1]
        return cls(early)

    @classmethod
    def as_dict(cls, config_value: typing.Union[str, typing.List[str]]) -> typing.Mapping[str, str]:
        """
        Parses a multi-line ``key = value`` configuration value::

            [theorem1]
            tolerances =
                residual = 1e-7
                strip_margin = 1e-3

        .. invisible-code-block: python

            from casorati.config import ArgumentDefaults

            config = dict()
            config['tolerances'] = '''
                residual = 1e-7
                strip_margin=1e-3
            '''

        .. code-block:: python

            tolerances = ArgumentDefaults.as_dict(config['tolerances'])

            assert tolerances['strip_margin'] == '1e-3'

        """
        if config_value is None:
            return {}
        values = config_value if isinstance(config_value, list) else [str(config_value)]
        parsed = dict()
        for value in values:
            for line in value.strip().splitlines():
                if not line.strip():
                    continue
                key, _, item = line.partition('=')
                parsed[key.strip()] = item.strip()
        return parsed

    def __init__(self, args: typing.Optional[typing.Any] = None) -> None:
        self._configparser = configparser.ConfigParser(interpolation=configparser.ExtendedInterpolation())
        self._value_types = dict()  # type: typing.Dict[str, typing.Callable[[str], typing.Any]]
        self._environ_names = weakref.WeakKeyDictionary()  # type: weakref.WeakKeyDictionary
        self._read_from = []  # type: typing.List[str]
        self.set_args(args)

    @property
    def read_from(self) -> typing.List[str]:
        """
        The configuration files that were found and parsed.
        """
        return list(self._read_from)

    def set_args(self, args: typing.Any) -> None:
        """
        (Re)read configuration, starting with ``args.rcfile`` when there is one.

        :raises casorati.InputError: if the rcfile is missing or any file cannot be parsed.
        """
        from casorati import InputError

        locations = list(self.default_read_locations)
        rcfile = getattr(args, 'rcfile', None)
        if rcfile is not None:
            rcpath = pathlib.Path(str(rcfile)).expanduser()
            if not rcpath.is_file():
                raise InputError('rcfile {} does not exist'.format(rcpath))
            locations.insert(0, str(rcpath))
        try:
            self._read_from = self._configparser.read([str(pathlib.Path(p).expanduser()) for p in locations])
        except configparser.Error as e:
            raise InputError('unreadable configuration: {}'.format(e)) from e
        _logger.debug('Configuration read from %s', self._read_from)

    def _lookup(self, key: str) -> str:
        for section, option in _sections_for(key):
            try:
                return str(self._configparser[section][option])
            except KeyError:
                continue
        raise KeyError(key)

    def __getitem__(self, key: str) -> typing.Any:
        return self._value_types.get(key, str)(self._lookup(key))

    def __contains__(self, key: str) -> bool:
        try:
            self[key]
        except KeyError:
            return False
        return True

    def populate_default(self,
                         parser: argparse.ArgumentParser,
                         inout_args: typing.Tuple,
                         inout_kwargs: typing.Dict) -> None:
        """
        Rewrite the keyword arguments of an ``add_argument`` call: a configured value becomes ``default``
        (converted with ``type`` when given), ``enable_default_from_environ`` is consumed, and ``required`` is
        dropped once a default exists.
        """
        try:
            key = _option_key(inout_args)
        except ValueError:
            key = None

        if key is not None:
            self._default_from_config(key, inout_kwargs)

        if inout_kwargs.pop('enable_default_from_environ', False):
            if key is None:
                raise ValueError('enable_default_from_environ needs a long option')
            self._default_from_environ(parser, key, inout_kwargs)

        if 'default' in inout_kwargs:
            inout_kwargs.pop('required', None)

    def _default_from_config(self, key: str, inout_kwargs: typing.Dict) -> None:
        try:
            raw = self._lookup(key)
        except KeyError:
            return
        convert = inout_kwargs.get('type')
        try:
            inout_kwargs['default'] = raw if convert is None else convert(raw)
        except ValueError:
            _logger.warning('Ignoring configured %s = %r (not a valid value).', key, raw)
            return
        if convert is not None:
            self._value_types[key] = convert
        _logger.debug('Default for %s is %r from configuration.', key, inout_kwargs['default'])

    def _default_from_environ(self, parser: typing.Any, key: str, inout_kwargs: typing.Dict) -> None:
        variable = self.environment_prefix + key.upper()
        claimed = self._environ_names.setdefault(parser, {})
        if variable in claimed:
            raise RuntimeError('{} (derived from {}) was already derived from {}!'
                               .format(variable, key, claimed[variable]))
        claimed[variable] = key

        note = 'Set {} in the environment to override default.'.format(variable)
        if variable in os.environ:
            raw = os.environ[variable]
            convert = inout_kwargs.get('type')
            try:
                inout_kwargs['default'] = raw if convert is None else convert(raw)
                note = 'Default value {} obtained from environment variable {}.'.format(raw, variable)
            except ValueError:
                _logger.warning('Ignoring %s = %r (not a valid value).', variable, raw)
        inout_kwargs['help'] = note if 'help' not in inout_kwargs else '{}\n{}'.format(inout_kwargs['help'], note)
