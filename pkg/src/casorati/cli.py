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
The ``dwr`` command-line. Every subcommand writes one JSON report (sorted keys, indented) to stdout or ``--out``
and logs to stderr. Exit status is 0 on success, 1 when a verified property failed, 2 for usage or input
errors and 3 for degenerate input.
"""
import argparse
import asyncio
import logging
import sys
import typing

import casorati
import casorati.config
import casorati.fixtures
import casorati.version
from casorati import codec, matrixz
from casorati.inverse import newton_inverse
from casorati.quasiexp import MATRIX_Z_HALF_STEP, monic_wronskian, theorem1_hypotheses

LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_DEGENERATE = 3

SUITES = {
    'bethe': 'casorati_bethe',
    'lemma-wron': 'casorati_lemma_wron',
    'theorem1': 'casorati_theorem1',
    'theorem1a': 'casorati_theorem1a',
    'examples': 'casorati_examples',
    'convergence': 'casorati_convergence',
    'all': 'casorati_gather',
}

# Generic verify flags and the suite arguments they stand for.
_GENERIC = {
    'N': ('bethe_rank', 'theorem1_members', 'theorem1a_max_rank', 'lemma_wron_max_rank'),
    'n': ('bethe_sites',),
    'trials': ('lemma_wron_trials', 'theorem1_trials', 'theorem1a_trials'),
    'seed': ('bethe_seed', 'lemma_wron_seed', 'theorem1_seed', 'theorem1a_seed'),
    'tol': ('bethe_tol', 'lemma_wron_tol'),
}

_logger = logging.getLogger(__name__)


def parse_complex(text: str) -> complex:
    """
    ``re,im`` or anything :class:`complex` accepts.

    .. invisible-code-block: python

        from casorati.cli import parse_complex

    .. code-block:: python

        assert parse_complex('0,1') == 1j
        assert parse_complex('2') == 2

    """
    try:
        parts = text.split(',')
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
        return complex(text.replace(' ', ''))
    except ValueError:
        raise casorati.InputError('cannot read "{}" as a complex number'.format(text))


# +---------------------------------------------------------------------------+
# | PARSER
# +---------------------------------------------------------------------------+

def _common(defaults: casorati.config.ArgumentDefaults) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    arguments = casorati.Arguments(common, defaults)
    arguments.add_argument('--seed', type=int, help='Random seed (default 0).')
    arguments.add_argument('--tol', type=float, help='Tolerance (default 1e-9).')
    arguments.add_argument('--trials', type=int, help='Number of random trials.')
    arguments.add_argument('--out', help='Write the report here instead of stdout.')
    return common


def make_parser(defaults: typing.Optional[casorati.config.ArgumentDefaults] = None,
                manager: typing.Optional[casorati.fixtures.BuiltinFixtureManager] = None) -> argparse.ArgumentParser:
    if defaults is None:
        defaults = casorati.config.ArgumentDefaults()
    if manager is None:
        manager = casorati.fixtures.BuiltinFixtureManager()
    common = _common(defaults)

    parser = argparse.ArgumentParser(prog='dwr',
                                     description='Discrete Wronskians of quasi-exponential spaces.')
    parser.add_argument('--rcfile', help='Configuration file read before the default locations.')
    casorati.Arguments(parser, defaults).add_argument('--log-level', help='Root log level (default WARNING).')
    parser.add_argument('--version', action='store_true', help='Print the version and exit.')
    commands = parser.add_subparsers(dest='command', metavar='command')

    wronskian = commands.add_parser('wronskian', parents=[common], help='Monic discrete Wronskian of a space.')
    wronskian.add_argument('space', help='JSON space ("-" for stdin).')
    wronskian.add_argument('--h', default='0,1', help='Half-step as re,im (default 0,1).')

    solve = commands.add_parser('solve', parents=[common], help='Solve an inverse problem.')
    solve.add_argument('problem', help='JSON problem ("-" for stdin).')

    verify = commands.add_parser('verify', parents=[common], help='Run a verification suite.')
    verify.add_argument('suite', help='One of {}.'.format(', '.join(SUITES)))
    verify.add_argument('--N', type=int, dest='N', help='Rank (members, matrix size).')
    verify.add_argument('--n', type=int, dest='n', help='Number of sites.')
    manager.visit_test_arguments(casorati.Arguments(verify, defaults, filter_duplicates=True))

    examples = commands.add_parser('examples', parents=[common], help='Tabulate the closed-form families.')
    examples.add_argument('--csv', help='Also write the reality scan as CSV.')
    examples.add_argument('--points', type=int, help='Scan points per axis (default 20).')

    zmatrix = commands.add_parser('zmatrix', parents=[common], help='Build and check a Z matrix.')
    zmatrix.add_argument('zdata', help='JSON {"a": [...], "lam": [...]} ("-" for stdin).')
    return parser


# +---------------------------------------------------------------------------+
# | COMMANDS
# +---------------------------------------------------------------------------+

def _read(path: str) -> typing.Any:
    if path == '-':
        return codec.load(sys.stdin)
    with open(path, 'r') as stream:
        return codec.load(stream)


def _check_config(args: argparse.Namespace) -> None:
    if args.tol is not None and args.tol <= 0:
        raise casorati.InputError('tol must be positive')
    if args.trials is not None and args.trials < 1:
        raise casorati.InputError('trials must be at least 1')


def cmd_wronskian(args: argparse.Namespace) -> typing.Tuple[typing.Any, int]:
    space = codec.decode_space(_read(args.space))
    h = parse_complex(args.h)
    tol = args.tol if args.tol is not None else 1e-9
    wr = monic_wronskian(space, h)
    return {
        'w': wr.w,
        'roots': sorted(wr.w.roots().tolist(), key=lambda z: (z.real, z.imag)),
        'mu_total': wr.mu_total,
        'leading': wr.leading,
        'h': h,
        'hypotheses': theorem1_hypotheses(space, h, tol)
    }, EXIT_OK


def cmd_solve(args: argparse.Namespace) -> typing.Tuple[typing.Any, int]:
    document = _read(args.problem)
    if isinstance(document, dict) and 'seed' not in document and args.seed is not None:
        document = dict(document, seed=args.seed)
    solutions = newton_inverse(codec.decode_problem(document))
    return solutions, EXIT_OK


def _suite_namespace(args: argparse.Namespace) -> casorati.Namespace:
    ns = casorati.Namespace(args, allow_none_values=False)
    for generic, keys in _GENERIC.items():
        value = getattr(args, generic, None)
        if value is None:
            continue
        for key in keys:
            if getattr(ns, key) is None:
                setattr(ns, key, value)
    return ns


def _run_suite(canonical_name: str, ns: casorati.Namespace) -> typing.Tuple[typing.Any, int]:
    loop = asyncio.new_event_loop()
    try:
        manager = casorati.fixtures.BuiltinFixtureManager(loop)
        artifacts = manager.create_fixture(canonical_name, ns).gather_until_complete()
    finally:
        loop.close()
    result = artifacts.as_config_dict()
    result['result_code'] = artifacts.result_code
    return result, (EXIT_OK if artifacts.result_code == 0 else EXIT_FAILED)


def cmd_verify(args: argparse.Namespace) -> typing.Tuple[typing.Any, int]:
    try:
        canonical_name = SUITES[args.suite]
    except KeyError:
        raise casorati.InputError('unknown suite "{}"'.format(args.suite))
    return _run_suite(canonical_name, _suite_namespace(args))


def cmd_examples(args: argparse.Namespace) -> typing.Tuple[typing.Any, int]:
    ns = casorati.Namespace(args, allow_none_values=False)
    if args.csv is not None:
        setattr(ns, 'examples_csv', args.csv)
    if args.points is not None:
        setattr(ns, 'examples_points', args.points)
    return _run_suite(SUITES['examples'], ns)


def cmd_zmatrix(args: argparse.Namespace) -> typing.Tuple[typing.Any, int]:
    d = codec.decode_zdata(_read(args.zdata))
    tol = args.tol if args.tol is not None else 1e-9
    z = matrixz.build_z(d)
    cp = matrixz.charpoly(z)
    space = matrixz.space_from_z(d)
    return {
        'zdata': d,
        'matrix': z,
        'charpoly': cp,
        'space': space,
        'wronskian': monic_wronskian(space, MATRIX_Z_HALF_STEP).w,
        'lemma_residual': matrixz.verify_lemma_wron(d),
        'trace': matrixz.trace_check(d),
        'reality': matrixz.theorem1a_check(d, tol)
    }, EXIT_OK


COMMANDS = {
    'wronskian': cmd_wronskian,
    'solve': cmd_solve,
    'verify': cmd_verify,
    'examples': cmd_examples,
    'zmatrix': cmd_zmatrix,
}


# +---------------------------------------------------------------------------+
# | ENTRYPOINT
# +---------------------------------------------------------------------------+

def _configure_logging(args: argparse.Namespace) -> None:
    level_name = str(args.log_level or 'WARNING').upper()
    level = logging.getLevelName(level_name)
    if not isinstance(level, int):
        raise casorati.InputError('unknown log level "{}"'.format(args.log_level))
    logging.basicConfig(stream=sys.stderr, level=level, format=LOG_FORMAT)


def _emit(document: typing.Any, out: typing.Optional[str]) -> None:
    if out is None:
        codec.dump(document, sys.stdout)
    else:
        with open(out, 'w') as stream:
            codec.dump(document, stream)


def main(argv: typing.Optional[typing.Sequence[str]] = None) -> int:
    """
    Entrypoint for ``dwr``::

        dwr wronskian space.json --h 0,1
        dwr solve problem.json
        dwr verify bethe --N 2 --n 2 --seed 7
        dwr examples --csv scan.csv
        dwr zmatrix zdata.json

    """
    argv = list(sys.argv[1:] if argv is None else argv)
    if '--version' in argv:
        print(casorati.version.__version__)
        return EXIT_OK
    try:
        defaults = casorati.config.ArgumentDefaults(argparse.Namespace(rcfile=_early_rcfile(argv)))
        parser = make_parser(defaults)
        try:
            args = parser.parse_args(argv)
        except SystemExit as e:
            return int(e.code or 0)
        _configure_logging(args)
        if args.command is None:
            parser.print_usage(sys.stderr)
            return EXIT_INPUT
        _check_config(args)
        _logger.debug('%s with %s', args.command, vars(args))
        result, status = COMMANDS[args.command](args)
        config = casorati.Namespace(args).as_config_dict()
        _emit(codec.make_report(args.command, result, config), args.out)
        return status
    except casorati.InputError as e:
        print('dwr: {}'.format(e), file=sys.stderr)
        return EXIT_INPUT
    except casorati.DegenerateInputError as e:
        print('dwr: {}'.format(e), file=sys.stderr)
        return EXIT_DEGENERATE
    except casorati.AssertionError as e:
        print('dwr: {}'.format(e), file=sys.stderr)
        return EXIT_FAILED
    except OSError as e:
        print('dwr: {}'.format(e), file=sys.stderr)
        return EXIT_INPUT


def _early_rcfile(argv: typing.Sequence[str]) -> typing.Optional[str]:
    for x in range(0, len(argv) - 1):
        if argv[x] == '--rcfile':
            return argv[x + 1]
    return None
