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
import math
import typing

import numpy as np

import casorati
import casorati.fixtures
from casorati import matrixz


class Fixture(casorati.fixtures.Fixture):
    """
    Random ``Z`` matrices of sizes 2 to ``--lemma-wron-max-rank``: compares ``det(x - Z)`` with the discrete
    Wronskian of the matching quasi-exponentials at half-step ``i`` and checks the trace against both sides.

    .. invisible-code-block: python

        import asyncio
        from casorati.fixtures import FixtureManager
        from casorati.builtin import casorati_lemma_wron

        loop = asyncio.new_event_loop()
        manager = FixtureManager(loop=loop)

    .. code-block:: python

        async def lemma():
            return await casorati_lemma_wron.Fixture(manager).gather(lemma_wron_trials=12)

    .. invisible-code-block: python

        artifacts = loop.run_until_complete(lemma())

        assert artifacts.result_code == 0
        assert artifacts.max_residual < 1e-8

    +--------------------+---------------------------+-------------------------------------------------------+
    | **Artifacts**                                                                                          |
    |                                                                                                        |
    +--------------------+---------------------------+-------------------------------------------------------+
    | key                | type                      | Notes                                                 |
    +====================+===========================+=======================================================+
    | ``trials``         | int                       | Number of matrices drawn.                             |
    +--------------------+---------------------------+-------------------------------------------------------+
    | ``max_residual``   | float                     | Largest coefficient distance, relative to the size of |
    |                    |                           | the characteristic polynomial.                        |
    +--------------------+---------------------------+-------------------------------------------------------+
    | ``max_trace_error``| float                     | Largest trace mismatch against either side.           |
    +--------------------+---------------------------+-------------------------------------------------------+
    | ``failures``       | List[dict]                | Trials over tolerance with their ``a`` and angles.    |
    +--------------------+---------------------------+-------------------------------------------------------+
    """

    fixture_name = 'casorati_lemma_wron'
    argument_prefix = 'lemma-wron'

    @classmethod
    def on_visit_test_arguments(cls, arguments: casorati.Arguments) -> None:
        arguments.add_argument('--trials', type=int, help='Number of random matrices (default 100).')
        arguments.add_argument('--max-rank', type=int, help='Largest matrix size (default 5).')
        arguments.add_argument('--seed', type=int, help='Seed for the random matrices.')
        arguments.add_argument('--tol', type=float, help='Bound for the relative residual (default 1e-8).')

    async def on_gather(self, args: casorati.Namespace) -> casorati.Artifacts:
        trials = int(self.get_arg_covariant(args, 'trials', 100))
        max_rank = int(self.get_arg_covariant(args, 'max-rank', 5))
        seed = int(self.get_arg_covariant(args, 'seed', 0))
        tol = float(self.get_arg_covariant(args, 'tol', 1e-8))
        if max_rank < 2:
            raise casorati.InputError('max rank must be at least 2')

        records = await self.gather_trials(lambda i: _trial(i, seed, 2 + i % (max_rank - 1)), trials)

        artifacts = casorati.Artifacts()
        failures = [r for r in records if r['residual'] > tol or r['trace_error'] > tol]
        for f in failures:
            self.logger.warning('trial %d: residual %.3g, trace error %.3g', f['index'], f['residual'],
                                f['trace_error'])
        setattr(artifacts, 'trials', trials)
        setattr(artifacts, 'max_residual', max((r['residual'] for r in records), default=0.0))
        setattr(artifacts, 'max_trace_error', max((r['trace_error'] for r in records), default=0.0))
        setattr(artifacts, 'failures', failures)
        artifacts.result_code = (0 if len(failures) == 0 else 1)
        return artifacts


def pytest_casorati_fixture_type() -> typing.Type['casorati.fixtures.Fixture']:
    return Fixture


def _trial(index: int, seed: int, N: int) -> typing.Dict[str, typing.Any]:
    rng = np.random.default_rng([seed, index])
    lam = []  # type: typing.List[float]
    while len(lam) < N:
        v = float(rng.uniform(0, math.pi))
        if all(0.1 < abs(v - w) < math.pi - 0.1 for w in lam):
            lam.append(v)
    a = [complex(rng.normal(), rng.normal()) for _ in range(N)]
    d = matrixz.ZData(a, lam)
    scale = max(1.0, matrixz.charpoly(matrixz.build_z(d)).scale)
    trace = matrixz.trace_check(d)
    return {
        'index': index,
        'a': a,
        'lam': lam,
        'residual': matrixz.verify_lemma_wron(d) / scale,
        'trace_error': max(trace.charpoly_error, trace.roots_error) / scale
    }
