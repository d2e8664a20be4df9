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
Dense identity battery for the spin-chain side of the library.
"""
import math
import typing

import numpy as np

import casorati
import casorati.fixtures
from casorati import yangian

PIPELINE_TOL = 1e-6
SYMMETRY_TOL = 1e-8
BOUNDARY_TOL = 1e-9

Check = typing.Tuple[str, float, typing.Callable[[], float]]


class Fixture(casorati.fixtures.Fixture):
    """
    Draws a chain from ``--bethe-seed`` and checks, as operator-norm residuals relative to the size of both sides:

    * the RTT relation, commutativity of the transfer matrices, ``qdet = b`` and ``B_N = b_Q``;
    * the exchange, adjoint and antipode identities and the sampled rational form of every ``B_k``;
    * for ``N >= 2``, that each Bethe eigenvector's difference operator has a quasi-exponential kernel whose discrete
      Wronskian at half-step 1/2 has roots ``z_i - (N + 1)/2``;
    * on a second chain built from real bases and roots in the strip, positivity of the twisted form, its
      covariance and the eigenvalue symmetry it implies, and the zero eigenvalue of the form on the strip's edge.

    .. invisible-code-block: python

        import asyncio
        from casorati.fixtures import FixtureManager
        from casorati.builtin import casorati_bethe

        loop = asyncio.new_event_loop()
        manager = FixtureManager(loop=loop)

    .. code-block:: python

        async def battery():
            return await casorati_bethe.Fixture(manager).gather(bethe_rank=2, bethe_sites=1, bethe_seed=3)

    .. invisible-code-block: python

        artifacts = loop.run_until_complete(battery())

        assert artifacts.result_code == 0, artifacts.failures

    +-------------------+---------------------------+--------------------------------------------------------+
    | **Artifacts**                                                                                          |
    |                                                                                                        |
    +-------------------+---------------------------+--------------------------------------------------------+
    | key               | type                      | Notes                                                  |
    +===================+===========================+========================================================+
    | ``setup``         | dict                      | ``N``, ``n``, ``Q`` and ``z`` of the drawn chain.      |
    +-------------------+---------------------------+--------------------------------------------------------+
    | ``residuals``     | Dict[str, float]          | One entry per check.                                   |
    +-------------------+---------------------------+--------------------------------------------------------+
    | ``tolerances``    | Dict[str, float]          | The bound each residual was held to.                   |
    +-------------------+---------------------------+--------------------------------------------------------+
    | ``failures``      | List[str]                 | Checks over their bound or that hit degenerate input.  |
    +-------------------+---------------------------+--------------------------------------------------------+
    | ``max_residual``  | float                     | Largest residual of the operator identities.           |
    +-------------------+---------------------------+--------------------------------------------------------+
    """

    fixture_name = 'casorati_bethe'
    argument_prefix = 'bethe'

    @classmethod
    def on_visit_test_arguments(cls, arguments: casorati.Arguments) -> None:
        arguments.add_argument('--rank', type=int, help='Rank N of the auxiliary space (default 2).')
        arguments.add_argument('--sites', type=int, help='Number of evaluation points n (default 2).')
        arguments.add_argument('--seed', type=int, help='Seed for the drawn chain and test points.')
        arguments.add_argument('--tol', type=float, help='Bound for the operator identities (default 1e-9).')

    async def on_gather(self, args: casorati.Namespace) -> casorati.Artifacts:
        N = int(self.get_arg_covariant(args, 'rank', 2))
        n = int(self.get_arg_covariant(args, 'sites', 2))
        seed = int(self.get_arg_covariant(args, 'seed', 0))
        tol = float(self.get_arg_covariant(args, 'tol', 1e-9))

        rng = np.random.default_rng(seed)
        setup = _draw_setup(rng, N, n)
        x, y = _draw_point(rng), _draw_point(rng)
        checks = _identity_checks(setup, x, y, tol, rng)
        if N >= 2:
            checks += _pipeline_checks(setup, seed)
        checks += _form_checks(rng, N, n, seed, x)

        self.logger.info('running %d checks on %r', len(checks), setup)
        values = await self.gather_trials(lambda i: _run(checks[i][2]), len(checks))

        artifacts = casorati.Artifacts()
        residuals = {}  # type: typing.Dict[str, float]
        failures = []  # type: typing.List[str]
        for (name, bound, _), (value, degenerate) in zip(checks, values):
            residuals[name] = value
            if degenerate is not None:
                failures.append('{}: {}'.format(name, degenerate))
            elif not value <= bound:
                failures.append(name)
        for name in failures:
            self.logger.warning('check failed: %s (%s)', name, residuals[name.split(':')[0]])
        setattr(artifacts, 'setup', {'N': N, 'n': n, 'Q': setup.Q, 'z': setup.z})
        setattr(artifacts, 'residuals', residuals)
        setattr(artifacts, 'tolerances', {name: bound for name, bound, _ in checks})
        setattr(artifacts, 'failures', failures)
        setattr(artifacts, 'max_residual', max((residuals[name] for name, bound, _ in checks if bound == tol),
                                               default=0.0))
        artifacts.result_code = (0 if len(failures) == 0 else 1)
        return artifacts


def pytest_casorati_fixture_type() -> typing.Type['casorati.fixtures.Fixture']:
    return Fixture


# +---------------------------------------------------------------------------+
# | PRIVATE
# +---------------------------------------------------------------------------+

def _run(check: typing.Callable[[], float]) -> typing.Tuple[float, typing.Optional[str]]:
    try:
        return float(check()), None
    except casorati.DegenerateInputError as e:
        return math.inf, str(e)


def _draw_setup(rng: np.random.Generator, N: int, n: int) -> yangian.BetheSetup:
    Q = list(np.linspace(0.6, 1.8, N) * rng.uniform(0.9, 1.1, N))
    z = [complex(rng.normal(0, 1), rng.normal(0, 0.5)) for _ in range(n)]
    return yangian.BetheSetup(N, Q, z)


def _draw_point(rng: np.random.Generator) -> complex:
    return complex(rng.uniform(-1, 1), rng.choice([-1, 1]) * rng.uniform(2.5, 3.5))


def _identity_checks(setup: yangian.BetheSetup, x: complex, y: complex, tol: float,
                     rng: np.random.Generator) -> typing.List[Check]:
    N, n = setup.N, setup.n
    samples = [_draw_point(rng) for _ in range(3)]
    checks = [
        ('rtt', tol, lambda: yangian.check_rtt(setup, x, y)),
        ('commutativity', tol, lambda: yangian.check_commutativity(setup, x, y)),
        ('qdet', tol, lambda: yangian.check_qdet(setup, x)),
        ('central', tol, lambda: yangian.check_central(setup, x)),
        ('adjoint', tol, lambda: max(yangian.check_adjoint(setup, j, x) for j in range(N + 1))),
        ('antipode', tol, lambda: _antipode(setup, x)),
        ('pencil', tol, lambda: max(yangian.check_pencil(setup, k, samples) for k in range(1, N + 1))),
    ]  # type: typing.List[Check]
    if n >= 2:
        checks.append(('exchange', tol,
                       lambda: max(max(yangian.check_exchange(setup, i, x)) for i in range(n - 1))))
    return checks


def _antipode(setup: yangian.BetheSetup, x: complex) -> float:
    r = yangian.check_antipode(setup, x)
    return max([r.inverse_transpose, r.minor_duality] + r.transfer_duality)


def _pipeline_checks(setup: yangian.BetheSetup, seed: int) -> typing.List[Check]:
    def pipeline() -> float:
        results = yangian.bethe_pipeline(setup, seed)
        return max(max(r.roots_error, r.top_coefficient_error) for r in results)

    return [('pipeline', PIPELINE_TOL, pipeline)]


def _strip_roots(rng: np.random.Generator, n: int, h: complex, ratio: float) -> typing.List[complex]:
    roots = []  # type: typing.List[complex]
    if n >= 2:
        u = rng.uniform(-1, 1)
        roots += [complex(u, ratio * abs(h)), complex(u, -ratio * abs(h))]
    roots += [complex(rng.uniform(-2, 2), 0) for _ in range(n - len(roots))]
    return roots


def _form_checks(rng: np.random.Generator, N: int, n: int, seed: int, x: complex) -> typing.List[Check]:
    h = 0.5j
    mus = [math.log(q) for q in np.linspace(0.6, 1.8, N)]
    inside, k = yangian.rescaled_setup(mus, _strip_roots(rng, n, h, 0.4), h)
    points = [_draw_point(rng) for _ in range(10)]
    checks = [
        ('form_positive', -BOUNDARY_TOL, lambda: -yangian.form_k(inside, k).min_eigenvalue),
        ('form_covariance', 1e-9, lambda: max(yangian.check_form_covariance(inside, k, j, x) for j in range(N + 1))),
    ]  # type: typing.List[Check]
    if N >= 2:
        checks.append(('eigenvalue_symmetry', SYMMETRY_TOL,
                       lambda: yangian.eigenvalue_symmetry(inside, yangian.bethe_eigensystem(inside, seed), points)))
    if k > 0:
        edge, edge_pairs = yangian.rescaled_setup(mus, _strip_roots(rng, n, h, 1.0), h)
        checks.append(('form_edge', BOUNDARY_TOL, lambda: abs(yangian.form_k(edge, edge_pairs).min_eigenvalue)))
    return checks
