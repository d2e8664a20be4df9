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
The matrix form of the reality statement at half-step ``i``: the matrix ``Z`` with diagonal ``a`` and
off-diagonal entries ``1 / sin(lambda_i - lambda_j)`` has characteristic polynomial equal to the
monic discrete Wronskian of ``p_i(x) exp(lambda_i x)`` with
``p_i(x) = x - a_i - sum_{j != i} cot(lambda_i - lambda_j)``.

.. invisible-code-block: python

    import math
    from casorati.matrixz import ZData, build_z, verify_lemma_wron

.. code-block:: python

    data = ZData(a=[0.5, -1.0], lam=[0.0, math.pi / 2])

    assert build_z(data).tolist() == [[0.5, -1.0], [1.0, -1.0]]
    assert verify_lemma_wron(data) < 1e-10

"""
import logging
import math
import typing

import numpy as np

import casorati
from casorati.inverse import ACCEPT_TOL, DEDUP_TOL, damped_newton
from casorati.poly import CPoly
from casorati.quasiexp import MATRIX_Z_HALF_STEP, LogBase, QESpace, QuasiExp, monic_wronskian

COLLISION_TOL = 1e-9
EPSILONS = (1.0, 0.1, 0.01)

_logger = logging.getLogger(__name__)


class ZData:
    """
    Diagonal ``a`` and real angles ``lam`` of a ``Z`` matrix.

    :raises casorati.InputError: for mismatched lengths, no entries or a non-real angle.
    :raises casorati.DegenerateInputError: "λ collision mod π" if two angles differ by a multiple of pi.
    """

    def __init__(self, a: typing.Sequence[complex], lam: typing.Sequence[typing.Union[float, complex]]):
        if len(a) != len(lam):
            raise casorati.InputError('{} diagonal entries but {} angles'.format(len(a), len(lam)))
        if len(a) == 0:
            raise casorati.InputError('empty matrix')
        for v in lam:
            if abs(complex(v).imag) > COLLISION_TOL:
                raise casorati.InputError('angle {} is not real'.format(v))
        self._a = np.array([complex(v) for v in a], dtype=np.complex128)
        self._lam = np.array([complex(v).real for v in lam], dtype=np.float64)
        for i in range(self.N):
            for j in range(i + 1, self.N):
                turns = (self._lam[i] - self._lam[j]) / math.pi
                if abs(turns - round(turns)) * math.pi <= COLLISION_TOL:
                    raise casorati.DegenerateInputError('λ collision mod π')

    @property
    def N(self) -> int:
        return int(self._a.size)

    @property
    def a(self) -> np.ndarray:
        return self._a.copy()

    @property
    def lam(self) -> np.ndarray:
        return self._lam.copy()

    def with_a(self, a: typing.Sequence[complex]) -> 'ZData':
        return ZData(a, self._lam)

    def __repr__(self) -> str:
        return 'ZData(a={}, lam={})'.format(self._a.tolist(), self._lam.tolist())


def build_z(d: ZData) -> np.ndarray:
    """
    ``Z_ii = a_i`` and ``Z_ij = 1 / sin(lambda_i - lambda_j)`` for every ``i != j``.
    """
    lam = d.lam
    z = np.diag(d.a)
    for i in range(d.N):
        for j in range(d.N):
            if i != j:
                z[i, j] = 1.0 / math.sin(lam[i] - lam[j])
    return z


def space_from_z(d: ZData) -> QESpace:
    lam = d.lam
    members = []
    for i in range(d.N):
        shift = sum(1.0 / math.tan(lam[i] - lam[j]) for j in range(d.N) if j != i)
        members.append(QuasiExp(CPoly([-d.a[i] - shift, 1]), LogBase(lam[i])))
    return QESpace(members)


def charpoly(matrix: np.ndarray) -> CPoly:
    """
    ``det(x - M)`` in ascending coefficients.
    """
    if matrix.size == 0:
        return CPoly([1])
    return CPoly(np.poly(matrix)[::-1])


def verify_lemma_wron(d: ZData) -> float:
    """
    Largest coefficient distance between ``det(x - Z)`` and the monic discrete Wronskian of
    :func:`space_from_z` at half-step ``i``.
    """
    left = charpoly(build_z(d))
    right = monic_wronskian(space_from_z(d), MATRIX_Z_HALF_STEP).w
    residual = left.distance(right)
    _logger.debug('lemma residual %.3g for %r', residual, d)
    return residual


class TraceCheck(typing.NamedTuple):
    trace: complex
    charpoly_error: float
    roots_error: float


def trace_check(d: ZData) -> TraceCheck:
    """
    ``trace(Z)`` against minus the ``x^(N-1)`` coefficient of ``det(x - Z)`` and against the sum of the
    Wronskian roots.
    """
    z = build_z(d)
    trace = complex(np.trace(z))
    coefficient = charpoly(z).coeffs[d.N - 1]
    roots = monic_wronskian(space_from_z(d), MATRIX_Z_HALF_STEP).w.roots()
    return TraceCheck(trace, abs(trace + coefficient), abs(trace - complex(np.sum(roots))))


# +---------------------------------------------------------------------------+
# | INVERSE CONSTRUCTION
# +---------------------------------------------------------------------------+

class _DiagonalResidual:
    """
    Low coefficients of ``det(x - Z(a))`` minus the target's, with the exact Jacobian
    ``d/da_i det(x - Z) = -det(x - Z)`` with row and column ``i`` removed.
    """

    def __init__(self, lam: np.ndarray, target: CPoly):
        self._lam = lam
        self._n = lam.size
        self._target = target.padded(self._n + 1)[:self._n]
        self._off = build_z(ZData(np.zeros(self._n), lam))

    def _z(self, a: np.ndarray) -> np.ndarray:
        return self._off + np.diag(a)

    def __call__(self, a: np.ndarray) -> np.ndarray:
        return charpoly(self._z(a)).padded(self._n + 1)[:self._n] - self._target

    def jacobian(self, a: np.ndarray) -> np.ndarray:
        z = self._z(a)
        columns = []
        for i in range(self._n):
            keep = [k for k in range(self._n) if k != i]
            minor = charpoly(z[np.ix_(keep, keep)])
            columns.append(-minor.padded(self._n))
        return np.array(columns).T


def solve_diagonal(lam: typing.Sequence[float], target: CPoly, seed: typing.Any = 0,
                   restarts: int = 30) -> typing.List[np.ndarray]:
    """
    Every diagonal ``a`` found by damped Newton from random complex starts with ``det(x - Z) = target``.

    :raises casorati.InputError: if ``target`` is not of degree ``len(lam)``.
    """
    lam_array = ZData(np.zeros(len(lam)), lam).lam
    target = target.monic()
    if target.degree != lam_array.size:
        raise casorati.InputError('target degree {} for {} angles'.format(target.degree, lam_array.size))
    residual = _DiagonalResidual(lam_array, target)
    rng = np.random.default_rng(seed)
    scale = max(1.0, float(np.max(np.abs(target.roots()))))
    found = []  # type: typing.List[np.ndarray]
    for _ in range(restarts):
        start = scale * (rng.standard_normal(lam_array.size) + 1j * rng.standard_normal(lam_array.size))
        a, norm = damped_newton(residual, start)
        if not np.isfinite(norm) or norm > ACCEPT_TOL * max(1.0, target.scale):
            continue
        if any(np.max(np.abs(a - b)) < DEDUP_TOL for b in found):
            continue
        found.append(a)
    _logger.debug('%d diagonals from %d starts', len(found), restarts)
    return found


# +---------------------------------------------------------------------------+
# | REALITY CHECKS
# +---------------------------------------------------------------------------+

def theorem1a_check(d: ZData, tol: float = 1e-9) -> typing.Dict[str, typing.Any]:
    """
    Whether ``det(x - Z)`` is real with every root in ``|Im z| <= 1`` and, if so, whether every ``a_i`` is real.
    ``failure`` is set when the hypotheses hold and the conclusion does not.
    """
    cp = charpoly(build_z(d))
    roots = cp.roots()
    real_charpoly = cp.is_real(tol)
    max_root_imag = float(np.max(np.abs(roots.imag))) if roots.size else 0.0
    strip = max_root_imag <= 1 + tol
    max_a_imag = float(np.max(np.abs(d.a.imag)))
    hypotheses = real_charpoly and strip
    conclusion = max_a_imag < max(tol, 1e-7)
    return {
        'a': d.a.tolist(),
        'lam': d.lam.tolist(),
        'real_charpoly': real_charpoly,
        'max_root_imag': max_root_imag,
        'hypotheses': hypotheses,
        'max_a_imag': max_a_imag,
        'conclusion': conclusion,
        'failure': hypotheses and not conclusion
    }


def _draw_angles(rng: np.random.Generator, N: int) -> typing.List[float]:
    angles = []  # type: typing.List[float]
    while len(angles) < N:
        v = float(rng.uniform(-math.pi / 2, math.pi / 2))
        if all(0.05 < abs(v - w) < math.pi - 0.05 for w in angles):
            angles.append(v)
    return angles


def _draw_target(rng: np.random.Generator, N: int, imag_scale: float) -> typing.List[complex]:
    roots = []  # type: typing.List[complex]
    for _ in range(int(rng.integers(N // 2 + 1))):
        u = float(rng.uniform(-2, 2))
        v = float(rng.uniform(-1, 1)) * imag_scale
        roots.extend([complex(u, v), complex(u, -v)])
    roots.extend(complex(rng.uniform(-2, 2), 0) for _ in range(N - len(roots)))
    return roots


def falsification_trial(index: int, seed: int, N: int, restarts: int = 10,
                        strip_margin: float = 1e-3, tol: float = 1e-7) -> typing.Dict[str, typing.Any]:
    """
    Random real angles and a real target with roots strictly inside ``|Im z| < 1``; every diagonal solving the
    inverse construction is checked with :func:`theorem1a_check`.
    """
    rng = np.random.default_rng([seed, index])
    lam = _draw_angles(rng, N)
    roots = _draw_target(rng, N, 1.0 - strip_margin)
    solutions = solve_diagonal(lam, CPoly.from_roots(roots).trim(), seed=[seed, index, 1], restarts=restarts)
    checks = [theorem1a_check(ZData(a, lam), tol) for a in solutions]
    failures = [k for k, c in enumerate(checks) if c['failure']]
    for k in failures:
        _logger.warning('trial %d: non-real diagonal %s', index, checks[k]['a'])
    return {
        'index': index,
        'lam': lam,
        'roots': roots,
        'solutions': len(solutions),
        'hypotheses': sum(1 for c in checks if c['hypotheses']),
        'failures': failures
    }


def control_case(u: float = 0.0, v: float = 1.3, theta: float = math.pi / 2) -> typing.List[np.ndarray]:
    """
    Two angles ``theta`` apart and target roots ``u +- i v`` outside the strip. The diagonals are
    ``u +- sqrt(csc(theta)^2 - v^2)``, non-real whenever ``v > |csc(theta)|``.
    """
    target = CPoly.from_roots([complex(u, v), complex(u, -v)])
    return solve_diagonal([0.0, theta], target, seed=0, restarts=20)


# +---------------------------------------------------------------------------+
# | DEGENERATION
# +---------------------------------------------------------------------------+

def zero_limit(b: typing.Sequence[complex], mu: typing.Sequence[float]) -> np.ndarray:
    """
    ``Z_0`` with diagonal ``b`` and off-diagonal ``1 / (mu_i - mu_j)``.
    """
    n = len(b)
    z = np.diag(np.asarray(b, dtype=np.complex128))
    for i in range(n):
        for j in range(n):
            if i != j:
                z[i, j] = 1.0 / (mu[i] - mu[j])
    return z


def degeneration_trend(b: typing.Sequence[complex], mu: typing.Sequence[float],
                       epsilons: typing.Sequence[float] = EPSILONS) -> typing.List[typing.Tuple[float, float]]:
    """
    ``(epsilon, ||epsilon Z_epsilon - Z_0||)`` for ``a = b / epsilon`` and ``lambda = epsilon mu``.
    """
    reference = zero_limit(b, mu)
    trend = []
    for eps in epsilons:
        d = ZData([v / eps for v in b], [eps * m for m in mu])
        trend.append((float(eps), float(np.linalg.norm(eps * build_z(d) - reference, 2))))
    return trend
