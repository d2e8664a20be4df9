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
Dense realization of the XXX spin chain on ``W(z_1) x ... x W(z_n)`` with ``W = C^N``: the rational
R-matrix, the monodromy, quantum minors, the higher transfer matrices ``B_k`` and the identities they
satisfy, plus the Bethe eigensystem and the quasi-exponential kernel of each eigenvector's scalar
difference operator.

Operators act on the lexicographic basis ``v_(a_1) x ... x v_(a_n)`` with site 1 most significant,
so a site operator is a Kronecker product. ``E_ab`` maps ``v_b`` to ``v_a``. Sites and matrix indices
are 0-based throughout.

.. invisible-code-block: python

    import numpy as np
    from casorati.yangian import BetheSetup, transfer_B

.. code-block:: python

    setup = BetheSetup(N=2, Q=[1.5, 0.5], z=[0.3, -0.7])
    x = 1.25 + 0.5j

    # the top transfer matrix is the scalar b_Q(x; z)
    top = transfer_B(setup, 2, x).matrix

    assert np.allclose(top, setup.b_q(x) * np.eye(4))

"""
import functools
import itertools
import logging
import typing

import numpy as np
import scipy.linalg

import casorati
from casorati.poly import CPoly, RationalFn, fit_columns, match_roots
from casorati.quasiexp import BETHE_HALF_STEP, LogBase, QESpace, QuasiExp, echelon_polys, group_bases, \
    monic_wronskian

MAX_DIMENSION = 4096
POLE_TOL = 1e-12
CLUSTER_GAP = 1e-7
MAX_RETRIES = 5

_logger = logging.getLogger(__name__)


class BetheSetup:
    """
    Rank ``N``, twist ``Q = diag(Q_1..Q_N)`` and evaluation points ``z_1..z_n``.

    :raises casorati.InputError: for ``N < 1``, no sites, a zero twist entry or more than 4096 states.
    """

    def __init__(self, N: int, Q: typing.Sequence[complex], z: typing.Sequence[complex]):
        if N < 1:
            raise casorati.InputError('rank must be positive, got {}'.format(N))
        if len(Q) != N:
            raise casorati.InputError('{} twist entries for rank {}'.format(len(Q), N))
        if any(q == 0 for q in Q):
            raise casorati.InputError('zero twist entry')
        if len(z) < 1:
            raise casorati.InputError('at least one site is needed')
        if N ** len(z) > MAX_DIMENSION:
            raise casorati.InputError('{}^{} states exceed {}'.format(N, len(z), MAX_DIMENSION))
        self._N = int(N)
        self._Q = [complex(q) for q in Q]
        self._z = [complex(v) for v in z]

    @property
    def N(self) -> int:
        return self._N

    @property
    def n(self) -> int:
        return len(self._z)

    @property
    def Q(self) -> typing.List[complex]:
        return list(self._Q)

    @property
    def z(self) -> typing.List[complex]:
        return list(self._z)

    @property
    def dimension(self) -> int:
        return self._N ** self.n

    def with_q(self, Q: typing.Sequence[complex]) -> 'BetheSetup':
        return BetheSetup(self._N, Q, self._z)

    def with_z(self, z: typing.Sequence[complex]) -> 'BetheSetup':
        return BetheSetup(self._N, self._Q, z)

    def b(self, x: complex) -> complex:
        """
        ``prod (x - z_i + 1) / (x - z_i)``, the quantum determinant on ``W(z)``.
        """
        result = 1 + 0j
        for zi in self._z:
            u = x - zi
            _check_pole(u)
            result *= (u + 1) / u
        return result

    def b_q(self, x: complex) -> complex:
        """
        ``Q_1 ... Q_N * b(x)``.
        """
        return complex(np.prod(self._Q)) * self.b(x)

    def pole_denominator(self, k: int) -> CPoly:
        """
        ``prod_{s<k} prod_i (x - s - z_i)``, a common denominator of ``B_k``.
        """
        return CPoly.from_roots([zi + s for s in range(k) for zi in self._z])

    def __repr__(self) -> str:
        return 'BetheSetup(N={}, Q={}, z={})'.format(self._N, self._Q, self._z)


class TensorOp:
    """
    Dense operator on ``W^(x sites)``.
    """

    def __init__(self, N: int, sites: int, matrix: np.ndarray):
        matrix = np.asarray(matrix, dtype=np.complex128)
        if matrix.shape != (N ** sites, N ** sites):
            raise casorati.InputError('shape {} does not match {} sites of dimension {}'
                                      .format(matrix.shape, sites, N))
        self._N = N
        self._sites = sites
        self._matrix = matrix

    @classmethod
    def identity(cls, N: int, sites: int) -> 'TensorOp':
        return cls(N, sites, np.eye(N ** sites, dtype=np.complex128))

    @property
    def N(self) -> int:
        return self._N

    @property
    def sites(self) -> int:
        return self._sites

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    def __matmul__(self, other: 'TensorOp') -> 'TensorOp':
        return TensorOp(self._N, self._sites, self._matrix @ other._matrix)

    def __add__(self, other: 'TensorOp') -> 'TensorOp':
        return TensorOp(self._N, self._sites, self._matrix + other._matrix)

    def __sub__(self, other: 'TensorOp') -> 'TensorOp':
        return TensorOp(self._N, self._sites, self._matrix - other._matrix)

    def __mul__(self, scalar: complex) -> 'TensorOp':
        return TensorOp(self._N, self._sites, self._matrix * scalar)

    __rmul__ = __mul__

    def dagger(self) -> 'TensorOp':
        return TensorOp(self._N, self._sites, self._matrix.conj().T)

    def transpose(self) -> 'TensorOp':
        return TensorOp(self._N, self._sites, self._matrix.T)

    def norm(self) -> float:
        """
        Spectral norm.
        """
        return float(np.linalg.norm(self._matrix, 2))

    def __repr__(self) -> str:
        return 'TensorOp(N={}, sites={})'.format(self._N, self._sites)


def relative_residual(left: np.ndarray, right: np.ndarray) -> float:
    """
    ``||left - right|| / max(1, ||left||, ||right||)`` in the spectral norm.
    """
    scale = max(1.0, float(np.linalg.norm(left, 2)), float(np.linalg.norm(right, 2)))
    return float(np.linalg.norm(left - right, 2)) / scale


# +---------------------------------------------------------------------------+
# | PRIVATE
# +---------------------------------------------------------------------------+

def _check_pole(u: complex) -> None:
    if abs(u) <= POLE_TOL:
        raise casorati.DegenerateInputError('evaluation point at a pole')


def _unit(N: int, a: int, b: int) -> np.ndarray:
    e = np.zeros((N, N), dtype=np.complex128)
    e[a, b] = 1
    return e


@functools.lru_cache(maxsize=None)
def site_unit(N: int, n: int, k: int, a: int, b: int) -> np.ndarray:
    """
    ``E_ab`` acting on site ``k`` of ``n``.
    """
    factors = [np.eye(N, dtype=np.complex128)] * n
    factors[k] = _unit(N, a, b)
    out = functools.reduce(np.kron, factors)
    out.setflags(write=False)
    return out


def _parity(perm: typing.Sequence[int]) -> int:
    inversions = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inversions % 2 else 1


def _sorted_with_sign(indices: typing.Sequence[int]) -> typing.Tuple[typing.List[int], int]:
    if len(set(indices)) != len(indices):
        return list(indices), 0
    order = sorted(range(len(indices)), key=lambda i: indices[i])
    return [indices[i] for i in order], _parity(order)


# +---------------------------------------------------------------------------+
# | R-MATRICES
# +---------------------------------------------------------------------------+

def flip(N: int) -> TensorOp:
    """
    ``P = sum E_ab x E_ba`` on ``W x W``.
    """
    p = sum(np.kron(_unit(N, a, b), _unit(N, b, a)) for a in range(N) for b in range(N))
    return TensorOp(N, 2, p)


def site_flip(N: int, n: int, i: int, j: int) -> np.ndarray:
    """
    ``P_(ij)`` swapping sites ``i`` and ``j`` of ``n``.
    """
    return sum(site_unit(N, n, i, a, b) @ site_unit(N, n, j, b, a) for a in range(N) for b in range(N))


def r_matrix(N: int, x: complex) -> TensorOp:
    """
    ``R(x) = 1 + P / x``.

    :raises casorati.DegenerateInputError: at the pole ``x = 0``.
    """
    _check_pole(x)
    return TensorOp.identity(N, 2) + flip(N) * (1 / x)


def r_check(N: int, x: complex) -> TensorOp:
    """
    ``Ř(x) = x P + 1``.
    """
    return flip(N) * x + TensorOp.identity(N, 2)


def site_r_check(N: int, n: int, i: int, x: complex) -> np.ndarray:
    """
    ``Ř_(i,i+1)(x)`` on ``n`` sites.
    """
    return x * site_flip(N, n, i, i + 1) + np.eye(N ** n, dtype=np.complex128)


# +---------------------------------------------------------------------------+
# | MONODROMY AND MINORS
# +---------------------------------------------------------------------------+

def monodromy_blocks(setup: BetheSetup, x: complex) -> np.ndarray:
    """
    Auxiliary blocks ``T_ab(x; z)`` of ``T = R_(0n)(x - z_n) ... R_(01)(x - z_1)`` as an array of shape
    ``(N, N, D, D)``.
    """
    N, n, D = setup.N, setup.n, setup.dimension
    blocks = np.zeros((N, N, D, D), dtype=np.complex128)
    for a in range(N):
        blocks[a, a] = np.eye(D)
    for k, zk in enumerate(setup.z):
        u = x - zk
        _check_pole(u)
        updated = blocks.copy()
        for a in range(N):
            for c in range(N):
                e = site_unit(N, n, k, c, a) / u
                for b in range(N):
                    updated[a, b] += e @ blocks[c, b]
        blocks = updated
    return blocks


def monodromy(setup: BetheSetup, x: complex) -> TensorOp:
    """
    ``T(x; z)`` on ``W^(x (n+1))`` with the auxiliary space first.

    .. invisible-code-block: python

        import numpy as np
        from casorati.yangian import BetheSetup, monodromy

    .. code-block:: python

        setup = BetheSetup(N=2, Q=[1, 1], z=[0.4])
        far = monodromy(setup, 1e8).matrix

        assert np.allclose(far, np.eye(4), atol=1e-6)

    """
    blocks = monodromy_blocks(setup, x)
    N, D = setup.N, setup.dimension
    return TensorOp(N, setup.n + 1, blocks.transpose(0, 2, 1, 3).reshape(N * D, N * D))


def _minor(blocks_by_shift: typing.Sequence[np.ndarray], rows: typing.Sequence[int],
           cols: typing.Sequence[int]) -> np.ndarray:
    k = len(rows)
    D = blocks_by_shift[0].shape[-1] if blocks_by_shift else 0
    out = np.zeros((D, D), dtype=np.complex128)
    for perm in itertools.permutations(range(k)):
        term = blocks_by_shift[0][rows[0], cols[perm[0]]]
        for m in range(1, k):
            term = term @ blocks_by_shift[m][rows[m], cols[perm[m]]]
        out += _parity(perm) * term
    return out


def _shifted_blocks(setup: BetheSetup, x: complex, k: int) -> typing.List[np.ndarray]:
    return [monodromy_blocks(setup, x - m) for m in range(k)]


def t_minor(setup: BetheSetup, rows: typing.Sequence[int], cols: typing.Sequence[int], x: complex,
            reorder: bool = True) -> TensorOp:
    """
    Quantum minor

    ``sum_sigma sgn(sigma) T_(r_1 c_sigma(1))(x) T_(r_2 c_sigma(2))(x - 1) ... T_(r_k c_sigma(k))(x - k + 1)``

    With ``reorder`` (the default) index tuples that are not increasing are sorted first and the sign of
    the sorting permutation applied; a repeated index gives zero. Without it the sum is evaluated literally.

    :raises casorati.InputError: for tuples of different lengths or longer than ``N``.
    :raises casorati.DegenerateInputError: if a shifted point hits a pole.
    """
    k = len(rows)
    if len(cols) != k or k > setup.N:
        raise casorati.InputError('minor of {} rows and {} columns for rank {}'.format(k, len(cols), setup.N))
    if any(not 0 <= i < setup.N for i in list(rows) + list(cols)):
        raise casorati.InputError('minor index out of range')
    if k == 0:
        return TensorOp.identity(setup.N, setup.n)
    sign = 1
    if reorder:
        rows, row_sign = _sorted_with_sign(rows)
        cols, col_sign = _sorted_with_sign(cols)
        sign = row_sign * col_sign
        if sign == 0:
            return TensorOp(setup.N, setup.n, np.zeros((setup.dimension, setup.dimension)))
    return TensorOp(setup.N, setup.n, sign * _minor(_shifted_blocks(setup, x, k), rows, cols))


def qdet(setup: BetheSetup, x: complex) -> TensorOp:
    """
    The quantum determinant, equal to ``b(x; z)`` times the identity.
    """
    return t_minor(setup, range(setup.N), range(setup.N), x)


def _transfer(setup: BetheSetup, k: int, blocks_by_shift: typing.Sequence[np.ndarray]) -> np.ndarray:
    D = setup.dimension
    if k == 0:
        return np.eye(D, dtype=np.complex128)
    out = np.zeros((D, D), dtype=np.complex128)
    for subset in itertools.combinations(range(setup.N), k):
        weight = complex(np.prod([setup.Q[i] for i in subset]))
        out += weight * _minor(blocks_by_shift, subset, subset)
    return out


def transfer_B(setup: BetheSetup, k: int, x: complex) -> TensorOp:
    """
    Higher transfer matrix ``B_k(x) = sum_{|I| = k} Q_I T^k_II(x)``; ``B_0`` is the identity.
    """
    if not 0 <= k <= setup.N:
        raise casorati.InputError('transfer matrix index {} outside 0..{}'.format(k, setup.N))
    return TensorOp(setup.N, setup.n, _transfer(setup, k, _shifted_blocks(setup, x, k)))


def all_transfers(setup: BetheSetup, x: complex) -> typing.List[np.ndarray]:
    """
    ``[B_0(x), ..., B_N(x)]`` sharing one set of monodromy evaluations.
    """
    blocks = _shifted_blocks(setup, x, setup.N)
    return [_transfer(setup, k, blocks[:k]) for k in range(setup.N + 1)]


class OpPencil:
    """
    ``B_k(x) = num(x) / d(x)`` with ``d`` from :meth:`BetheSetup.pole_denominator` and a matrix
    polynomial numerator of degree at most ``k n`` recovered by sampling.
    """

    def __init__(self, setup: BetheSetup, k: int, coefficients: np.ndarray, den: CPoly, residual: float):
        self._setup = setup
        self._k = k
        self._coefficients = coefficients
        self._den = den
        self._residual = residual

    @property
    def k(self) -> int:
        return self._k

    @property
    def den(self) -> CPoly:
        return self._den

    @property
    def residual(self) -> float:
        """
        Largest misfit of the numerator fit at the sampling nodes.
        """
        return self._residual

    def numerator(self, i: int, j: int) -> CPoly:
        return CPoly(self._coefficients[:, i, j])

    def __call__(self, x: complex) -> TensorOp:
        powers = np.array([x ** p for p in range(self._coefficients.shape[0])], dtype=np.complex128)
        num = np.tensordot(powers, self._coefficients, axes=1)
        return TensorOp(self._setup.N, self._setup.n, num / self._den(x))


def _sampling_circle(setup: BetheSetup, k: int, count: int) -> np.ndarray:
    poles = np.array([zi + s for s in range(max(k, 1)) for zi in setup.z], dtype=np.complex128)
    center = complex(np.mean(poles))
    radius = 1.0 + float(np.max(np.abs(poles - center)))
    return center + radius * np.exp(2j * np.pi * (np.arange(count) + 0.5) / count)


def pencil_B(setup: BetheSetup, k: int) -> OpPencil:
    """
    :func:`transfer_B` as a rational function of ``x``.
    """
    if not 0 <= k <= setup.N:
        raise casorati.InputError('transfer matrix index {} outside 0..{}'.format(k, setup.N))
    den = setup.pole_denominator(k)
    bound = k * setup.n
    nodes = _sampling_circle(setup, k, 2 * (bound + 1))
    D = setup.dimension
    samples = np.array([transfer_B(setup, k, x).matrix.reshape(D * D) * den(x) for x in nodes])
    coefficients, residual = fit_columns(nodes, samples, bound)
    return OpPencil(setup, k, coefficients.reshape(bound + 1, D, D), den, residual)


# +---------------------------------------------------------------------------+
# | IDENTITIES
# +---------------------------------------------------------------------------+

def check_rtt(setup: BetheSetup, x: complex, y: complex) -> float:
    """
    Relative residual of ``R_12(x - y) T_1(x) T_2(y) = T_2(y) T_1(x) R_12(x - y)`` on ``W x W x W(z)``.
    """
    N, D = setup.N, setup.dimension
    tx = monodromy_blocks(setup, x)
    ty = monodromy_blocks(setup, y)
    eye = np.eye(N, dtype=np.complex128)
    t1 = sum(np.kron(np.kron(_unit(N, a, b), eye), tx[a, b]) for a in range(N) for b in range(N))
    t2 = sum(np.kron(np.kron(eye, _unit(N, a, b)), ty[a, b]) for a in range(N) for b in range(N))
    r12 = np.kron(r_matrix(N, x - y).matrix, np.eye(D))
    return relative_residual(r12 @ t1 @ t2, t2 @ t1 @ r12)


def check_commutativity(setup: BetheSetup, x: complex, y: complex) -> float:
    """
    Largest relative norm of ``[B_j(x), B_k(y)]`` over ``1 <= j, k <= N``.
    """
    bx = all_transfers(setup, x)
    by = all_transfers(setup, y)
    worst = 0.0
    for j in range(1, setup.N + 1):
        for k in range(1, setup.N + 1):
            worst = max(worst, relative_residual(bx[j] @ by[k], by[k] @ bx[j]))
    return worst


def check_qdet(setup: BetheSetup, x: complex) -> float:
    """
    Residual of ``qdet(x) = b(x; z) Id``.
    """
    return relative_residual(qdet(setup, x).matrix, setup.b(x) * np.eye(setup.dimension))


def check_central(setup: BetheSetup, x: complex) -> float:
    """
    Residual of ``B_N(x) = b_Q(x; z) Id``.
    """
    return relative_residual(transfer_B(setup, setup.N, x).matrix, setup.b_q(x) * np.eye(setup.dimension))


def check_pencil(setup: BetheSetup, k: int, points: typing.Sequence[complex]) -> float:
    """
    Largest relative distance between :func:`pencil_B` and :func:`transfer_B` at ``points``.
    """
    pencil = pencil_B(setup, k)
    return max(relative_residual(pencil(x).matrix, transfer_B(setup, k, x).matrix) for x in points)


def check_exchange(setup: BetheSetup, i: int, x: complex) -> typing.List[float]:
    """
    Residual of ``Ř_(i,i+1)(z_i - z_(i+1)) B_j(x; z) = B_j(x; s z) Ř_(i,i+1)(z_i - z_(i+1))`` for
    ``j = 0..N`` where ``s`` swaps ``z_i`` and ``z_(i+1)``.
    """
    if not 0 <= i < setup.n - 1:
        raise casorati.InputError('exchange site {} outside 0..{}'.format(i, setup.n - 2))
    z = setup.z
    swapped = list(z)
    swapped[i], swapped[i + 1] = z[i + 1], z[i]
    rc = site_r_check(setup.N, setup.n, i, z[i] - z[i + 1])
    before = all_transfers(setup, x)
    after = all_transfers(setup.with_z(swapped), x)
    return [relative_residual(rc @ b, a @ rc) for b, a in zip(before, after)]


def _adjoint_partner(setup: BetheSetup) -> BetheSetup:
    return BetheSetup(setup.N, [1 / q.conjugate() for q in setup.Q], [-v.conjugate() for v in setup.z])


def check_adjoint(setup: BetheSetup, j: int, x: complex) -> float:
    """
    Residual of ``B_j(x; z) = b_Q(x; z) * B_(N-j)(-conj(x) - 1; -conj(z))^dagger`` where the right side uses
    the twist ``1 / conj(Q)``. Equivalently ``<B_j v, w> = b_Q <v, B'_(N-j) w>`` for the standard form,
    linear in its first argument.
    """
    if not 0 <= j <= setup.N:
        raise casorati.InputError('transfer matrix index {} outside 0..{}'.format(j, setup.N))
    lhs = transfer_B(setup, j, x).matrix
    partner = transfer_B(_adjoint_partner(setup), setup.N - j, -x.conjugate() - 1).matrix
    return relative_residual(lhs, setup.b_q(x) * partner.conj().T)


def check_form_covariance(setup: BetheSetup, k: int, j: int, x: complex) -> float:
    """
    Residual of ``G B_j(x) = b_Q(x) B_(N-j)(-conj(x) - 1)^dagger G`` for the Gram matrix ``G`` of
    :func:`form_k`. Holds for unimodular twists and ``z`` that is mapped to itself by ``v -> -conj(v)``
    with the first ``2k`` entries forming swapped pairs.
    """
    gram = form_k(setup, k).gram
    lhs = gram @ transfer_B(setup, j, x).matrix
    partner = transfer_B(setup, setup.N - j, -x.conjugate() - 1).matrix
    return relative_residual(lhs, setup.b_q(x) * partner.conj().T @ gram)


class AntipodeResiduals(typing.NamedTuple):
    inverse_transpose: float
    minor_duality: float
    transfer_duality: typing.List[float]


def check_antipode(setup: BetheSetup, x: complex) -> AntipodeResiduals:
    """
    Dense checks of the antipode identities:

    * the full transpose of ``T(x; z)^-1`` is ``T(-x; -z) b(x - 1; z) / b(x; z)``;
    * ``T^k_II(x; z) = b(x; z) T^(N-k)_I'I'(-x - 1; -z)^T`` for every index set ``I`` with complement ``I'``;
    * ``B_k(x; z) = b_Q(x; z) B_(N-k)(-x - 1; -z)^T`` with the twist ``1 / Q`` on the right, for ``k = 0..N``.

    The transposes on the right are full transposes in the quantum space.
    """
    N = setup.N
    mirrored = BetheSetup(N, setup.Q, [-v for v in setup.z])
    t = monodromy(setup, x).matrix
    t_mirror = monodromy(mirrored, -x).matrix
    ratio = setup.b(x - 1) / setup.b(x)
    inverse_transpose = relative_residual(scipy.linalg.inv(t).T, ratio * t_mirror)

    b = setup.b(x)
    here = _shifted_blocks(setup, x, N)
    there = _shifted_blocks(mirrored, -x - 1, N)
    minor_duality = 0.0
    for k in range(1, N):
        for subset in itertools.combinations(range(N), k):
            complement = [i for i in range(N) if i not in subset]
            lhs = _minor(here[:k], subset, subset)
            rhs = _minor(there[:N - k], complement, complement)
            minor_duality = max(minor_duality, relative_residual(lhs, b * rhs.T))

    inverted = BetheSetup(N, [1 / q for q in setup.Q], mirrored.z)
    b_q = setup.b_q(x)
    transfer_duality = []
    for k in range(N + 1):
        lhs = _transfer(setup, k, here[:k])
        rhs = _transfer(inverted, N - k, there[:N - k])
        transfer_duality.append(relative_residual(lhs, b_q * rhs.T))
    _logger.debug('antipode residuals %.3g %.3g %s', inverse_transpose, minor_duality, transfer_duality)
    return AntipodeResiduals(inverse_transpose, minor_duality, transfer_duality)


# +---------------------------------------------------------------------------+
# | FORMS
# +---------------------------------------------------------------------------+

class FormK:
    """
    Gram matrix of ``<v, w>_k = <v, Ř_(0,1)(z_0 - z_1) ... Ř_(2k-2,2k-1)(z_(2k-2) - z_(2k-1)) w>``.
    """

    def __init__(self, gram: np.ndarray, differences: typing.Sequence[float]):
        self._gram = gram
        self._differences = list(differences)

    @property
    def gram(self) -> np.ndarray:
        return self._gram

    @property
    def differences(self) -> typing.List[float]:
        return list(self._differences)

    @property
    def hermitian_residual(self) -> float:
        return relative_residual(self._gram, self._gram.conj().T)

    @property
    def eigenvalues(self) -> np.ndarray:
        return scipy.linalg.eigvalsh(self._gram)

    @property
    def min_eigenvalue(self) -> float:
        return float(self.eigenvalues[0])

    def is_positive_definite(self, tol: float = 1e-12) -> bool:
        return self.min_eigenvalue > tol


def form_k(setup: BetheSetup, k: int, tol: float = 1e-9) -> FormK:
    """
    The pairing twisted by the first ``k`` site pairs. Each pair difference must be real; the form is
    positive definite iff every difference has magnitude below 1.

    :raises casorati.InputError: if ``2k`` exceeds the site count or a pair difference is not real.
    """
    if k < 0 or 2 * k > setup.n:
        raise casorati.InputError('{} pairs need {} sites, have {}'.format(k, 2 * k, setup.n))
    z = setup.z
    gram = np.eye(setup.dimension, dtype=np.complex128)
    differences = []
    for i in range(k):
        t = z[2 * i] - z[2 * i + 1]
        if abs(t.imag) > tol * max(1.0, abs(t)):
            raise casorati.InputError('pair {} has non-real difference {}'.format(i, t))
        differences.append(t.real)
        gram = gram @ site_r_check(setup.N, setup.n, 2 * i, t.real)
    return FormK(gram, differences)


def rescaled_setup(mus: typing.Sequence[complex], z: typing.Sequence[complex], h: complex,
                   tol: float = 1e-9) -> typing.Tuple[BetheSetup, int]:
    """
    The chain matching a space with base logarithms ``mus`` and Wronskian roots ``z`` at half-step ``h``:
    twist ``exp(2 h mu)`` and points ``z / (2h)``. Conjugate root pairs are moved to the front as adjacent
    pairs so that their rescaled differences are real.

    :returns: ``(setup, number of pairs)``
    """
    if h == 0:
        raise casorati.InputError('zero step')
    remaining = [complex(v) for v in z]
    ordered = []  # type: typing.List[complex]
    pairs = 0
    while remaining:
        v = remaining.pop(0)
        if abs(v.imag) <= tol:
            continue
        partner = min(range(len(remaining)), key=lambda i: abs(remaining[i] - v.conjugate()), default=None)
        if partner is None or abs(remaining[partner] - v.conjugate()) > tol * max(1.0, abs(v)):
            raise casorati.InputError('root {} has no conjugate partner'.format(v))
        w = remaining.pop(partner)
        ordered.extend([v, w] if v.imag > 0 else [w, v])
        pairs += 1
    ordered.extend(v for v in z if abs(complex(v).imag) <= tol)
    twist = [complex(np.exp(2 * h * mu)) for mu in mus]
    return BetheSetup(len(twist), twist, [v / (2 * h) for v in ordered]), pairs


# +---------------------------------------------------------------------------+
# | BETHE EIGENSYSTEM
# +---------------------------------------------------------------------------+

class DiffOpScalar:
    """
    ``(D f)(x) = sum_{j=0..N} (-1)^j B_j(x) f(x - j)`` with ``B_0 = 1``.

    :param coeffs: ``B_1 .. B_N`` as rational functions.
    """

    def __init__(self, coeffs: typing.Sequence[RationalFn]):
        if len(coeffs) == 0:
            raise casorati.InputError('an operator needs at least one coefficient')
        self._coeffs = list(coeffs)

    @property
    def order(self) -> int:
        return len(self._coeffs)

    @property
    def coeffs(self) -> typing.List[RationalFn]:
        return list(self._coeffs)

    def coefficient(self, j: int, x: complex) -> complex:
        if j == 0:
            return 1 + 0j
        return complex(self._coeffs[j - 1](x))

    def apply(self, f: typing.Callable[[complex], complex], x: complex) -> complex:
        return sum((-1) ** j * self.coefficient(j, x) * f(x - j) for j in range(self.order + 1))

    def apply_scaled(self, member: QuasiExp, x: complex) -> complex:
        """
        ``(D f)(x) / exp(mu x)`` for ``f = p exp(mu x)``.
        """
        mu = member.base.mu
        return sum((-1) ** j * self.coefficient(j, x) * np.exp(-mu * j) * member.p(x - j)
                   for j in range(self.order + 1))


class BetheEigen(typing.NamedTuple):
    vector: np.ndarray
    operator: DiffOpScalar
    fit_residual: float


def _combination(setup: BetheSetup, rng: np.random.Generator, points: np.ndarray) -> np.ndarray:
    D = setup.dimension
    m = np.zeros((D, D), dtype=np.complex128)
    for x in points:
        transfers = all_transfers(setup, x)
        for j in range(1, max(setup.N, 2)):
            m += complex(rng.standard_normal(), rng.standard_normal()) * transfers[j]
    return m


def _min_gap(values: np.ndarray) -> float:
    if values.size < 2:
        return np.inf
    gaps = np.abs(values[:, None] - values[None, :])
    np.fill_diagonal(gaps, np.inf)
    return float(np.min(gaps))


def bethe_eigensystem(setup: BetheSetup, seed: typing.Any = 0) -> typing.List[BetheEigen]:
    """
    Common eigenvectors of the commuting transfer matrices and, for each, the eigenvalue functions
    ``B_j(x)`` as rational functions with denominators :meth:`BetheSetup.pole_denominator`.

    The eigenvectors come from one random combination of transfer matrices at random points; a combination
    with eigenvalues closer than 1e-7 is redrawn up to five times.

    :raises casorati.DegenerateInputError: for repeated points or a spectrum that stays clustered.
    """
    z = setup.z
    for i in range(len(z)):
        for j in range(i + 1, len(z)):
            if abs(z[i] - z[j]) <= 1e-9 * max(1.0, abs(z[i])):
                raise casorati.DegenerateInputError('repeated evaluation points')
    rng = np.random.default_rng(seed)
    nodes = _sampling_circle(setup, setup.N, 2 * (setup.N * setup.n + 1))
    vectors = None  # type: typing.Optional[np.ndarray]
    for attempt in range(MAX_RETRIES):
        points = nodes[rng.choice(nodes.size, size=2, replace=False)] * (1 + 0.1 * rng.random())
        combination = _combination(setup, rng, points)
        values, candidate = scipy.linalg.eig(combination)
        scale = max(1.0, float(np.max(np.abs(values))))
        if _min_gap(values) > CLUSTER_GAP * scale:
            vectors = candidate
            break
        _logger.debug('attempt %d: clustered spectrum (gap %.3g), redrawing', attempt, _min_gap(values))
    if vectors is None:
        raise casorati.DegenerateInputError('non-generic setup, perturb z')

    vectors = vectors / np.linalg.norm(vectors, axis=0)
    samples = np.zeros((setup.N, nodes.size, vectors.shape[1]), dtype=np.complex128)
    for m, x in enumerate(nodes):
        transfers = all_transfers(setup, x)
        for j in range(1, setup.N + 1):
            samples[j - 1, m] = np.einsum('ij,ij->j', vectors.conj(), transfers[j] @ vectors)

    denominators = [setup.pole_denominator(j) for j in range(1, setup.N + 1)]
    fitted = []
    residuals = []
    for j in range(1, setup.N + 1):
        den_values = np.array([denominators[j - 1](x) for x in nodes])
        coefficients, residual = fit_columns(nodes, samples[j - 1] * den_values[:, None], j * setup.n)
        fitted.append(coefficients)
        residuals.append(residual)

    result = []
    for v in range(vectors.shape[1]):
        ops = [RationalFn(CPoly(fitted[j][:, v]), denominators[j]) for j in range(setup.N)]
        result.append(BetheEigen(vectors[:, v], DiffOpScalar(ops), max(residuals)))
    _logger.info('%d eigenvectors for %r', len(result), setup)
    return result


def qe_kernel(operator: DiffOpScalar, mus: typing.Sequence[complex], degree_bound: int,
              rcond: float = 1e-9) -> QESpace:
    """
    Quasi-exponential solutions ``p(x) exp(mu x)`` of ``D f = 0`` with ``deg p <= degree_bound`` for the listed
    base logarithms. Denominators are cleared and each distinct base gives a linear system on the
    coefficients of ``p``. The result is expected to have one member per listed base.

    .. invisible-code-block: python

        from casorati.poly import CPoly, RationalFn
        from casorati.yangian import DiffOpScalar, qe_kernel

    .. code-block:: python

        difference = DiffOpScalar([RationalFn(CPoly([1]), CPoly([1]))])
        kernel = qe_kernel(difference, [0], 3)

        assert kernel.members[0].p.isclose(CPoly([1]))

    :raises casorati.DegenerateInputError: "non-generic eigenvector or degree bound too low" if the kernel
        dimension differs from ``len(mus)``.
    """
    if degree_bound < 0:
        raise casorati.InputError('negative degree bound')
    coeffs = operator.coeffs
    common = coeffs[-1].den
    for c in coeffs[:-1]:
        _, remainder = common.divmod(c.den)
        if remainder.trim(1e-9).scale > 1e-9 * max(1.0, common.scale):
            common = common * c.den
    # numerator of (-1)^j B_j after multiplying by the common denominator, j = 0..N
    cleared = [common] + [((-1) ** (j + 1)) * c.num * common.divmod(c.den)[0] for j, c in enumerate(coeffs)]

    members = []  # type: typing.List[QuasiExp]
    for base, indices in group_bases([LogBase(mu) for mu in mus]):
        length = common.degree + max(c.num.degree for c in coeffs) + degree_bound + 2
        columns = []
        for k in range(degree_bound + 1):
            total = CPoly([])
            for j, term in enumerate(cleared):
                total = total + term * CPoly.monomial(k).compose_shift(-j) * complex(np.exp(-base.mu * j))
            columns.append(total.padded(length))
        kernel = scipy.linalg.null_space(np.array(columns).T, rcond=rcond)
        polys = echelon_polys([CPoly(kernel[:, i]) for i in range(kernel.shape[1])]) if kernel.size else []
        members.extend(QuasiExp(p, base) for p in polys)
        if len(polys) != len(indices):
            raise casorati.DegenerateInputError('non-generic eigenvector or degree bound too low')
    return QESpace(members)


def kernel_residual(operator: DiffOpScalar, space: QESpace, points: typing.Sequence[complex]) -> float:
    """
    Largest ``|(D f)(x)| / exp(mu x)`` over members and points, relative to the member's size there.
    """
    worst = 0.0
    for m in space.members:
        for x in points:
            scale = max(1.0, abs(m.p(x)))
            worst = max(worst, abs(operator.apply_scaled(m, x)) / scale)
    return worst


class PipelineResult(typing.NamedTuple):
    space: QESpace
    roots_error: float
    top_coefficient_error: float


def bethe_pipeline(setup: BetheSetup, seed: typing.Any = 0) -> typing.List[PipelineResult]:
    """
    For every Bethe eigenvector: the kernel of its difference operator and how far the roots of that
    kernel's monic discrete Wronskian at half-step 1/2 are from ``z_i - (N + 1)/2``. Also reports how far
    the top eigenvalue function is from ``b_Q``.
    """
    mus = [complex(np.log(complex(q))) for q in setup.Q]
    expected = [v - (setup.N + 1) / 2 for v in setup.z]
    samples = _sampling_circle(setup, setup.N, 7) * 1.3
    results = []
    for eigen in bethe_eigensystem(setup, seed):
        top = max(abs(eigen.operator.coefficient(setup.N, x) - setup.b_q(x)) / max(1.0, abs(setup.b_q(x)))
                  for x in samples)
        space = qe_kernel(eigen.operator, mus, setup.n)
        roots = monic_wronskian(space, BETHE_HALF_STEP).w.roots()
        results.append(PipelineResult(space, match_roots(roots, expected), top))
    return results


def eigenvalue_symmetry(setup: BetheSetup, eigensystem: typing.Sequence[BetheEigen],
                        points: typing.Sequence[complex]) -> float:
    """
    Largest relative residual of ``conj(B_j(x)) = conj(b_Q(x)) B_(N-j)(-conj(x) - 1)`` over eigenvectors,
    ``j = 0..N`` and ``points``.
    """
    worst = 0.0
    for eigen in eigensystem:
        op = eigen.operator
        for x in points:
            mirror = -x.conjugate() - 1
            for j in range(setup.N + 1):
                lhs = op.coefficient(j, x).conjugate()
                rhs = setup.b_q(x).conjugate() * op.coefficient(setup.N - j, mirror)
                worst = max(worst, abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs)))
    return worst
