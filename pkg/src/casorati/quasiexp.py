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
Quasi-exponential functions ``p(x) * Q**x`` and their spans, the discrete Wronskian (Casorati
determinant) with symmetric shifts, and the reality test for spaces.

Steps are always **half-steps**: :func:`casoratian` with step ``h`` evaluates member ``i`` at
``x + h*(2j - N - 1)`` for ``j = 1..N`` so neighbouring columns are ``2h`` apart.

.. invisible-code-block: python

    from casorati.poly import CPoly
    from casorati.quasiexp import LogBase, QuasiExp, QESpace, monic_wronskian

.. code-block:: python

    one = QuasiExp(CPoly([1]), LogBase(0))
    x = QuasiExp(CPoly([0, 1]), LogBase(0))

    wr = monic_wronskian(QESpace([one, x]), 0.5j)

    assert wr.w.isclose(CPoly([1]))
    assert wr.mu_total == 0

"""
import cmath
import logging
import math
import typing

import numpy as np
import scipy.linalg

import casorati
from casorati.poly import CPoly, match_roots, poly_det

BASE_TOL = 1e-12
"""
Two logarithms within this distance (modulo 2 pi i) are the same base.
"""

RANK_TOL = 1e-10

RESCALE_RTOL = 1e-8

BETHE_HALF_STEP = 0.5
"""
Half-step of the discrete Wronskian matched by Bethe eigenvectors (neighbouring shifts are 1 apart).
"""

MATRIX_Z_HALF_STEP = 1j
"""
Half-step of the discrete Wronskian matched by characteristic polynomials of the Z matrix.
"""

_logger = logging.getLogger(__name__)


class LogBase:
    """
    A nonzero base ``Q`` represented by its chosen logarithm ``mu`` so that ``Q**x = exp(mu * x)``.

    :param mu: The logarithm of the base.
    """

    def __init__(self, mu: complex):
        self._mu = complex(mu)

    @classmethod
    def from_value(cls, q: complex) -> 'LogBase':
        """
        Principal logarithm of ``q``. Negative real ``q`` gets argument ``pi``.
        """
        if q == 0:
            raise casorati.InputError('zero base')
        return cls(cmath.log(q))

    @property
    def mu(self) -> complex:
        return self._mu

    @property
    def value(self) -> complex:
        return cmath.exp(self._mu)

    def power(self, s: complex) -> complex:
        """
        ``Q**s`` on the fixed branch.
        """
        return cmath.exp(self._mu * s)

    def is_real(self, tol: float = BASE_TOL) -> bool:
        """
        True if ``Im(mu)`` is a multiple of ``pi``, which includes negative real bases.
        """
        k = round(self._mu.imag / math.pi)
        return abs(self._mu.imag - k * math.pi) <= tol * max(1.0, abs(self._mu))

    def is_positive(self, tol: float = BASE_TOL) -> bool:
        """
        True if ``mu`` itself is real.
        """
        return abs(self._mu.imag) <= tol * max(1.0, abs(self._mu))

    def has_unit_shift(self, h: complex, tol: float = BASE_TOL) -> bool:
        """
        True if ``|Q**h| == 1``.
        """
        return abs((self._mu * h).real) <= tol * max(1.0, abs(self._mu * h))

    def same_as(self, other: 'LogBase', tol: float = BASE_TOL) -> bool:
        """
        Equality modulo ``2 pi i``.
        """
        d = self._mu - other._mu
        k = round(d.imag / (2 * math.pi))
        return abs(d - 2j * math.pi * k) <= tol * max(1.0, abs(self._mu), abs(other._mu))

    def conjugate(self) -> 'LogBase':
        return LogBase(self._mu.conjugate())

    def __repr__(self) -> str:
        return 'LogBase({!r})'.format(self._mu)


class QuasiExp:
    """
    ``p(x) * exp(mu * x)`` with ``p`` nonzero.
    """

    def __init__(self, p: CPoly, base: LogBase):
        if p.is_zero:
            raise casorati.InputError('quasi-exponential with zero polynomial part')
        self._p = p
        self._base = base

    @property
    def p(self) -> CPoly:
        return self._p

    @property
    def base(self) -> LogBase:
        return self._base

    def __call__(self, x: typing.Any) -> typing.Any:
        return self._p(x) * np.exp(self._base.mu * np.asarray(x, dtype=np.complex128))

    def is_real(self, tol: float = 1e-9) -> bool:
        return self._base.is_real() and self._p.is_real(tol)

    def conjugate(self) -> 'QuasiExp':
        return QuasiExp(self._p.conj(), self._base.conjugate())

    def __repr__(self) -> str:
        return 'QuasiExp({!r}, {!r})'.format(self._p, self._base)


class QESpace:
    """
    Span of ``N >= 1`` linearly independent quasi-exponentials. Members sharing a base (modulo
    ``2 pi i``) form a group; independence is checked per group from the rank of the stacked
    coefficient vectors.

    :raises casorati.InputError: for an empty member list.
    :raises casorati.DegenerateInputError: if the members are linearly dependent.
    """

    def __init__(self, members: typing.Sequence[QuasiExp]):
        if len(members) == 0:
            raise casorati.InputError('a space needs at least one member')
        self._members = list(members)
        self._groups = group_bases([m.base for m in self._members])
        for _, indices in self._groups:
            if _coefficient_rank([self._members[i].p for i in indices]) < len(indices):
                raise casorati.DegenerateInputError('dependent members')

    @property
    def members(self) -> typing.List[QuasiExp]:
        return list(self._members)

    @property
    def rank(self) -> int:
        return len(self._members)

    @property
    def mu_total(self) -> complex:
        return complex(sum(m.base.mu for m in self._members))

    @property
    def groups(self) -> typing.List[typing.Tuple[LogBase, typing.List[int]]]:
        """
        ``(base, member indices)`` per distinct base, in order of first appearance.
        """
        return [(b, list(i)) for b, i in self._groups]

    def conjugate(self) -> 'QESpace':
        return QESpace([m.conjugate() for m in self._members])

    def canonical(self) -> typing.List[typing.Tuple[complex, np.ndarray]]:
        """
        Basis-independent form: per base group the reduced row echelon form of the coefficient matrix
        with monic pivots. Two spaces are equal iff their canonical forms are.
        """
        result = []
        for base, indices in self._groups:
            polys = [self._members[i].p for i in indices]
            result.append((base.mu, _reduced_echelon(polys)))
        return result

    def distance(self, other: 'QESpace') -> float:
        """
        Largest difference between canonical forms; ``inf`` if the group structure differs.
        """
        mine = self.canonical()
        theirs = other.canonical()
        if len(mine) != len(theirs):
            return math.inf
        worst = 0.0
        unused = list(range(len(theirs)))
        for mu, m in mine:
            match = None
            for k in unused:
                if LogBase(mu).same_as(LogBase(theirs[k][0]), 1e-9) and theirs[k][1].shape[0] == m.shape[0]:
                    match = k
                    break
            if match is None:
                return math.inf
            unused.remove(match)
            t = theirs[match][1]
            width = max(m.shape[1], t.shape[1])
            worst = max(worst, float(np.max(np.abs(_pad_columns(m, width) - _pad_columns(t, width)))))
        return worst

    def __repr__(self) -> str:
        return 'QESpace({!r})'.format(self._members)


class DiscreteWronskian(typing.NamedTuple):
    """
    ``w(x) * exp(mu_total * x)`` is the monic representative of the discrete Wronskian at half-step ``h``.
    """
    w: CPoly
    mu_total: complex
    h: complex
    leading: complex


class Theorem1Hypotheses(typing.NamedTuple):
    """
    Diagnostic flags for the reality theorem. ``holds`` is True iff every flag is. A Casoratian that vanishes
    identically fails ``nonzero_wronskian`` and the two flags about its roots, with ``max_root_imag`` infinite.
    """
    imaginary_step: bool
    real_bases: bool
    unit_shift: bool
    nonzero_wronskian: bool
    real_coefficients: bool
    strip_roots: bool
    max_root_imag: float
    holds: bool


# +---------------------------------------------------------------------------+
# | PRIVATE
# +---------------------------------------------------------------------------+

def group_bases(bases: typing.Sequence[LogBase]) -> typing.List[typing.Tuple[LogBase, typing.List[int]]]:
    groups = []  # type: typing.List[typing.Tuple[LogBase, typing.List[int]]]
    for i, b in enumerate(bases):
        for base, indices in groups:
            if base.same_as(b):
                indices.append(i)
                break
        else:
            groups.append((b, [i]))
    return groups


def _coefficient_matrix(polys: typing.Sequence[CPoly]) -> np.ndarray:
    width = max(p.degree for p in polys) + 1
    return np.array([p.padded(width) for p in polys])


def _coefficient_rank(polys: typing.Sequence[CPoly], tol: float = RANK_TOL) -> int:
    sv = scipy.linalg.svdvals(_coefficient_matrix(polys))
    if sv.size == 0 or sv[0] == 0:
        return 0
    return int(np.sum(sv > tol * sv[0]))


def _pad_columns(m: np.ndarray, width: int) -> np.ndarray:
    out = np.zeros((m.shape[0], width), dtype=np.complex128)
    out[:, :m.shape[1]] = m
    return out


def _reduced_echelon(polys: typing.Sequence[CPoly]) -> np.ndarray:
    # Pivot from the highest power down so pivots are monic leading coefficients.
    m = _coefficient_matrix(polys)[:, ::-1].copy()
    rows, cols = m.shape
    scale = max(1.0, float(np.max(np.abs(m))))
    pivot_row = 0
    for col in range(cols):
        if pivot_row >= rows:
            break
        best = pivot_row + int(np.argmax(np.abs(m[pivot_row:, col])))
        if abs(m[best, col]) <= 1e-12 * scale:
            continue
        m[[pivot_row, best]] = m[[best, pivot_row]]
        m[pivot_row] /= m[pivot_row, col]
        for r in range(rows):
            if r != pivot_row:
                m[r] -= m[r, col] * m[pivot_row]
        pivot_row += 1
    return m[:, ::-1]


# +---------------------------------------------------------------------------+
# | OPERATIONS
# +---------------------------------------------------------------------------+

def shifts(n: int, h: complex) -> typing.List[complex]:
    """
    ``h*(2j - n - 1)`` for ``j = 1..n``.
    """
    return [h * (2 * j - n - 1) for j in range(1, n + 1)]


def casoratian(fs: typing.Sequence[QuasiExp], h: complex) -> typing.Tuple[CPoly, complex]:
    """
    Discrete Wronskian ``det[f_i(x + h(2j - N - 1))]`` as ``(P, mu_total)`` with
    ``Wr = P(x) * exp(mu_total * x)``. ``P`` is not normalized.

    :raises casorati.InputError: for ``h == 0`` or an empty family.
    """
    if len(fs) == 0:
        raise casorati.InputError('empty family')
    if h == 0:
        raise casorati.InputError('zero step')
    s = shifts(len(fs), h)
    matrix = [[f.p.compose_shift(sj) * f.base.power(sj) for sj in s] for f in fs]
    return poly_det(matrix), complex(sum(f.base.mu for f in fs))


def monic_wronskian(space: QESpace, h: complex) -> DiscreteWronskian:
    """
    Monic representative of the discrete Wronskian. Leading coefficients below ``1e-9`` of the
    largest coefficient are treated as cancellation noise.

    :raises casorati.DegenerateInputError: if the Casoratian vanishes identically.
    """
    p, mu_total = casoratian(space.members, h)
    p = p.trim()
    if p.is_zero:
        raise casorati.DegenerateInputError('dependent members')
    return DiscreteWronskian(p.monic(), mu_total, complex(h), p.leading)


def differential_wronskian(space: QESpace) -> typing.Tuple[CPoly, complex]:
    """
    Classical Wronskian ``det[(d/dx)^(j-1) f_i]`` as ``(P, mu_total)``. Row ``i`` uses
    ``(d/dx)^k (p e^(mu x)) = ((D + mu)^k p) e^(mu x)``.
    """
    members = space.members
    matrix = []
    for f in members:
        row = []
        entry = f.p
        for _ in range(len(members)):
            row.append(entry)
            entry = entry.derivative() + entry * f.base.mu
        matrix.append(row)
    return poly_det(matrix), space.mu_total


def is_real_space(space: QESpace, tol: float = 1e-9) -> bool:
    """
    True iff the space equals its complex conjugate as a span, i.e. it has a basis of real
    quasi-exponentials.

    .. invisible-code-block: python

        from casorati.poly import CPoly
        from casorati.quasiexp import LogBase, QuasiExp, QESpace, is_real_space

    .. code-block:: python

        mixed = QESpace([QuasiExp(CPoly([1j, 1]), LogBase(1)),
                         QuasiExp(CPoly([-1j, 1]), LogBase(1))])

        assert is_real_space(mixed)

    :raises casorati.InputError: if any base is not real.
    """
    for m in space.members:
        if not m.base.is_real():
            raise casorati.InputError('reality test undefined for non-real bases')
    for _, indices in space.groups:
        polys = [space.members[i].p for i in indices]
        both = polys + [p.conj() for p in polys]
        if _coefficient_rank(both, tol) != _coefficient_rank(polys, tol):
            return False
    return True


def rescale_space(space: QESpace, h: complex, N: typing.Optional[int] = None) -> QESpace:
    """
    Change of variables ``x -> 2hx + h(N + 1)`` with bases ``mu -> 2h mu``. The discrete Wronskian at
    half-step ``h`` with roots ``z_i`` becomes one at half-step 1/2 with roots ``z_i/(2h) - (N+1)/2``; that
    is checked before the rescaled space is returned.

    :param N: The rank of ``space``; taken from the space when omitted.
    :raises casorati.InputError: if ``h`` is zero or not purely imaginary or ``N`` is not the rank.
    :raises casorati.AssertionError: if the rescaled Wronskian does not match.
    """
    if h == 0:
        raise casorati.InputError('zero step')
    if abs(complex(h).real) > BASE_TOL * abs(h):
        raise casorati.InputError('rescaling needs a purely imaginary step')
    n = space.rank
    if N is not None and N != n:
        raise casorati.InputError('rank {} given for a space of rank {}'.format(N, n))
    rescaled = QESpace([QuasiExp(m.p.compose_affine(2 * h, h * (n + 1)), LogBase(2 * h * m.base.mu))
                        for m in space.members])
    try:
        before = monic_wronskian(space, h).w
    except casorati.DegenerateInputError:
        return rescaled
    expected = before.compose_affine(2 * h, h * (n + 1)).monic()
    after = monic_wronskian(rescaled, BETHE_HALF_STEP).w
    if not after.isclose(expected, rtol=RESCALE_RTOL):
        raise casorati.AssertionError('rescaled Wronskian {} does not match {}'.format(after, expected))
    return rescaled


def theorem1_hypotheses(space: QESpace, h: complex, tol: float = 1e-9) -> Theorem1Hypotheses:
    """
    Checks the reality theorem's assumptions on ``space`` at half-step ``h``: imaginary step, real
    bases with ``|Q**h| = 1``, a real monic Wronskian and roots in the strip ``|Im z| <= |h|``.
    """
    imaginary_step = abs(complex(h).real) <= tol * max(1.0, abs(h))
    real_bases = all(m.base.is_real() for m in space.members)
    unit_shift = all(m.base.has_unit_shift(h, tol) for m in space.members)
    try:
        wr = monic_wronskian(space, h)
    except casorati.DegenerateInputError:
        nonzero_wronskian, real_coefficients, max_root_imag = False, False, math.inf
    else:
        nonzero_wronskian = True
        real_coefficients = wr.w.is_real(tol)
        roots = wr.w.roots()
        max_root_imag = float(np.max(np.abs(roots.imag))) if roots.size else 0.0
    strip_roots = max_root_imag <= abs(h) + tol
    flags = (imaginary_step, real_bases, unit_shift, nonzero_wronskian, real_coefficients, strip_roots)
    _logger.debug('hypotheses %s (max |Im z| %.6g, |h| %.6g)', flags, max_root_imag, abs(h))
    return Theorem1Hypotheses(imaginary_step, real_bases, unit_shift, nonzero_wronskian, real_coefficients,
                              strip_roots, max_root_imag, all(flags))


def limit_errors(space: QESpace,
                 exponents: typing.Sequence[int] = (2, 3, 4, 5)) -> typing.List[typing.Tuple[complex, float]]:
    """
    For ``h = i * 10**-k`` the matched distance between the roots of the monic discrete Wronskian and
    the roots of the monic differential Wronskian. The distance shrinks with ``|h|``.

    Cancellation costs about ``N(N-1)/2`` factors of ``|h|`` in relative precision so small steps are only
    meaningful for small ``N``.
    """
    p, _ = differential_wronskian(space)
    p = p.trim()
    if p.is_zero:
        raise casorati.DegenerateInputError('dependent members')
    reference = p.roots()
    errors = []
    for k in exponents:
        h = 1j * 10.0 ** (-k)
        roots = monic_wronskian(space, h).w.roots()
        errors.append((h, match_roots(roots, reference)))
    return errors


def echelon_polys(polys: typing.Sequence[CPoly]) -> typing.List[CPoly]:
    """
    A basis of the span of ``polys`` with distinct degrees, monic pivots and zero coefficients at
    every other member's degree.
    """
    m = _reduced_echelon(polys)
    result = [CPoly(row) for row in m]
    return [p for p in result if p.scale > RANK_TOL]
