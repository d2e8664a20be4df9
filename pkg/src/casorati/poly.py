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
Dense univariate polynomials with complex double coefficients, polynomial-matrix determinants and
polynomial fitting. Everything else in Casorati is built on :class:`CPoly`.

.. invisible-code-block: python

    from casorati.poly import CPoly

.. code-block:: python

    p = CPoly([2, 3, 1])  # 2 + 3x + x^2, ascending order

    assert p.degree == 2
    assert sorted(p.roots().real.round(9).tolist()) == [-2.0, -1.0]

"""
import itertools
import logging
import math
import typing

import numpy as np
import numpy.polynomial.polynomial as npp
import scipy.linalg
import scipy.optimize

import casorati

DEFAULT_RTOL = 1e-9
DEFAULT_ATOL = 1e-12

MAX_DET_SIZE = 8

_logger = logging.getLogger(__name__)

Scalar = typing.Union[int, float, complex]
PolyLike = typing.Union['CPoly', Scalar]


class CPoly:
    """
    Immutable polynomial with complex128 coefficients stored in ascending order. Exactly zero
    leading coefficients are trimmed on construction so the zero polynomial has no coefficients
    and degree ``-1``.

    :param coeffs: Coefficients, constant term first.
    """

    def __init__(self, coeffs: typing.Iterable[Scalar]):
        c = np.array(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs, dtype=np.complex128)
        c = np.atleast_1d(c).ravel()
        nonzero = np.flatnonzero(c)
        self._c = (c[:nonzero[-1] + 1].copy() if nonzero.size > 0 else np.zeros(0, dtype=np.complex128))
        self._c.setflags(write=False)

    @classmethod
    def constant(cls, value: Scalar) -> 'CPoly':
        return cls([value])

    @classmethod
    def monomial(cls, k: int, coefficient: Scalar = 1) -> 'CPoly':
        """
        ``coefficient * x**k``.
        """
        if k < 0:
            raise casorati.InputError('negative degree {}'.format(k))
        c = np.zeros(k + 1, dtype=np.complex128)
        c[k] = coefficient
        return cls(c)

    @classmethod
    def from_roots(cls, roots: typing.Iterable[Scalar], leading: Scalar = 1) -> 'CPoly':
        """
        ``leading * prod(x - r)``.
        """
        r = np.asarray(list(roots), dtype=np.complex128)
        if r.size == 0:
            return cls([leading])
        return cls(npp.polyfromroots(r) * leading)

    @property
    def coeffs(self) -> np.ndarray:
        """
        Read-only ascending coefficient array.
        """
        return self._c

    @property
    def degree(self) -> int:
        return self._c.size - 1

    @property
    def is_zero(self) -> bool:
        return self._c.size == 0

    @property
    def leading(self) -> complex:
        if self.is_zero:
            return 0j
        return complex(self._c[-1])

    def padded(self, length: int) -> np.ndarray:
        """
        Coefficients zero-padded (never truncated) to ``length``.
        """
        if self._c.size > length:
            raise casorati.InputError('degree {} does not fit {} coefficients'.format(self.degree, length))
        out = np.zeros(length, dtype=np.complex128)
        out[:self._c.size] = self._c
        return out

    def __call__(self, x: typing.Any) -> typing.Any:
        if self.is_zero:
            return np.zeros_like(np.asarray(x, dtype=np.complex128)) if np.ndim(x) > 0 else 0j
        return npp.polyval(x, self._c)

    evaluate = __call__

    def __add__(self, other: PolyLike) -> 'CPoly':
        o = _as_poly(other)
        if self.is_zero:
            return o
        if o.is_zero:
            return self
        return CPoly(npp.polyadd(self._c, o._c))

    __radd__ = __add__

    def __neg__(self) -> 'CPoly':
        return CPoly(-self._c)

    def __sub__(self, other: PolyLike) -> 'CPoly':
        return self + (-_as_poly(other))

    def __rsub__(self, other: PolyLike) -> 'CPoly':
        return _as_poly(other) - self

    def __mul__(self, other: PolyLike) -> 'CPoly':
        o = _as_poly(other)
        if self.is_zero or o.is_zero:
            return CPoly([])
        return CPoly(np.convolve(self._c, o._c))

    __rmul__ = __mul__

    def __truediv__(self, scalar: Scalar) -> 'CPoly':
        if scalar == 0:
            raise casorati.InputError('division by zero')
        return CPoly(self._c / scalar)

    def __pow__(self, k: int) -> 'CPoly':
        result = CPoly([1])
        for _ in range(k):
            result = result * self
        return result

    def __repr__(self) -> str:
        return 'CPoly({})'.format(self._c.tolist())

    def divmod(self, divisor: 'CPoly') -> typing.Tuple['CPoly', 'CPoly']:
        if divisor.is_zero:
            raise casorati.InputError('division by the zero polynomial')
        if self.is_zero:
            return CPoly([]), CPoly([])
        q, r = npp.polydiv(self._c, divisor._c)
        return CPoly(q), CPoly(r)

    def derivative(self) -> 'CPoly':
        if self.degree < 1:
            return CPoly([])
        return CPoly(npp.polyder(self._c))

    def conj(self) -> 'CPoly':
        return CPoly(np.conj(self._c))

    def monic(self) -> 'CPoly':
        if self.is_zero:
            raise casorati.InputError('the zero polynomial has no monic form')
        return CPoly(self._c / self._c[-1])

    def trim(self, rel: float = DEFAULT_RTOL) -> 'CPoly':
        """
        Drops leading coefficients whose magnitude is at most ``rel`` times the largest coefficient.
        Used where cancellation in a determinant leaves rounding noise above the true degree.
        """
        if self.is_zero:
            return self
        scale = float(np.max(np.abs(self._c)))
        keep = self._c.size
        while keep > 0 and abs(self._c[keep - 1]) <= rel * scale:
            keep -= 1
        return CPoly(self._c[:keep])

    def compose_affine(self, a: Scalar, b: Scalar) -> 'CPoly':
        """
        ``p(a*x + b)`` by Horner's scheme.
        """
        if self.is_zero:
            return self
        inner = np.array([b, a], dtype=np.complex128)
        acc = np.array([self._c[-1]], dtype=np.complex128)
        for c in self._c[-2::-1]:
            acc = np.convolve(acc, inner)
            acc[0] += c
        return CPoly(acc)

    def compose_shift(self, s: Scalar) -> 'CPoly':
        """
        ``p(x + s)``.
        """
        return self.compose_affine(1.0, s)

    def roots(self) -> np.ndarray:
        """
        Roots from the eigenvalues of the companion matrix. A reconstruction check logs a warning
        when the roots do not reproduce the coefficients to 1e-8 relative.

        :raises casorati.InputError: for the zero polynomial.
        """
        if self.is_zero:
            raise casorati.InputError('no roots of zero polynomial')
        if self.degree == 0:
            return np.zeros(0, dtype=np.complex128)
        roots = np.linalg.eigvals(scipy.linalg.companion(self._c[::-1]))
        rebuilt = npp.polyfromroots(roots) * self._c[-1]
        scale = max(1.0, float(np.max(np.abs(self._c))))
        error = float(np.max(np.abs(rebuilt - self._c)))
        if error > 1e-8 * scale:
            _logger.warning('root reconstruction error %.3g exceeds 1e-8 for a degree %d polynomial',
                            error, self.degree)
        return roots

    def isclose(self, other: PolyLike, rtol: float = DEFAULT_RTOL, atol: float = DEFAULT_ATOL) -> bool:
        """
        Coefficientwise comparison relative to the larger coefficient magnitude of the two.
        """
        return self.distance(other) <= atol + rtol * max(self.scale, _as_poly(other).scale)

    def distance(self, other: PolyLike) -> float:
        """
        Largest coefficient difference.
        """
        o = _as_poly(other)
        length = max(self._c.size, o._c.size, 1)
        return float(np.max(np.abs(self.padded(length) - o.padded(length))))

    @property
    def scale(self) -> float:
        return float(np.max(np.abs(self._c))) if not self.is_zero else 0.0

    def is_real(self, tol: float = DEFAULT_RTOL) -> bool:
        if self.is_zero:
            return True
        return float(np.max(np.abs(self._c.imag))) <= tol * max(1.0, self.scale)


def _as_poly(value: PolyLike) -> CPoly:
    if isinstance(value, CPoly):
        return value
    return CPoly([value])


class RationalFn:
    """
    ``num(x) / den(x)`` with a monic denominator.
    """

    def __init__(self, num: CPoly, den: CPoly):
        if den.is_zero:
            raise casorati.InputError('zero denominator')
        self._num = num / den.leading
        self._den = den.monic()

    @property
    def num(self) -> CPoly:
        return self._num

    @property
    def den(self) -> CPoly:
        return self._den

    def __call__(self, x: typing.Any) -> typing.Any:
        return self._num(x) / self._den(x)

    def __repr__(self) -> str:
        return 'RationalFn({!r}, {!r})'.format(self._num, self._den)


# +---------------------------------------------------------------------------+
# | DETERMINANTS
# +---------------------------------------------------------------------------+

def _parity(perm: typing.Tuple[int, ...]) -> int:
    inversions = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                inversions += 1
    return -1 if inversions % 2 else 1


def poly_det(matrix: typing.Sequence[typing.Sequence[PolyLike]]) -> CPoly:
    """
    Determinant of a square matrix of polynomials by Leibniz expansion.

    Each term multiplies its factors in column order and every output coefficient is accumulated
    with :func:`math.fsum`, so swapping two rows gives exactly the negated result.

    .. invisible-code-block: python

        from casorati.poly import CPoly, poly_det

    .. code-block:: python

        h = 0.25j
        x = CPoly([0, 1])
        det = poly_det([[1, 1], [x - h, x + h]])

        assert det.isclose(2 * h)

    :raises casorati.InputError: for empty, ragged or larger than 8x8 input.
    """
    size = len(matrix)
    if size == 0:
        raise casorati.InputError('empty determinant')
    if size > MAX_DET_SIZE:
        raise casorati.InputError('determinants larger than {0}x{0} are not supported'.format(MAX_DET_SIZE))
    rows = [[_as_poly(entry) for entry in row] for row in matrix]
    if any(len(row) != size for row in rows):
        raise casorati.InputError('matrix is not square')

    terms = []  # type: typing.List[typing.Tuple[int, np.ndarray]]
    for perm in itertools.permutations(range(size)):
        product = np.ones(1, dtype=np.complex128)
        for column in range(size):
            entry = rows[perm[column]][column]
            if entry.is_zero:
                product = np.zeros(0, dtype=np.complex128)
                break
            product = np.convolve(product, entry.coeffs)
        if product.size > 0:
            terms.append((_parity(perm), product))

    if len(terms) == 0:
        return CPoly([])

    length = max(t[1].size for t in terms)
    result = np.zeros(length, dtype=np.complex128)
    for k in range(length):
        real = [sign * t[k].real for sign, t in terms if k < t.size]
        imag = [sign * t[k].imag for sign, t in terms if k < t.size]
        result[k] = complex(math.fsum(real), math.fsum(imag))
    return CPoly(result)


# +---------------------------------------------------------------------------+
# | FITTING
# +---------------------------------------------------------------------------+

def _check_nodes(nodes: np.ndarray, degree_bound: int) -> None:
    if degree_bound < 0:
        raise casorati.InputError('negative degree bound {}'.format(degree_bound))
    if nodes.size < degree_bound + 1:
        raise casorati.InputError('{} nodes cannot determine a degree {} polynomial'
                                  .format(nodes.size, degree_bound))
    scale = max(1.0, float(np.max(np.abs(nodes))))
    gaps = np.abs(nodes[:, None] - nodes[None, :]) + np.eye(nodes.size) * scale
    if float(np.min(gaps)) <= 1e-14 * scale:
        raise casorati.InputError('repeated interpolation nodes')


def _shift_basis(center: complex, radius: float, degree_bound: int) -> np.ndarray:
    """
    Column k holds the ascending coefficients of ((x - center) / radius)**k.
    """
    basis = np.zeros((degree_bound + 1, degree_bound + 1), dtype=np.complex128)
    for k in range(degree_bound + 1):
        basis[:, k] = CPoly.monomial(k).compose_affine(1.0 / radius, -center / radius).padded(degree_bound + 1)
    return basis


def fit_columns(nodes: typing.Sequence[Scalar],
                values: np.ndarray,
                degree_bound: int) -> typing.Tuple[np.ndarray, float]:
    """
    Least-squares fit of every column of ``values`` (shape ``(len(nodes), K)``) by a polynomial of
    degree at most ``degree_bound``. The fit runs in the centred, scaled variable
    ``t = (x - c) / r`` and is converted back to ``x``.

    :returns: ``(coefficients, residual)`` where coefficients has shape ``(degree_bound + 1, K)``
        in ascending powers of ``x`` and residual is the largest absolute misfit at the nodes.
    """
    x = np.asarray(nodes, dtype=np.complex128).ravel()
    _check_nodes(x, degree_bound)
    y = np.asarray(values, dtype=np.complex128)
    if y.ndim == 1:
        y = y[:, None]
    if y.shape[0] != x.size:
        raise casorati.InputError('{} nodes but {} value rows'.format(x.size, y.shape[0]))

    center = complex(np.mean(x))
    radius = float(np.max(np.abs(x - center)))
    if radius == 0.0:
        radius = 1.0
    vander = npp.polyvander((x - center) / radius, degree_bound)
    coef_t, _, _, _ = scipy.linalg.lstsq(vander, y)
    residual = float(np.max(np.abs(vander @ coef_t - y))) if y.size > 0 else 0.0
    return _shift_basis(center, radius, degree_bound) @ coef_t, residual


def fit(points: typing.Sequence[typing.Tuple[Scalar, Scalar]], degree_bound: int) -> typing.Tuple[CPoly, float]:
    """
    Polynomial of degree at most ``degree_bound`` through ``(node, value)`` points, least squares when
    overdetermined.

    :returns: ``(polynomial, residual)``
    :raises casorati.InputError: for repeated nodes or too few points.
    """
    nodes = [p[0] for p in points]
    values = np.array([p[1] for p in points], dtype=np.complex128)
    coefficients, residual = fit_columns(nodes, values, degree_bound)
    if residual > 1e-8 * max(1.0, float(np.max(np.abs(values))) if values.size else 1.0):
        _logger.debug('least-squares fit residual %.3g', residual)
    return CPoly(coefficients[:, 0]), residual


def interpolate(points: typing.Sequence[typing.Tuple[Scalar, Scalar]], degree_bound: int) -> CPoly:
    """
    As :func:`fit` without the residual.

    .. invisible-code-block: python

        from casorati.poly import CPoly, interpolate

    .. code-block:: python

        p = interpolate([(0, 0), (1, 1), (2, 4)], 2)

        assert p.isclose(CPoly([0, 0, 1]))

    """
    return fit(points, degree_bound)[0]


def match_roots(a: typing.Iterable[Scalar], b: typing.Iterable[Scalar]) -> float:
    """
    Largest distance between two root multisets under the optimal one-to-one matching.

    :raises casorati.InputError: if the multisets differ in size.
    """
    ra = np.asarray(list(a), dtype=np.complex128)
    rb = np.asarray(list(b), dtype=np.complex128)
    if ra.size != rb.size:
        raise casorati.InputError('root multisets of sizes {} and {}'.format(ra.size, rb.size))
    if ra.size == 0:
        return 0.0
    cost = np.abs(ra[:, None] - rb[None, :])
    rows, cols = scipy.optimize.linear_sum_assignment(cost)
    return float(np.max(cost[rows, cols]))
