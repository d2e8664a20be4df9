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
The inverse discrete Wronski problem: given bases, a half-step ``h`` and a monic target ``w``, find
every space of quasi-exponentials whose discrete Wronskian is ``w(x) * Q_1**x * ... * Q_N**x``.

Members are parametrized in echelon form: each ``p_i`` is monic of a prescribed degree and, inside
a group of members sharing a base, has no coefficient at the degree of a lower member. With that
gauge the unknown count equals ``deg w`` and the system is square.

Two closed-form families, a two-member family with base ``Q`` and a one-base family with a cubic,
are solved both from their formulas and by Newton's method.
"""
import cmath
import logging
import math
import typing

import numpy as np
import scipy.linalg

import casorati
from casorati.poly import CPoly, match_roots
from casorati.quasiexp import LogBase, QESpace, QuasiExp, casoratian, group_bases, is_real_space, monic_wronskian, \
    theorem1_hypotheses

MAX_RANK = 3
MAX_TOTAL_DEGREE = 6

NEWTON_MAX_ITERATIONS = 100
NEWTON_MAX_HALVINGS = 30
NEWTON_RESIDUAL_TOL = 1e-10
NEWTON_STEP_TOL = 1e-14
ACCEPT_TOL = 1e-7
DEDUP_TOL = 1e-5
DEGENERATE_COND = 1e12

_logger = logging.getLogger(__name__)


class InverseProblem:
    """
    One inverse problem instance.

    :param bases: Base of each member.
    :param degrees: Degree of each member's polynomial part. Degrees must be distinct within a base group.
    :param h: Half-step of the discrete Wronskian.
    :param target_w: Target polynomial; it is made monic.
    :param seed: Seed for the random restarts.
    :param restarts: Number of random starting points tried after ``initial_guesses``.
    :param initial_guesses: Optional starting points, each a vector of the unknowns in :meth:`unknowns` order.
    :raises casorati.InputError: for unsupported shapes or a target of the wrong degree.
    """

    def __init__(self,
                 bases: typing.Sequence[LogBase],
                 degrees: typing.Sequence[int],
                 h: complex,
                 target_w: CPoly,
                 seed: typing.Any = 0,
                 restarts: int = 200,
                 initial_guesses: typing.Optional[typing.Sequence[typing.Sequence[complex]]] = None):
        if len(bases) != len(degrees):
            raise casorati.InputError('{} bases but {} degrees'.format(len(bases), len(degrees)))
        if not 1 <= len(bases) <= MAX_RANK:
            raise casorati.InputError('supported ranks are 1..{}, got {}'.format(MAX_RANK, len(bases)))
        if any(d < 0 for d in degrees):
            raise casorati.InputError('negative degree in {}'.format(list(degrees)))
        if sum(degrees) > MAX_TOTAL_DEGREE:
            raise casorati.InputError('total degree {} exceeds {}'.format(sum(degrees), MAX_TOTAL_DEGREE))
        if h == 0:
            raise casorati.InputError('zero step')
        if target_w.is_zero:
            raise casorati.InputError('zero target')
        if restarts < 0:
            raise casorati.InputError('negative restart count')

        self._bases = list(bases)
        self._degrees = [int(d) for d in degrees]
        self._h = complex(h)
        self._target = target_w.monic()
        self._seed = seed
        self._restarts = int(restarts)
        self._guesses = [np.asarray(g, dtype=np.complex128) for g in (initial_guesses or [])]

        self._groups = group_bases(self._bases)
        for _, indices in self._groups:
            group_degrees = [self._degrees[i] for i in indices]
            if len(set(group_degrees)) != len(group_degrees):
                raise casorati.InputError('degrees must be distinct within a base group, got {}'
                                          .format(self._degrees))
        self._unknowns = []  # type: typing.List[typing.Tuple[int, int]]
        for i, d in enumerate(self._degrees):
            lower = {self._degrees[j] for j in self._group_of(i) if self._degrees[j] < d}
            self._unknowns.extend((i, k) for k in range(d) if k not in lower)

        expected = self.expected_degree
        if self._target.degree != expected:
            raise casorati.InputError('target degree {} but members of degrees {} give degree {}'
                                      .format(self._target.degree, self._degrees, expected))
        for g in self._guesses:
            if g.size != len(self._unknowns):
                raise casorati.InputError('initial guess has {} entries, expected {}'
                                          .format(g.size, len(self._unknowns)))

    @property
    def bases(self) -> typing.List[LogBase]:
        return list(self._bases)

    @property
    def degrees(self) -> typing.List[int]:
        return list(self._degrees)

    @property
    def h(self) -> complex:
        return self._h

    @property
    def target(self) -> CPoly:
        return self._target

    @property
    def seed(self) -> typing.Any:
        return self._seed

    @property
    def restarts(self) -> int:
        return self._restarts

    @property
    def initial_guesses(self) -> typing.List[np.ndarray]:
        return list(self._guesses)

    @property
    def unknowns(self) -> typing.List[typing.Tuple[int, int]]:
        """
        ``(member, power)`` of every free coefficient, in solver order.
        """
        return list(self._unknowns)

    @property
    def expected_degree(self) -> int:
        drops = sum(len(indices) * (len(indices) - 1) // 2 for _, indices in self._groups)
        return sum(self._degrees) - drops

    def members(self, u: np.ndarray) -> typing.List[QuasiExp]:
        """
        The quasi-exponentials for the unknown vector ``u``.
        """
        coeffs = [np.zeros(d + 1, dtype=np.complex128) for d in self._degrees]
        for c, d in zip(coeffs, self._degrees):
            c[d] = 1.0
        for value, (i, k) in zip(u, self._unknowns):
            coeffs[i][k] = value
        return [QuasiExp(CPoly(c), b) for c, b in zip(coeffs, self._bases)]

    # +-----------------------------------------------------------------------+
    # | PRIVATE
    # +-----------------------------------------------------------------------+
    def _group_of(self, i: int) -> typing.List[int]:
        for _, indices in self._groups:
            if i in indices:
                return indices
        return [i]


class Solution(typing.NamedTuple):
    space: QESpace
    residual: float
    real: bool
    degenerate: bool
    unknowns: np.ndarray


class SolutionSet:
    """
    Accepted, deduplicated solutions of an :class:`InverseProblem`.
    """

    def __init__(self, solutions: typing.Sequence[Solution], attempts: int = 0):
        self._solutions = list(solutions)
        self._attempts = attempts

    @property
    def solutions(self) -> typing.List[Solution]:
        return list(self._solutions)

    @property
    def spaces(self) -> typing.List[QESpace]:
        return [s.space for s in self._solutions]

    @property
    def residuals(self) -> typing.List[float]:
        return [s.residual for s in self._solutions]

    @property
    def real_flags(self) -> typing.List[bool]:
        return [s.real for s in self._solutions]

    @property
    def degenerate_flags(self) -> typing.List[bool]:
        return [s.degenerate for s in self._solutions]

    @property
    def attempts(self) -> int:
        return self._attempts

    def __len__(self) -> int:
        return len(self._solutions)

    def find(self, space: QESpace, tol: float = DEDUP_TOL) -> typing.Optional[Solution]:
        for s in self._solutions:
            if s.space.distance(space) < tol:
                return s
        return None


# +---------------------------------------------------------------------------+
# | NEWTON
# +---------------------------------------------------------------------------+

class _Residual:
    """
    Residual map and Jacobian of an :class:`InverseProblem`.
    """

    def __init__(self, problem: InverseProblem):
        self._problem = problem
        self._n = problem.expected_degree
        monomials = [QuasiExp(CPoly.monomial(d), b) for d, b in zip(problem.degrees, problem.bases)]
        leading_poly, _ = casoratian(monomials, problem.h)
        self._leading = complex(leading_poly.padded(max(leading_poly.degree, self._n) + 1)[self._n])
        scale = max(1.0, max(abs(b.power(problem.h)) + abs(b.power(-problem.h)) for b in problem.bases))
        if abs(self._leading) <= 1e-12 * scale:
            raise casorati.DegenerateInputError('degenerate base')
        self._target = problem.target.padded(self._n + 1)[:self._n]

    @property
    def leading(self) -> complex:
        return self._leading

    def _low(self, p: CPoly) -> np.ndarray:
        c = p.coeffs
        out = np.zeros(self._n, dtype=np.complex128)
        k = min(self._n, c.size)
        out[:k] = c[:k]
        return out / self._leading

    def __call__(self, u: np.ndarray) -> np.ndarray:
        p, _ = casoratian(self._problem.members(u), self._problem.h)
        return self._low(p) - self._target

    def jacobian(self, u: np.ndarray) -> np.ndarray:
        members = self._problem.members(u)
        columns = []
        for i, k in self._problem.unknowns:
            replaced = list(members)
            replaced[i] = QuasiExp(CPoly.monomial(k), members[i].base)
            p, _ = casoratian(replaced, self._problem.h)
            columns.append(self._low(p))
        if len(columns) == 0:
            return np.zeros((0, 0), dtype=np.complex128)
        return np.array(columns).T


def damped_newton(residual: typing.Any, start: np.ndarray) -> typing.Tuple[np.ndarray, float]:
    """
    Newton iteration with step halving on the max-norm of ``residual(u)``. ``residual`` is a callable with a
    ``jacobian(u)`` method.

    :returns: ``(u, residual norm)``
    """
    u = start.copy()
    r = residual(u)
    norm = float(np.max(np.abs(r))) if r.size else 0.0
    for _ in range(NEWTON_MAX_ITERATIONS):
        if norm < NEWTON_RESIDUAL_TOL:
            break
        J = residual.jacobian(u)
        try:
            step = scipy.linalg.solve(J, -r)
        except (scipy.linalg.LinAlgError, ValueError):
            step = scipy.linalg.lstsq(J, -r)[0]
        if not np.all(np.isfinite(step)):
            break
        t = 1.0
        for _ in range(NEWTON_MAX_HALVINGS + 1):
            candidate = u + t * step
            r_candidate = residual(candidate)
            candidate_norm = float(np.max(np.abs(r_candidate)))
            if np.isfinite(candidate_norm) and candidate_norm < norm:
                break
            t *= 0.5
        else:
            break
        u, r, norm = candidate, r_candidate, candidate_norm
        if float(np.max(np.abs(t * step))) < NEWTON_STEP_TOL * (1.0 + float(np.max(np.abs(u)))):
            break
    return u, norm


def _random_start(rng: np.random.Generator, size: int, scale: float) -> np.ndarray:
    return scale * (rng.standard_normal(size) + 1j * rng.standard_normal(size))


def newton_inverse(problem: InverseProblem) -> SolutionSet:
    """
    Solves ``problem`` by damped Newton iteration from every initial guess and from
    ``problem.restarts`` random complex starts. Converged points whose monic discrete Wronskian matches
    the target to 1e-7 are accepted and deduplicated at 1e-5.

    :raises casorati.DegenerateInputError: if the shape forces a vanishing leading coefficient.
    """
    residual = _Residual(problem)
    size = len(problem.unknowns)
    rng = np.random.default_rng(problem.seed)
    target_scale = max(1.0, float(np.max(np.abs(problem.target.roots())))) if problem.target.degree > 0 else 1.0

    starts = list(problem.initial_guesses)
    starts.extend(_random_start(rng, size, target_scale) for _ in range(problem.restarts))
    if size == 0:
        starts = [np.zeros(0, dtype=np.complex128)]

    accepted = []  # type: typing.List[Solution]
    for start in starts:
        u, norm = damped_newton(residual, start)
        if not np.isfinite(norm) or norm > ACCEPT_TOL:
            continue
        try:
            space = QESpace(problem.members(u))
            error = monic_wronskian(space, problem.h).w.distance(problem.target)
        except casorati.DegenerateInputError:
            continue
        if error > ACCEPT_TOL:
            continue
        if any(s.space.distance(space) < DEDUP_TOL for s in accepted):
            continue
        J = residual.jacobian(u)
        degenerate = size > 0 and bool(np.linalg.cond(J) > DEGENERATE_COND)
        try:
            real = is_real_space(space)
        except casorati.InputError:
            real = False
        accepted.append(Solution(space, error, real, degenerate, u))
        _logger.debug('accepted solution %d with residual %.3g (real=%s, degenerate=%s)',
                      len(accepted), error, real, degenerate)
    _logger.info('%d solutions from %d starts', len(accepted), len(starts))
    return SolutionSet(accepted, len(starts))


# +---------------------------------------------------------------------------+
# | CLOSED FORMS
# +---------------------------------------------------------------------------+

def counterexample_base(h: complex) -> LogBase:
    """
    The real base ``Q = exp(pi / (2|h|))`` with ``Q**h = +-i``. With this base the two-member family
    has non-real solutions once ``|A| > |h|`` for imaginary ``A``.
    """
    return LogBase(math.pi / (2 * abs(h)))


def example1_target(base: LogBase, h: complex, A: complex) -> CPoly:
    """
    ``(Q**h - Q**-h) (x + A)(x - A)``, the non-monic Casoratian the two-member family must reproduce.
    """
    return CPoly([-A * A, 0, 1]) * (base.power(h) - base.power(-h))


def example1_solve(q: typing.Union[complex, LogBase],
                   h: complex,
                   A: complex) -> typing.List[typing.Tuple[complex, complex]]:
    """
    Both ``(a, b)`` with ``Wr(x + a, Q**x (x + b)) = Q**x (Q**h - Q**-h)(x + A)(x - A)``. Each pair is checked
    against the forward Casoratian.

    .. invisible-code-block: python

        import math
        from casorati.inverse import example1_solve

    .. code-block:: python

        pairs = example1_solve(math.e, 1j, 1.0)
        a_values = sorted(a.real for a, _ in pairs)

        assert abs(a_values[0] + 0.9111) < 1e-4
        assert abs(a_values[1] - 2.1955) < 1e-4
        assert all(a == -b for a, b in pairs)

    :raises casorati.DegenerateInputError: if ``Q**h == Q**-h``.
    """
    base = q if isinstance(q, LogBase) else LogBase.from_value(q)
    qp = base.power(h)
    qm = base.power(-h)
    diff = qp - qm
    if abs(diff) <= 1e-12 * max(abs(qp), abs(qm)):
        raise casorati.DegenerateInputError('degenerate base')
    root = cmath.sqrt(diff * diff * A * A + 4 * h * h)
    pairs = []
    for sign in (1, -1):
        a = ((qp + qm) * h + sign * root) / diff
        pairs.append((a, -a))

    expected = example1_target(base, h, A)
    for a, b in pairs:
        p, _ = casoratian([QuasiExp(CPoly([a, 1]), LogBase(0)), QuasiExp(CPoly([b, 1]), base)], h)
        if not p.isclose(expected, rtol=1e-9):
            raise casorati.AssertionError('closed form (a={}, b={}) fails the forward check'.format(a, b))
    return pairs


def example1_problem(q: typing.Union[complex, LogBase], h: complex, A: complex, **kwargs: typing.Any) -> InverseProblem:
    """
    The two-member family as an :class:`InverseProblem`; unknowns are ``[a, b]``.
    """
    base = q if isinstance(q, LogBase) else LogBase.from_value(q)
    return InverseProblem([LogBase(0), base], [1, 1], h, CPoly([-A * A, 0, 1]), **kwargs)


def example2_target(h: complex, A: complex, B: complex) -> CPoly:
    """
    ``4h x (x - A)(x - B)``.
    """
    return CPoly.from_roots([0, A, B], 4 * h)


def example2_closed_form(h: complex, A: complex, B: complex) -> typing.List[typing.Tuple[complex, complex, complex]]:
    """
    Both ``(a, b, c)`` from the solved polynomial system: with ``S = A + B`` and
    ``R = sqrt(A^2 + B^2 - AB - 3h^2)``, ``a = -S/3 +- R/3``, ``b = -S -+ R`` and ``c = h^2 (a - b)``.
    """
    s = A + B
    r = cmath.sqrt(A * A + B * B - A * B - 3 * h * h)
    triples = []
    for sign in (1, -1):
        a = -s / 3 + sign * r / 3
        b = -s - sign * r
        triples.append((a, b, h * h * (a - b)))
    return triples


def example2_printed_c(h: complex, A: complex, B: complex) -> typing.List[complex]:
    """
    The constant term ``(-4/3 + 2h^2)(A + B) +- (h^2/3) sqrt(A^2 + B^2 - AB - 3h^2)`` in its commonly quoted
    form. It does not satisfy the polynomial system and is reported next to the recomputed value.
    """
    r = cmath.sqrt(A * A + B * B - A * B - 3 * h * h)
    return [(-4.0 / 3 + 2 * h * h) * (A + B) + sign * h * h / 3 * r for sign in (1, -1)]


def example2_problem(h: complex, A: complex, B: complex, **kwargs: typing.Any) -> InverseProblem:
    """
    ``Wr(x + a, x^3 + b x^2 + c) = 4h x (x - A)(x - B)`` as an :class:`InverseProblem`. Both members share
    the base 1 so the ``x`` coefficient of the cubic is gauged away; unknowns are ``[a, c, b]``.
    """
    return InverseProblem([LogBase(0), LogBase(0)], [1, 3], h, example2_target(h, A, B), **kwargs)


def example2_solve(h: complex, A: complex, B: complex,
                   restarts: int = 20, seed: typing.Any = 0) -> typing.List[typing.Tuple[complex, complex, complex]]:
    """
    Both ``(a, b, c)`` triples found by Newton's method seeded with :func:`example2_closed_form`, in the same
    branch order. Every triple reproduces the target within 1e-8.

    :raises casorati.DegenerateInputError: if a branch is not found.
    """
    seeds = example2_closed_form(h, A, B)
    guesses = [[a, c, b] for a, b, c in seeds]
    solved = newton_inverse(example2_problem(h, A, B, seed=seed, restarts=restarts, initial_guesses=guesses))
    target = example2_target(h, A, B)
    triples = []
    for a0, b0, c0 in seeds:
        best = None  # type: typing.Optional[np.ndarray]
        for s in solved.solutions:
            if best is None or np.max(np.abs(s.unknowns - [a0, c0, b0])) < np.max(np.abs(best - [a0, c0, b0])):
                best = s.unknowns
        if best is None:
            raise casorati.DegenerateInputError('no solution found; residual trace {}'.format(solved.residuals))
        a, c, b = (complex(v) for v in best)
        p, _ = casoratian([QuasiExp(CPoly([a, 1]), LogBase(0)), QuasiExp(CPoly([c, 0, b, 1]), LogBase(0))], h)
        if not p.isclose(target, rtol=1e-8):
            raise casorati.AssertionError('triple (a={}, b={}, c={}) fails the forward check'.format(a, b, c))
        triples.append((a, b, c))
    for printed, (_, _, c) in zip(example2_printed_c(h, A, B), triples):
        if abs(printed - c) > 1e-8 * max(1.0, abs(c)):
            _logger.warning('printed constant term %s differs from the solved %s', printed, c)
    return triples


def example2_is_real_region(h: complex, A: complex, tol: float = 1e-12) -> bool:
    """
    For ``B = conj(A)``: real triples iff ``3 (Im A)^2 - (Re A)^2 <= 3|h|^2``.
    """
    return 3 * A.imag ** 2 - A.real ** 2 <= 3 * abs(h) ** 2 + tol


def example2_c_discrepancy(h: complex, A: complex, B: complex) -> float:
    """
    Largest distance between :func:`example2_printed_c` and the recomputed constant, branch by branch.
    """
    solved = [c for _, _, c in example2_closed_form(h, A, B)]
    return max(abs(p - c) for p, c in zip(example2_printed_c(h, A, B), solved))


EXAMPLE1_BASES = (0.5, -0.5, 2.0, -2.0, math.e)
EXAMPLE1_STEPS = (0.5j, 1j, 2j)


def example1_grid(bases: typing.Sequence[complex] = EXAMPLE1_BASES,
                  steps: typing.Sequence[complex] = EXAMPLE1_STEPS,
                  points: int = 5,
                  tol: float = 1e-9) -> typing.List[typing.Dict[str, typing.Any]]:
    """
    Closed-form solutions of the two-member family over bases, steps and ``A`` on ``[0, 2]`` (real) and
    ``[0, 2|h|] i`` (imaginary), plus the :func:`counterexample_base` row for every imaginary ``A``.

    ``expect_real`` is ``True`` where reality is guaranteed (``|Q**h| = 1`` and ``A`` real or ``|A| <= |h|``),
    ``False`` on counterexample rows with ``|A| > |h|`` and ``None`` otherwise.
    """
    rows = []
    for h in steps:
        candidates = [(LogBase.from_value(q), False) for q in bases] + [(counterexample_base(h), True)]
        values = [complex(v) for v in np.linspace(0, 2, points)]
        values += [1j * v for v in np.linspace(0, 2 * abs(h), points)]
        for base, counterexample in candidates:
            for A in values:
                if counterexample and A.imag == 0:
                    continue
                inside = A.imag == 0 or abs(A) <= abs(h) * (1 + tol)
                expect = None  # type: typing.Optional[bool]
                if base.has_unit_shift(h) and inside:
                    expect = True
                elif counterexample and not inside:
                    expect = False
                pairs = example1_solve(base, h, A)
                real = [abs(a.imag) <= tol * max(1.0, abs(a)) for a, _ in pairs]
                rows.append({
                    'Q': base.value,
                    'h': h,
                    'A': A,
                    'counterexample': counterexample,
                    'solutions': [list(p) for p in pairs],
                    'real': real,
                    'expect_real': expect,
                    'agrees': expect is None or all(r == expect for r in real)
                })
    return rows


def example2_scan(h: complex = 1j,
                  extent: float = 3.0,
                  points: int = 20,
                  band: float = 1e-6,
                  tol: float = 1e-9) -> typing.List[typing.Dict[str, typing.Any]]:
    """
    Reality of the closed-form triples for ``B = conj(A)`` over a ``points x points`` grid of ``A`` in
    ``[-extent, extent]^2``. Cells within ``band`` of the hyperbola ``3 (Im A)^2 - (Re A)^2 = 3|h|^2`` are
    marked ``boundary`` and carry no prediction.
    """
    rows = []
    axis = np.linspace(-extent, extent, points)
    for re in axis:
        for im in axis:
            A = complex(re, im)
            triples = example2_closed_form(h, A, A.conjugate())
            real = all(abs(v.imag) <= tol * max(1.0, abs(v)) for t in triples for v in t)
            boundary = abs(3 * im ** 2 - re ** 2 - 3 * abs(h) ** 2) < band
            rows.append({
                'ReA': float(re),
                'ImA': float(im),
                'is_real': real,
                'predicted': None if boundary else example2_is_real_region(h, A),
                'boundary': boundary
            })
    return rows


def scan_agreement(rows: typing.Sequence[typing.Dict[str, typing.Any]]) -> float:
    """
    Fraction of non-boundary cells of :func:`example2_scan` whose reality matches the prediction.
    """
    judged = [r for r in rows if not r['boundary']]
    if not judged:
        return 1.0
    return sum(1 for r in judged if r['is_real'] == r['predicted']) / len(judged)


# +---------------------------------------------------------------------------+
# | HARNESS
# +---------------------------------------------------------------------------+

def _shapes(n_members: int, n: int) -> typing.List[typing.Tuple[typing.List[int], typing.List[int]]]:
    """
    ``(group labels, degrees)`` for every supported shape with Wronskian degree ``n``. Only groups of
    size one or two are generated.
    """
    patterns = [list(range(n_members))]
    if n_members == 2:
        patterns.append([0, 0])
    elif n_members == 3:
        patterns.append([0, 0, 1])
    shapes = []
    for labels in patterns:
        for degrees in np.ndindex(*([n + 2] * n_members)):
            degrees = list(degrees)
            if sum(degrees) > MAX_TOTAL_DEGREE:
                continue
            drops = 0
            ok = True
            for i in range(n_members):
                for j in range(i + 1, n_members):
                    if labels[i] == labels[j]:
                        drops += 1
                        ok = ok and degrees[i] < degrees[j]
            if ok and sum(degrees) - drops == n:
                shapes.append((labels, degrees))
    return shapes


def _draw_strip_roots(rng: np.random.Generator, n: int, h: complex, pairs: int,
                      imag_scale: float) -> typing.List[complex]:
    roots = []  # type: typing.List[complex]
    for _ in range(pairs):
        u = rng.uniform(-2, 2)
        v = rng.uniform(-1, 1) * abs(h) * imag_scale
        roots.extend([complex(u, v), complex(u, -v)])
    roots.extend(complex(rng.uniform(-2, 2), 0) for _ in range(n - 2 * pairs))
    return roots


def _draw_bases(rng: np.random.Generator, count: int) -> typing.List[LogBase]:
    mus = []  # type: typing.List[float]
    while len(mus) < count:
        mu = math.log(rng.uniform(1.0 / 3, 3.0))
        if all(abs(mu - m) > 0.05 for m in mus):
            mus.append(mu)
    return [LogBase(mu) for mu in mus]


def theorem1_trial(index: int,
                   seed: int,
                   n_members: int,
                   n: int,
                   restarts: int = 40,
                   strip_margin: float = 1e-3) -> typing.Dict[str, typing.Any]:
    """
    One randomized trial of the reality theorem: positive bases, an imaginary half-step ``h = i s`` with
    ``s`` in ``[1/2, 2]`` and a real target whose roots lie in ``|Im z| <= |h| (1 - strip_margin)``.
    Every solution found should be a real space.

    :returns: a record with the drawn data, each solution's residual and reality flag and the indices of
        non-real solutions under ``failures``.
    """
    if n_members not in (2, 3):
        raise casorati.InputError('trials support 2 or 3 members, got {}'.format(n_members))
    if not 1 <= n <= 4:
        raise casorati.InputError('trials support Wronskian degrees 1..4, got {}'.format(n))
    rng = np.random.default_rng([seed, index])
    shapes = _shapes(n_members, n)
    labels, degrees = shapes[int(rng.integers(len(shapes)))]
    drawn = _draw_bases(rng, max(labels) + 1)
    bases = [drawn[label] for label in labels]
    h = 1j * rng.uniform(0.5, 2.0)
    roots = _draw_strip_roots(rng, n, h, int(rng.integers(n // 2 + 1)), 1.0 - strip_margin)
    problem = InverseProblem(bases, degrees, h, CPoly.from_roots(roots),
                             seed=[seed, index, 1], restarts=restarts)
    solved = newton_inverse(problem)
    failures = [k for k, s in enumerate(solved.solutions) if not s.real]
    for k in failures:
        hyp = theorem1_hypotheses(solved.spaces[k], h)
        _logger.warning('trial %d: non-real solution %d (hypotheses hold: %s)', index, k, hyp.holds)
    return {
        'index': index,
        'degrees': degrees,
        'mus': [b.mu for b in bases],
        'h': h,
        'roots': roots,
        'solutions': len(solved),
        'residuals': solved.residuals,
        'real': solved.real_flags,
        'degenerate': solved.degenerate_flags,
        'failures': failures
    }


def control_trial(index: int, seed: int, restarts: int = 40, imag_factor: float = 1.5) -> typing.Dict[str, typing.Any]:
    """
    A trial outside the theorem's strip: the two-member family with :func:`counterexample_base` and
    roots ``+- i * imag_factor * |h|``. Non-real solutions are expected.
    """
    rng = np.random.default_rng([seed, index, 2])
    h = 1j * rng.uniform(0.5, 2.0)
    A = 1j * imag_factor * abs(h)
    problem = example1_problem(counterexample_base(h), h, A, seed=[seed, index, 3], restarts=restarts)
    solved = newton_inverse(problem)
    return {
        'index': index,
        'h': h,
        'A': A,
        'solutions': len(solved),
        'residuals': solved.residuals,
        'real': solved.real_flags,
        'nonreal': sum(1 for r in solved.real_flags if not r)
    }


def summarize_theorem1(records: typing.Sequence[typing.Dict[str, typing.Any]],
                       controls: typing.Sequence[typing.Dict[str, typing.Any]] = ()) -> typing.Dict[str, typing.Any]:
    """
    Merges trial records, in index order, into the harness report.
    """
    records = sorted(records, key=lambda r: r['index'])
    controls = sorted(controls, key=lambda r: r['index'])
    residuals = [x for r in records for x in r['residuals']]
    return {
        'trials': len(records),
        'solutions': sum(r['solutions'] for r in records),
        'reality_failures': [{'trial': r['index'], 'solution': k, 'mus': r['mus'], 'h': r['h'], 'roots': r['roots']}
                             for r in records for k in r['failures']],
        'max_residual': max(residuals) if residuals else 0.0,
        'degenerate': sum(1 for r in records for d in r['degenerate'] if d),
        'control_trials': len(controls),
        'control_solutions': sum(c['solutions'] for c in controls),
        'control_nonreal': sum(1 for c in controls if c['nonreal'] > 0)
    }


def theorem1_harness(trials: int, n_members: int, n: int, seed: int = 0,
                     restarts: int = 40, control_trials: int = 0) -> typing.Dict[str, typing.Any]:
    """
    Sequential harness run. The ``theorem1`` verification suite runs the same trials concurrently.
    """
    records = [theorem1_trial(i, seed, n_members, n, restarts) for i in range(trials)]
    controls = [control_trial(i, seed, restarts) for i in range(control_trials)]
    return summarize_theorem1(records, controls)


def round_trip(space: QESpace, h: complex, seed: typing.Any = 0, restarts: int = 40) -> typing.Tuple[SolutionSet, bool]:
    """
    Feeds the monic Wronskian of ``space`` back into :func:`newton_inverse` and reports whether ``space``
    itself is among the solutions. Members must already be monic and in echelon form.
    """
    wr = monic_wronskian(space, h)
    degrees = [m.p.degree for m in space.members]
    problem = InverseProblem([m.base for m in space.members], degrees, h, wr.w, seed=seed, restarts=restarts)
    solved = newton_inverse(problem)
    return solved, solved.find(space) is not None


def roots_error(space: QESpace, h: complex, roots: typing.Sequence[complex]) -> float:
    """
    Matched distance between the roots of the monic Wronskian of ``space`` and ``roots``.
    """
    return match_roots(monic_wronskian(space, h).w.roots(), roots)
