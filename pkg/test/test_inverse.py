#
# Copyright 2026 The Casorati Authors.
# This software is distributed under the terms of the MIT License.
#
import math

import numpy as np
import pytest

import casorati
from casorati.inverse import (InverseProblem, control_trial, counterexample_base, damped_newton, example1_grid,
                              example1_problem, example1_solve, example2_c_discrepancy, example2_closed_form,
                              example2_is_real_region, example2_printed_c, example2_problem, example2_scan,
                              example2_solve, newton_inverse, round_trip, roots_error, scan_agreement,
                              summarize_theorem1, theorem1_harness, theorem1_trial)
from casorati.poly import CPoly
from casorati.quasiexp import LogBase, QESpace, QuasiExp, is_real_space


class _Square:
    """
    u**2 - 4 as a residual with its Jacobian.
    """

    def __call__(self, u: np.ndarray) -> np.ndarray:
        return u * u - 4

    def jacobian(self, u: np.ndarray) -> np.ndarray:
        return np.diag(2 * u)


def test_damped_newton() -> None:
    u, norm = damped_newton(_Square(), np.array([3.0 + 0.1j]))
    assert norm < 1e-10
    assert abs(u[0] - 2) < 1e-10


def test_problem_errors() -> None:
    target = CPoly([-1, 0, 1])
    with pytest.raises(casorati.InputError, match='zero step'):
        InverseProblem([LogBase(0), LogBase(1)], [1, 1], 0, target)
    with pytest.raises(casorati.InputError):
        InverseProblem([LogBase(0)], [1, 1], 1j, target)
    with pytest.raises(casorati.InputError):
        InverseProblem([LogBase(0), LogBase(1)], [1, 2], 1j, target)
    with pytest.raises(casorati.InputError):
        InverseProblem([LogBase(0), LogBase(0)], [2, 2], 1j, target)
    with pytest.raises(casorati.InputError):
        InverseProblem([LogBase(0), LogBase(1)], [1, 1], 1j, CPoly([]))


def test_problem_unknowns() -> None:
    """
    Powers held by a lower-degree member of the same group are gauged away.
    """
    problem = InverseProblem([LogBase(0), LogBase(0)], [1, 3], 1j, CPoly([0, 1, 2, 3]))
    assert [(0, 0), (1, 0), (1, 2)] == problem.unknowns
    assert 3 == problem.expected_degree


def test_explicit_problem() -> None:
    """
    Wr(x + a, x^2 + c) at h = i is monic x^2 + 2a x - (c - 1); the target x^2 - 1 has one solution.
    """
    problem = InverseProblem([LogBase(0), LogBase(0)], [1, 2], 1j, CPoly([-1, 0, 1]), seed=1, restarts=10)
    solved = newton_inverse(problem)
    assert 1 == len(solved)
    a, c = solved.solutions[0].unknowns
    assert abs(a) < 1e-8
    assert abs(c - 2) < 1e-8
    assert solved.real_flags == [True]


def test_example1_closed_form() -> None:
    pairs = example1_solve(math.e, 1j, 1.0)
    a_values = sorted(a.real for a, _ in pairs)
    assert a_values[0] == pytest.approx(-0.9111, abs=1e-4)
    assert a_values[1] == pytest.approx(2.1955, abs=1e-4)
    exact = (math.cos(1) + math.sqrt(1 + math.sin(1) ** 2)) / math.sin(1)
    assert a_values[1] == pytest.approx(exact, abs=1e-12)


def test_example1_imaginary_inside_strip() -> None:
    for q in (0.5, 2.0, math.e):
        for a, b in example1_solve(q, 1j, 0.7j):
            assert abs(a.imag) < 1e-9 and abs(b.imag) < 1e-9


def test_example1_counterexample() -> None:
    pairs = example1_solve(counterexample_base(1j), 1j, 1.5j)
    assert all(abs(a.imag) > 1e-6 for a, _ in pairs)


def test_example1_degenerate_base() -> None:
    with pytest.raises(casorati.DegenerateInputError, match='degenerate base'):
        example1_solve(1.0, 1j, 1.0)


def test_example1_newton_matches_closed_form() -> None:
    solved = newton_inverse(example1_problem(math.e, 1j, 1.0, seed=0, restarts=30))
    closed = example1_solve(math.e, 1j, 1.0)
    assert 2 == len(solved)
    for s in solved.solutions:
        assert min(abs(s.unknowns[0] - a) for a, _ in closed) < 1e-7
    assert all(solved.real_flags)


def test_example2_real_parameters() -> None:
    triples = example2_solve(1j, 1.0, 2.0)
    assert 2 == len(triples)
    for (a, b, c), (a0, b0, c0) in zip(triples, example2_closed_form(1j, 1.0, 2.0)):
        assert abs(a - a0) < 1e-7 and abs(b - b0) < 1e-7 and abs(c - c0) < 1e-7
        assert abs(a.imag) < 1e-9 and abs(b.imag) < 1e-9 and abs(c.imag) < 1e-9


def test_example2_zero_target() -> None:
    triples = example2_solve(1j, 0, 0)
    assert 2 == len(triples)


def test_example2_hyperbola() -> None:
    assert example2_is_real_region(1j, complex(0.5, 0.5))
    assert not example2_is_real_region(1j, complex(0.0, 2.0))
    assert scan_agreement(example2_scan(1j, 3.0, 10)) >= 0.98


def test_example2_problem_shape() -> None:
    problem = example2_problem(1j, 1.0, 2.0)
    assert [1, 3] == problem.degrees
    assert 3 == len(problem.unknowns)


def test_example2_printed_constant_differs() -> None:
    assert example2_c_discrepancy(1j, 1.0, 2.0) > 1e-3
    printed = example2_printed_c(1j, 1.0, 2.0)
    assert printed == pytest.approx([-10 - math.sqrt(6) / 3, -10 + math.sqrt(6) / 3])


def test_example1_grid_agrees() -> None:
    rows = example1_grid()
    assert all(r['agrees'] for r in rows)
    assert any(r['expect_real'] is False for r in rows)
    assert any(r['counterexample'] and not any(r['real']) for r in rows)


def test_theorem1_trial() -> None:
    record = theorem1_trial(0, 11, 2, 2, restarts=20)
    assert [] == record['failures']
    assert all(r < 1e-7 for r in record['residuals'])
    report = summarize_theorem1([record])
    assert 1 == report['trials']
    assert [] == report['reality_failures']


@pytest.mark.timeout(120)
def test_theorem1_three_members() -> None:
    report = theorem1_harness(3, 3, 3, seed=5)
    assert 3 == report['trials']
    assert report['solutions'] > 0
    assert [] == report['reality_failures']
    assert report['max_residual'] < 1e-7


def test_strip_boundary_is_real() -> None:
    """
    Roots at exactly ``Im z = +-|h|``: the two spaces are ``a = 0`` and ``a = 2 cot(log 2)``, both real.
    """
    closed = sorted(a.real for a, _ in example1_solve(2.0, 1j, 1j))
    assert closed == pytest.approx([0, 2 / math.tan(math.log(2))], abs=1e-9)
    assert all(abs(a.imag) < 1e-9 for a, _ in example1_solve(2.0, 1j, 1j))

    solved = newton_inverse(example1_problem(2.0, 1j, 1j, seed=2, restarts=30))
    assert 2 == len(solved)
    assert all(solved.real_flags)
    assert sorted(s.unknowns[0].real for s in solved.solutions) == pytest.approx(closed, abs=1e-7)


@pytest.mark.parametrize('A', [0.3 + 1.5j, -0.8 + 2j])
def test_solutions_closed_under_conjugation(A: complex) -> None:
    """
    Real base and real target but outside the reality region: the non-real solutions come in conjugate pairs.
    """
    h, B = 1j, A.conjugate()
    guesses = [[a, c, b] for a, b, c in example2_closed_form(h, A, B)]
    solved = newton_inverse(example2_problem(h, A, B, seed=3, restarts=20, initial_guesses=guesses))
    assert len(solved) >= 2
    assert not any(solved.real_flags)
    for space in solved.spaces:
        assert min(space.conjugate().distance(other) for other in solved.spaces) < 1e-6


def test_theorem1_trial_errors() -> None:
    with pytest.raises(casorati.InputError):
        theorem1_trial(0, 0, 4, 2)
    with pytest.raises(casorati.InputError):
        theorem1_trial(0, 0, 2, 5)


def test_control_trial_finds_nonreal() -> None:
    record = control_trial(0, 3, restarts=30)
    assert record['solutions'] > 0
    assert record['nonreal'] > 0


def test_round_trip() -> None:
    space = QESpace([QuasiExp(CPoly([0.3, 1]), LogBase(0)), QuasiExp(CPoly([-0.5, 0, 1]), LogBase(0))])
    solved, found = round_trip(space, 1j, seed=4, restarts=20)
    assert found
    assert all(is_real_space(s) for s in solved.spaces)


def test_roots_error() -> None:
    space = QESpace([QuasiExp(CPoly([1]), LogBase(0)), QuasiExp(CPoly([0, 1]), LogBase(1))])
    h = 1j
    from casorati.quasiexp import monic_wronskian
    roots = monic_wronskian(space, h).w.roots()
    assert roots_error(space, h, roots) < 1e-12
