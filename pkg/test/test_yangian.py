#
# Copyright 2026 The Casorati Authors.
# This software is distributed under the terms of the MIT License.
#
import cmath
import typing

import numpy as np
import pytest

import casorati
from casorati.poly import CPoly, RationalFn
from casorati.quasiexp import LogBase, QESpace, QuasiExp
from casorati.yangian import (BetheSetup, DiffOpScalar, TensorOp, all_transfers, bethe_eigensystem,
                              bethe_pipeline, check_adjoint, check_antipode, check_central, check_commutativity,
                              check_exchange, check_form_covariance, check_pencil, check_qdet, check_rtt,
                              eigenvalue_symmetry, flip, form_k, kernel_residual, monodromy, qdet, qe_kernel,
                              r_check, r_matrix, relative_residual, rescaled_setup, t_minor, transfer_B)

TOL = 1e-9
X = 0.37 + 0.11j
Y = -1.3 + 0.4j


@pytest.fixture
def chain() -> BetheSetup:
    return BetheSetup(2, [1.5, 0.5 + 0.5j], [0.3, -0.7 + 0.2j])


@pytest.fixture
def symmetric_chain() -> BetheSetup:
    """
    Unimodular twist and points closed under ``v -> -conj(v)`` with the first two swapped.
    """
    return BetheSetup(2, [cmath.exp(0.3j), cmath.exp(-1.1j)], [0.2 + 0.5j, -0.2 + 0.5j])


def test_setup_errors() -> None:
    with pytest.raises(casorati.InputError, match='rank must be positive'):
        BetheSetup(0, [], [0])
    with pytest.raises(casorati.InputError, match='twist entries'):
        BetheSetup(2, [1], [0])
    with pytest.raises(casorati.InputError, match='zero twist'):
        BetheSetup(2, [1, 0], [0])
    with pytest.raises(casorati.InputError, match='at least one site'):
        BetheSetup(2, [1, 1], [])
    with pytest.raises(casorati.InputError, match='exceed'):
        BetheSetup(3, [1, 1, 1], [0.1 * i for i in range(9)])


def test_b_and_b_q() -> None:
    setup = BetheSetup(2, [1, 1], [0])
    assert setup.b(1) == pytest.approx(2)
    assert setup.with_q([2, 3]).b_q(1) == pytest.approx(12)
    with pytest.raises(casorati.DegenerateInputError, match='pole'):
        setup.b(0)


def test_pole_denominator() -> None:
    setup = BetheSetup(2, [1, 1], [0.5])
    roots = sorted(setup.pole_denominator(2).roots(), key=lambda r: r.real)
    assert roots == pytest.approx([0.5, 1.5], abs=1e-9)
    assert setup.pole_denominator(0).isclose(CPoly([1]))


def test_tensor_op_algebra() -> None:
    p = flip(2)
    eye = TensorOp.identity(2, 2)
    assert relative_residual((p @ p).matrix, eye.matrix) < TOL
    assert relative_residual((r_check(2, 0.3) - p * 0.3).matrix, eye.matrix) < TOL
    with pytest.raises(casorati.InputError, match='shape'):
        TensorOp(2, 2, np.eye(3))


def test_r_matrix_pole() -> None:
    with pytest.raises(casorati.DegenerateInputError):
        r_matrix(2, 0)


def test_r_matrix_unitarity() -> None:
    u = 0.7 + 0.2j
    product = (r_matrix(2, u) @ r_matrix(2, -u)).matrix
    assert relative_residual(product, (1 - 1 / u ** 2) * np.eye(4)) < TOL


def test_monodromy_far_away() -> None:
    setup = BetheSetup(2, [1, 1], [0.4, -0.2])
    assert np.allclose(monodromy(setup, 1e8).matrix, np.eye(8), atol=1e-6)


def test_identities(chain: BetheSetup) -> None:
    assert check_rtt(chain, X, Y) < TOL
    assert check_commutativity(chain, X, Y) < TOL
    assert check_qdet(chain, X) < TOL
    assert check_central(chain, X) < TOL
    for j in range(chain.N + 1):
        assert check_adjoint(chain, j, X) < TOL


def _random_chain(rng: np.random.Generator, N: int, n: int) -> BetheSetup:
    Q = [complex(rng.uniform(0.5, 2.0), rng.uniform(-0.5, 0.5)) for _ in range(N)]
    return BetheSetup(N, Q, [complex(rng.normal(0, 1), rng.normal(0, 0.5)) for _ in range(n)])


def _random_point(rng: np.random.Generator) -> complex:
    return complex(rng.uniform(-1, 1), rng.choice([-1, 1]) * rng.uniform(2.5, 3.5))


def _random_symmetric_chain(rng: np.random.Generator, N: int, n: int) -> typing.Tuple[BetheSetup, int]:
    roots = []  # type: typing.List[complex]
    if n >= 2:
        u = rng.uniform(-1, 1)
        roots += [complex(u, 0.2), complex(u, -0.2)]
    roots += [complex(rng.uniform(-2, 2), 0) for _ in range(n - len(roots))]
    return rescaled_setup(list(rng.uniform(-1, 1, N)), roots, 0.5j)


@pytest.mark.timeout(120)
@pytest.mark.parametrize('N', [2, 3])
@pytest.mark.parametrize('n', [1, 2, 3])
def test_identity_battery(N: int, n: int) -> None:
    rng = np.random.default_rng([N, n, 17])
    setup = _random_chain(rng, N, n)
    x, y = _random_point(rng), _random_point(rng)
    assert check_rtt(setup, x, y) < 1e-8
    assert check_commutativity(setup, x, y) < 1e-8
    assert check_qdet(setup, x) < 1e-8
    assert check_central(setup, x) < 1e-8
    assert max(check_adjoint(setup, j, x) for j in range(N + 1)) < 1e-8
    assert max(check_pencil(setup, k, [_random_point(rng)]) for k in range(1, N + 1)) < 1e-8
    antipode = check_antipode(setup, x)
    assert max([antipode.inverse_transpose, antipode.minor_duality] + antipode.transfer_duality) < 1e-8
    for i in range(n - 1):
        assert max(check_exchange(setup, i, x)) < 1e-8

    symmetric, pairs = _random_symmetric_chain(rng, N, n)
    assert pairs == (1 if n >= 2 else 0)
    assert all(abs(abs(q) - 1) < 1e-12 for q in symmetric.Q)
    assert form_k(symmetric, pairs).is_positive_definite()
    assert max(check_form_covariance(symmetric, pairs, j, x) for j in range(N + 1)) < 1e-8


def test_pencil(chain: BetheSetup) -> None:
    samples = [2.1 + 3j, -0.4 - 2.7j]
    for k in range(1, chain.N + 1):
        assert check_pencil(chain, k, samples) < TOL


def test_exchange(chain: BetheSetup) -> None:
    assert max(check_exchange(chain, 0, X)) < TOL
    with pytest.raises(casorati.InputError, match='exchange site'):
        check_exchange(chain, 1, X)


def test_exchange_equal_points() -> None:
    setup = BetheSetup(2, [1.5, 0.5], [0.3, 0.3])
    assert max(check_exchange(setup, 0, X)) < TOL


def test_antipode() -> None:
    setup = BetheSetup(2, [1.5, 0.5 + 0.5j], [0.3 + 0.2j])
    residuals = check_antipode(setup, X)
    assert residuals.inverse_transpose < TOL
    assert residuals.minor_duality < TOL
    assert len(residuals.transfer_duality) == 3
    assert max(residuals.transfer_duality) < TOL


def test_minor_reorder(chain: BetheSetup) -> None:
    straight = t_minor(chain, [0, 1], [0, 1], X).matrix
    swapped = t_minor(chain, [1, 0], [0, 1], X).matrix
    assert relative_residual(swapped, -straight) < TOL
    assert np.allclose(t_minor(chain, [0, 0], [0, 1], X).matrix, 0)
    assert relative_residual(qdet(chain, X).matrix, straight) < TOL


def test_minor_errors(chain: BetheSetup) -> None:
    with pytest.raises(casorati.InputError, match='minor of'):
        t_minor(chain, [0, 1], [0], X)
    with pytest.raises(casorati.InputError, match='out of range'):
        t_minor(chain, [2], [0], X)
    with pytest.raises(casorati.InputError, match='transfer matrix index'):
        transfer_B(chain, 3, X)


def test_transfers_shape(chain: BetheSetup) -> None:
    transfers = all_transfers(chain, X)
    assert len(transfers) == chain.N + 1
    assert np.allclose(transfers[0], np.eye(chain.dimension))
    assert relative_residual(transfers[1], transfer_B(chain, 1, X).matrix) < TOL


def test_form_k_identity(chain: BetheSetup) -> None:
    form = form_k(chain, 0)
    assert np.allclose(form.gram, np.eye(chain.dimension))
    assert form.differences == []


def test_form_k_positive(symmetric_chain: BetheSetup) -> None:
    form = form_k(symmetric_chain, 1)
    assert form.differences == pytest.approx([0.4])
    assert form.hermitian_residual < TOL
    assert form.is_positive_definite()
    assert form.min_eigenvalue == pytest.approx(0.6)


def test_form_k_edge() -> None:
    setup = BetheSetup(2, [1, 1], [0.5 + 0.5j, -0.5 + 0.5j])
    form = form_k(setup, 1)
    assert abs(form.min_eigenvalue) < TOL
    assert not form.is_positive_definite()


def test_form_k_errors(chain: BetheSetup) -> None:
    with pytest.raises(casorati.InputError, match='pairs need'):
        form_k(chain, 2)
    with pytest.raises(casorati.InputError, match='non-real difference'):
        form_k(chain, 1)


def test_form_covariance(symmetric_chain: BetheSetup) -> None:
    for j in range(symmetric_chain.N + 1):
        assert check_form_covariance(symmetric_chain, 1, j, X) < TOL


def test_rescaled_setup() -> None:
    setup, pairs = rescaled_setup([0, 0.5], [1 + 0.2j, 3, 1 - 0.2j], 0.5j)
    assert pairs == 1
    assert setup.N == 2
    assert setup.z == pytest.approx([0.2 - 1j, -0.2 - 1j, -3j])
    assert setup.Q == pytest.approx([1, cmath.exp(0.5j)])
    assert form_k(setup, pairs).is_positive_definite()


def test_rescaled_setup_errors() -> None:
    with pytest.raises(casorati.InputError, match='no conjugate partner'):
        rescaled_setup([0], [1 + 0.2j], 0.5j)
    with pytest.raises(casorati.InputError, match='zero step'):
        rescaled_setup([0], [1], 0)


def test_qe_kernel_doubling() -> None:
    doubling = DiffOpScalar([RationalFn(CPoly([2]), CPoly([1]))])
    kernel = qe_kernel(doubling, [cmath.log(2)], 2)
    assert kernel.rank == 1
    assert kernel.members[0].p.isclose(CPoly([1]))
    assert kernel_residual(doubling, kernel, [0.5, 1.5 + 1j]) < TOL


def test_qe_kernel_wrong_base() -> None:
    difference = DiffOpScalar([RationalFn(CPoly([1]), CPoly([1]))])
    with pytest.raises(casorati.DegenerateInputError, match='degree bound too low'):
        qe_kernel(difference, [0.5], 2)
    with pytest.raises(casorati.InputError, match='negative degree'):
        qe_kernel(difference, [0], -1)


def test_kernel_residual_nonzero() -> None:
    difference = DiffOpScalar([RationalFn(CPoly([1]), CPoly([1]))])
    linear = QESpace([QuasiExp(CPoly([0, 1]), LogBase(0))])
    assert kernel_residual(difference, linear, [0.0]) == pytest.approx(1)


def test_diff_op_errors() -> None:
    with pytest.raises(casorati.InputError):
        DiffOpScalar([])


@pytest.mark.timeout(60)
def test_eigensystem(chain: BetheSetup) -> None:
    eigensystem = bethe_eigensystem(chain, seed=5)
    assert len(eigensystem) == chain.dimension
    for eigen in eigensystem:
        assert eigen.fit_residual < 1e-8
        assert eigen.operator.order == chain.N
        assert abs(eigen.operator.coefficient(2, X) - chain.b_q(X)) < 1e-7 * max(1.0, abs(chain.b_q(X)))


def test_eigensystem_repeated_points() -> None:
    with pytest.raises(casorati.DegenerateInputError, match='repeated'):
        bethe_eigensystem(BetheSetup(2, [1.5, 0.5], [0.3, 0.3]))


@pytest.mark.timeout(60)
def test_pipeline(chain: BetheSetup) -> None:
    results = bethe_pipeline(chain, seed=5)
    assert len(results) == chain.dimension
    for r in results:
        assert r.space.rank == chain.N
        assert r.roots_error < 1e-6
        assert r.top_coefficient_error < 1e-6


@pytest.mark.timeout(60)
def test_eigenvalue_symmetry() -> None:
    inside, pairs = rescaled_setup([0.1, 0.7], [0.3 + 0.2j, 0.3 - 0.2j], 0.5j)
    assert pairs == 1
    eigensystem = bethe_eigensystem(inside, seed=2)
    assert eigenvalue_symmetry(inside, eigensystem, [0.4 + 2.8j, -0.6 - 3.1j]) < 1e-8
