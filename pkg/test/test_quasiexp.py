#
# Copyright 2026 The Casorati Authors.
# This software is distributed under the terms of the MIT License.
#
import math

import numpy as np
import pytest

import casorati
from casorati.inverse import example1_solve
from casorati.poly import CPoly, match_roots
from casorati.quasiexp import (BETHE_HALF_STEP, MATRIX_Z_HALF_STEP, LogBase, QESpace, QuasiExp, casoratian,
                               differential_wronskian, is_real_space, limit_errors, monic_wronskian,
                               rescale_space, shifts, theorem1_hypotheses)


def _space(*members: QuasiExp) -> QESpace:
    return QESpace(list(members))


def _qe(coeffs: list, mu: complex = 0) -> QuasiExp:
    return QuasiExp(CPoly(coeffs), LogBase(mu))


def _example1_space(q: float, h: complex, A: complex) -> QESpace:
    a, b = example1_solve(q, h, A)[0]
    return _space(_qe([a, 1]), QuasiExp(CPoly([b, 1]), LogBase.from_value(q)))


def test_step_conventions() -> None:
    assert BETHE_HALF_STEP == 0.5
    assert MATRIX_Z_HALF_STEP == 1j


def test_log_base() -> None:
    negative = LogBase.from_value(-2.0)
    assert negative.is_real()
    assert not negative.is_positive()
    assert LogBase(0.5).same_as(LogBase(0.5 + 2j * math.pi))
    assert not LogBase(0.5).same_as(LogBase(0.5 + 1j * math.pi))
    assert LogBase(1).has_unit_shift(1j)
    assert not LogBase(1).has_unit_shift(1)
    assert abs(LogBase(math.log(3)).power(2) - 9) < 1e-12
    with pytest.raises(casorati.InputError):
        LogBase.from_value(0)


def test_zero_polynomial_member() -> None:
    with pytest.raises(casorati.InputError):
        QuasiExp(CPoly([]), LogBase(0))


def test_space_errors() -> None:
    with pytest.raises(casorati.InputError):
        QESpace([])
    with pytest.raises(casorati.DegenerateInputError, match='dependent members'):
        _space(_qe([1, 1]), _qe([2, 2]))


def test_shifts() -> None:
    assert [-2j, 0, 2j] == shifts(3, 1j)


def test_casoratian_of_one_and_x() -> None:
    for h in (1j, 0.25 - 0.5j, 3):
        p, mu = casoratian([_qe([1]), _qe([0, 1])], h)
        assert p.isclose(CPoly([2 * h]))
        assert 0 == mu


def test_casoratian_single_member() -> None:
    f = _qe([1, -2, 3], 0.75)
    p, mu = casoratian([f], 0.5j)
    assert p.isclose(f.p)
    assert mu == 0.75


def test_casoratian_errors() -> None:
    with pytest.raises(casorati.InputError, match='zero step'):
        casoratian([_qe([1])], 0)
    with pytest.raises(casorati.InputError):
        casoratian([], 1j)


def test_example1_casoratian() -> None:
    """
    The closed-form pair reproduces (Q^h - Q^-h)(x + A)(x - A).
    """
    q, h, A = math.e, 1j, 1.0
    base = LogBase.from_value(q)
    for a, b in example1_solve(q, h, A):
        p, mu = casoratian([_qe([a, 1]), QuasiExp(CPoly([b, 1]), base)], h)
        expected = CPoly([-A * A, 0, 1]) * (base.power(h) - base.power(-h))
        assert p.isclose(expected, rtol=1e-9)
        assert mu == pytest.approx(1)


def test_monic_wronskian() -> None:
    wr = monic_wronskian(_space(_qe([1]), _qe([0, 1])), 1j)
    assert wr.w.isclose(CPoly([1]))
    assert 0 == wr.mu_total
    assert wr.leading == pytest.approx(2j)


def test_monic_wronskian_example1_roots() -> None:
    wr = monic_wronskian(_example1_space(2.0, 1j, 0.5), 1j)
    assert match_roots(wr.w.roots(), [0.5, -0.5]) < 1e-9


def test_is_real_space() -> None:
    assert is_real_space(_space(_qe([1, 1], 1), _qe([-2, 1], 2)))
    assert is_real_space(_space(_qe([1j, 1], 1), _qe([-1j, 1], 1)))
    assert not is_real_space(_space(_qe([1j, 1], 1), _qe([0, 1], 2)))
    with pytest.raises(casorati.InputError, match='reality test undefined for non-real bases'):
        is_real_space(_space(_qe([1], 0.5j)))


def test_rescale_space() -> None:
    rescaled = rescale_space(_space(_qe([1]), _qe([0, 1])), 0.5j)
    expected = _space(_qe([1]), _qe([1.5j, 1j]))
    assert rescaled.distance(expected) < 1e-12
    with pytest.raises(casorati.InputError):
        rescale_space(_space(_qe([1])), 0)
    with pytest.raises(casorati.InputError):
        rescale_space(_space(_qe([1])), 1 + 1j)
    assert rescale_space(_space(_qe([1]), _qe([0, 1])), 0.5j, 2).distance(expected) < 1e-12
    with pytest.raises(casorati.InputError, match='rank 3 given for a space of rank 2'):
        rescale_space(_space(_qe([1]), _qe([0, 1])), 0.5j, 3)


def test_rescaled_roots() -> None:
    """
    Roots z at half-step h map to z / (2h) - (N + 1) / 2 at half-step 1/2.
    """
    h = 0.5j
    space = _example1_space(math.e, h, 0.3)
    roots = monic_wronskian(space, h).w.roots()
    rescaled = monic_wronskian(rescale_space(space, h), 0.5).w.roots()
    assert match_roots(rescaled, [z / (2 * h) - 1.5 for z in roots]) < 1e-8


def _random_space(rng: np.random.Generator) -> QESpace:
    """
    Three members sharing one complex base and one member with another.
    """
    def poly(degree: int) -> list:
        return list(rng.normal(size=degree) + 1j * rng.normal(size=degree)) + [1]

    mu = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
    other = complex(rng.uniform(1.5, 2), rng.uniform(-0.5, 0.5))
    return _space(_qe(poly(0), mu), _qe(poly(1), mu), _qe(poly(3), mu), _qe(poly(1), other))


@pytest.mark.parametrize('seed', range(4))
def test_monic_wronskian_is_basis_free(seed: int) -> None:
    rng = np.random.default_rng(seed)
    space = _random_space(rng)
    h = complex(rng.uniform(-0.3, 0.3), rng.uniform(0.5, 1))
    mixing = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    group = space.members[:3]
    mixed = [QuasiExp(sum((g.p * complex(mixing[i, j]) for j, g in enumerate(group)), CPoly([0])), group[0].base)
             for i in range(3)]
    scaled = mixed + [QuasiExp(space.members[3].p * 5, space.members[3].base)]

    original = monic_wronskian(space, h)
    recombined = monic_wronskian(QESpace(scaled), h)
    assert recombined.w.distance(original.w) < 1e-8 * max(1.0, original.w.scale)
    assert abs(recombined.mu_total - original.mu_total) < 1e-12


@pytest.mark.parametrize('seed', range(4))
def test_casoratian_conjugation(seed: int) -> None:
    rng = np.random.default_rng(seed)
    space = _random_space(rng)
    h = complex(rng.uniform(-0.3, 0.3), rng.uniform(0.5, 1))
    p, mu = casoratian(space.members, h)
    p_bar, mu_bar = casoratian(space.conjugate().members, h.conjugate())
    assert p_bar.distance(p.conj()) < 1e-10 * max(1.0, p.scale)
    assert mu_bar == pytest.approx(mu.conjugate())


def test_space_distance_is_basis_free() -> None:
    one = _space(_qe([1, 1]), _qe([-1, 1]))
    two = _space(_qe([1]), _qe([0, 1]))
    assert one.distance(two) < 1e-12
    assert math.inf == one.distance(_space(_qe([1]), _qe([0, 1], 1)))


def test_hypotheses_real_example() -> None:
    report = theorem1_hypotheses(_example1_space(math.e, 1j, 1.0), 1j)
    assert report.holds
    assert report.unit_shift
    assert report.max_root_imag < 1e-9


def test_hypotheses_outside_strip() -> None:
    report = theorem1_hypotheses(_example1_space(math.e, 1j, 1.5j), 1j)
    assert not report.strip_roots
    assert not report.holds
    assert report.max_root_imag == pytest.approx(1.5, abs=1e-8)


def test_hypotheses_vanishing_wronskian(monkeypatch) -> None:  # type: ignore
    def vanishing(space: QESpace, h: complex) -> None:
        raise casorati.DegenerateInputError('dependent members')

    monkeypatch.setattr('casorati.quasiexp.monic_wronskian', vanishing)
    report = theorem1_hypotheses(_space(_qe([1]), _qe([1], math.pi)), 1j)
    assert report.real_bases and report.imaginary_step and report.unit_shift
    assert not report.nonzero_wronskian
    assert not report.real_coefficients and not report.strip_roots
    assert not report.holds
    assert math.inf == report.max_root_imag


def test_hypotheses_real_step() -> None:
    report = theorem1_hypotheses(_space(_qe([1]), _qe([0, 1])), 1)
    assert not report.imaginary_step
    assert not report.holds


def test_differential_wronskian() -> None:
    p, mu = differential_wronskian(_space(_qe([1]), _qe([0, 1])))
    assert p.isclose(CPoly([1])) and mu == 0
    p, _ = differential_wronskian(_space(_qe([1]), _qe([0, 1]), _qe([0, 0, 1])))
    assert p.isclose(CPoly([2]))
    p, mu = differential_wronskian(_space(_qe([1], 1), _qe([1], 2)))
    assert p.isclose(CPoly([1])) and mu == 3


def test_limit_errors_decrease() -> None:
    space = _space(_qe([1, 1]), _qe([-2, 0, 1], 0.5))
    errors = limit_errors(space, (2, 3, 4))
    assert [abs(h) for h, _ in errors] == pytest.approx([1e-2, 1e-3, 1e-4])
    assert errors[1][1] < errors[0][1]
    assert errors[0][1] < 0.1
