#
# Copyright 2026 The Casorati Authors.
# This software is distributed under the terms of the MIT License.
#
import io
import json
import math

import numpy as np
import pytest

import casorati
import casorati.version
from casorati.codec import (decode_complex, decode_problem, decode_space, decode_zdata, dump, dumps, encode, load,
                            make_report, write_scan_csv)
from casorati.poly import CPoly
from casorati.quasiexp import LogBase, QESpace, QuasiExp


def _load(paths_for_test, name: str):  # type: ignore
    with open(str(paths_for_test(name)), 'r') as f:
        return load(f)


def test_encode_scalars() -> None:
    assert encode(1 + 2j) == [1.0, 2.0]
    assert encode(np.complex128(-1j)) == [-0.0, -1.0]
    assert encode(np.float64(0.5)) == 0.5
    assert encode(np.array([1, 2j])) == [[1.0, 0.0], [0.0, 2.0]]
    assert encode(None) is None
    assert encode(True) is True


def test_encode_space() -> None:
    space = QESpace([QuasiExp(CPoly([1, 1]), LogBase(0)), QuasiExp(CPoly([-2, 0, 1]), LogBase(0.5))])
    encoded = encode(space)
    assert encoded['members'][0] == {'coeffs': [[1.0, 0.0], [1.0, 0.0]], 'mu': [0.0, 0.0]}
    assert encoded['members'][1]['mu'] == [0.5, 0.0]
    assert decode_space(encoded).distance(space) < 1e-12


def test_encode_unknown() -> None:
    with pytest.raises(casorati.InputError, match='cannot encode'):
        encode(object())


def test_dumps_is_deterministic() -> None:
    document = {'b': [1 + 1j, 2], 'a': {'y': 1.5, 'x': np.int64(3)}}
    text = dumps(document)
    assert text == dumps(dict(reversed(list(document.items()))))
    assert list(json.loads(text).keys()) == ['a', 'b']


def test_dump_newline() -> None:
    stream = io.StringIO()
    dump({'a': 1}, stream)
    assert stream.getvalue().endswith('}\n')


def test_make_report() -> None:
    report = make_report('wronskian', {'w': [1]}, {'tol': 1e-9})
    assert report['command'] == 'wronskian'
    assert report['version'] == casorati.version.__version__
    assert report['config'] == {'tol': 1e-9}
    assert report['result'] == {'w': [1]}


def test_load_malformed(paths_for_test) -> None:  # type: ignore
    with pytest.raises(casorati.InputError, match='malformed JSON'):
        _load(paths_for_test, 'malformed.json')


def test_decode_complex() -> None:
    assert decode_complex(2) == 2
    assert decode_complex([0.5, -1]) == 0.5 - 1j
    for bad in (True, 'x', [1, 2, 3], [1, 'a'], None):
        with pytest.raises(casorati.InputError):
            decode_complex(bad)


def test_decode_space_file(paths_for_test) -> None:  # type: ignore
    space = decode_space(_load(paths_for_test, 'space_linear.json'))
    assert space.rank == 2
    assert space.members[1].p.isclose(CPoly([0, 1]))
    assert space.mu_total == 0


def test_decode_space_dependent(paths_for_test) -> None:  # type: ignore
    with pytest.raises(casorati.DegenerateInputError, match='dependent'):
        decode_space(_load(paths_for_test, 'space_dependent.json'))


def test_decode_space_alias_and_bases() -> None:
    space = decode_space({'members': [{'p': [1]}, {'coeffs': [0, 1], 'Q': -1}, {'p': [1], 'mu': [0, 0.25]}]})
    assert space.members[0].p.isclose(CPoly([1]))
    assert space.members[1].base.mu == pytest.approx(1j * math.pi)
    assert space.members[2].base.mu == pytest.approx(0.25j)


def test_decode_space_errors() -> None:
    with pytest.raises(casorati.InputError, match='missing field "members"'):
        decode_space({})
    with pytest.raises(casorati.InputError, match='must be a JSON list'):
        decode_space({'members': {}})
    with pytest.raises(casorati.InputError, match='missing field "coeffs"'):
        decode_space({'members': [{'mu': 1}]})
    with pytest.raises(casorati.InputError, match='zero base'):
        decode_space({'members': [{'coeffs': [1], 'Q': 0}]})
    with pytest.raises(casorati.InputError, match='expected a JSON object'):
        decode_space([])


def test_decode_example1(paths_for_test) -> None:  # type: ignore
    problem = decode_problem(_load(paths_for_test, 'problem_example1.json'))
    assert problem.degrees == [1, 1]
    assert problem.h == 1j
    assert problem.seed == 3
    assert problem.bases[1].mu == pytest.approx(math.log(2))
    assert problem.target.isclose(CPoly([-0.25, 0, 1]))


def test_decode_example2(paths_for_test) -> None:  # type: ignore
    problem = decode_problem(_load(paths_for_test, 'problem_example2.json'))
    assert problem.degrees == [1, 3]
    assert problem.seed == 5
    assert problem.target.isclose(CPoly.from_roots([0, 1 + 0.5j, 1 - 0.5j]))


def test_decode_explicit(paths_for_test) -> None:  # type: ignore
    problem = decode_problem(_load(paths_for_test, 'problem_explicit.json'))
    assert problem.degrees == [1, 2]
    assert problem.target.isclose(CPoly([-1, 0, 1]))
    assert problem.seed == 1


def test_decode_explicit_target() -> None:
    problem = decode_problem({'bases': [{'mu': 0}, {'Q': 2.0}], 'degrees': [1, 1], 'h': [0, 1],
                              'target': [-1, 0, 1], 'restarts': 4})
    assert problem.restarts == 4
    assert problem.target.isclose(CPoly([-1, 0, 1]))


def test_decode_problem_errors() -> None:
    with pytest.raises(casorati.InputError, match='unknown family "example3"'):
        decode_problem({'family': 'example3', 'h': 1})
    with pytest.raises(casorati.InputError, match='missing field "h"'):
        decode_problem({'family': 'example1', 'A': 1})
    with pytest.raises(casorati.InputError, match='list of integers'):
        decode_problem({'bases': [{'mu': 0}], 'degrees': [1.5], 'h': 1, 'target': [0, 1]})
    with pytest.raises(casorati.InputError, match='missing field "target"'):
        decode_problem({'bases': [{'mu': 0}], 'degrees': [1], 'h': 1})
    with pytest.raises(casorati.InputError, match='"restarts" must be'):
        decode_problem({'family': 'example2', 'h': 1, 'A': 2, 'B': -1, 'restarts': 2.5})
    with pytest.raises(casorati.InputError, match='"seed" must be'):
        decode_problem({'family': 'example2', 'h': 1, 'A': 2, 'B': -1, 'seed': True})
    assert decode_problem({'family': 'example2', 'h': 1, 'A': 2, 'B': -1, 'seed': [4, 2]}).seed == [4, 2]


def test_decode_zdata(paths_for_test) -> None:  # type: ignore
    zdata = decode_zdata(_load(paths_for_test, 'zdata_pair.json'))
    assert zdata.N == 2
    assert zdata.lam[1] == pytest.approx(math.pi / 2)
    assert encode(zdata) == {'a': [[0.5, 0.0], [-1.0, 0.0]], 'lam': [0.0, math.pi / 2]}


def test_write_scan_csv() -> None:
    stream = io.StringIO()
    write_scan_csv([{'ReA': 0.5, 'ImA': 1, 'is_real': True}, {'ReA': -1, 'ImA': 2.25, 'is_real': False}], stream)
    assert stream.getvalue().splitlines() == ['ReA,ImA,is_real', '0.5,1.0,1', '-1.0,2.25,0']
