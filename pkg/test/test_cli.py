#
# Copyright 2026 The Casorati Authors.
# This software is distributed under the terms of the MIT License.
#
import io
import json
import typing

import pytest

import casorati
import casorati.version
from casorati import cli


def _report(capsys) -> typing.Dict[str, typing.Any]:  # type: ignore
    return json.loads(capsys.readouterr().out)


def test_version(capsys) -> None:  # type: ignore
    assert cli.main(['--version']) == cli.EXIT_OK
    assert capsys.readouterr().out.strip() == casorati.version.__version__


def test_no_command(capsys) -> None:  # type: ignore
    assert cli.main([]) == cli.EXIT_INPUT
    assert 'usage: dwr' in capsys.readouterr().err


def test_bad_arguments() -> None:
    assert cli.main(['wronskian']) == cli.EXIT_INPUT
    assert cli.main(['nope']) == cli.EXIT_INPUT


def test_parse_complex() -> None:
    assert cli.parse_complex('1.5,-2') == 1.5 - 2j
    assert cli.parse_complex('3j') == 3j
    with pytest.raises(casorati.InputError, match='cannot read'):
        cli.parse_complex('one')


def test_wronskian(capsys, paths_for_test) -> None:  # type: ignore
    assert cli.main(['wronskian', str(paths_for_test('space_linear.json'))]) == cli.EXIT_OK
    report = _report(capsys)
    assert report['command'] == 'wronskian'
    assert report['version'] == casorati.version.__version__
    result = report['result']
    assert result['w'] == [[1.0, 0.0]]
    assert result['roots'] == []
    assert result['h'] == [0.0, 1.0]
    assert result['leading'] == [0.0, 2.0]


def test_wronskian_stdin(capsys, monkeypatch) -> None:  # type: ignore
    monkeypatch.setattr('sys.stdin', io.StringIO('{"members": [{"coeffs": [0, 1]}, {"coeffs": [0, 0, 1]}]}'))
    assert cli.main(['wronskian', '-', '--h', '0.5,0']) == cli.EXIT_OK
    result = _report(capsys)['result']
    assert [c[0] for c in result['w']] == pytest.approx([-0.25, 0, 1])
    assert [c[1] for c in result['w']] == pytest.approx([0, 0, 0])
    assert result['h'] == [0.5, 0.0]


def test_wronskian_dependent(capsys, paths_for_test) -> None:  # type: ignore
    assert cli.main(['wronskian', str(paths_for_test('space_dependent.json'))]) == cli.EXIT_DEGENERATE
    captured = capsys.readouterr()
    assert captured.out == ''
    assert 'dwr: dependent members' in captured.err


def test_wronskian_malformed(capsys, paths_for_test) -> None:  # type: ignore
    assert cli.main(['wronskian', str(paths_for_test('malformed.json'))]) == cli.EXIT_INPUT
    assert 'malformed JSON' in capsys.readouterr().err


def test_missing_file(capsys, tmp_path) -> None:  # type: ignore
    assert cli.main(['wronskian', str(tmp_path / 'none.json')]) == cli.EXIT_INPUT
    assert capsys.readouterr().err.startswith('dwr: ')


def test_bad_config(capsys, paths_for_test) -> None:  # type: ignore
    space = str(paths_for_test('space_linear.json'))
    assert cli.main(['wronskian', space, '--tol', '0']) == cli.EXIT_INPUT
    assert cli.main(['wronskian', space, '--trials', '0']) == cli.EXIT_INPUT
    assert cli.main(['--log-level', 'LOUD', 'wronskian', space]) == cli.EXIT_INPUT


def test_out_file(capsys, paths_for_test, tmp_path) -> None:  # type: ignore
    out = tmp_path / 'report.json'
    assert cli.main(['wronskian', str(paths_for_test('space_linear.json')), '--out', str(out)]) == cli.EXIT_OK
    assert capsys.readouterr().out == ''
    with open(str(out), 'r') as f:
        report = json.load(f)
    assert report['config']['out'] == str(out)
    assert report['result']['w'] == [[1.0, 0.0]]


def test_report_is_deterministic(capsys, paths_for_test) -> None:  # type: ignore
    args = ['zmatrix', str(paths_for_test('zdata_pair.json'))]
    cli.main(args)
    first = capsys.readouterr().out
    cli.main(args)
    assert capsys.readouterr().out == first


def test_solve_example1(capsys, paths_for_test) -> None:  # type: ignore
    assert cli.main(['solve', str(paths_for_test('problem_example1.json'))]) == cli.EXIT_OK
    result = _report(capsys)['result']
    assert len(result['solutions']) == 2
    for s in result['solutions']:
        assert s['residual'] < 1e-8
        assert len(s['space']['members']) == 2


def test_solve_explicit(capsys, paths_for_test) -> None:  # type: ignore
    assert cli.main(['solve', str(paths_for_test('problem_explicit.json'))]) == cli.EXIT_OK
    solutions = _report(capsys)['result']['solutions']
    assert len(solutions) == 1
    assert solutions[0]['real']


def test_solve_seed_from_flag(capsys, tmp_path) -> None:  # type: ignore
    problem = tmp_path / 'problem.json'
    problem.write_text('{"family": "example2", "h": [0, 1], "A": 2, "B": -1}')
    assert cli.main(['solve', str(problem), '--seed', '9']) == cli.EXIT_OK
    report = _report(capsys)
    assert report['config']['seed'] == 9
    assert len(report['result']['solutions']) == 2


@pytest.mark.parametrize('document,complaint', [
    ('3', 'a problem must be a JSON object'),
    ('[{"family": "example2"}]', 'a problem must be a JSON object'),
    ('{"family": "example2", "h": [0, 1], "A": 2, "B": -1, "restarts": "abc"}', '"restarts" must be'),
    ('{"family": "example2", "h": [0, 1], "A": 2, "B": -1, "restarts": -4}', '"restarts" must be'),
    ('{"family": "example2", "h": [0, 1], "A": 2, "B": -1, "seed": "x"}', '"seed" must be'),
    ('{"family": "example2", "h": [0, 1], "A": 2, "B": -1, "seed": [1, -2]}', '"seed" must be'),
    ('{"bases": [3], "degrees": [1], "h": [0, 1], "target": [0, 1]}', 'a base must be a JSON object'),
])
def test_solve_malformed_problem(capsys, tmp_path, document, complaint) -> None:  # type: ignore
    problem = tmp_path / 'problem.json'
    problem.write_text(document)
    assert cli.main(['solve', str(problem)]) == cli.EXIT_INPUT
    captured = capsys.readouterr()
    assert captured.out == ''
    assert complaint in captured.err


def test_zmatrix(capsys, paths_for_test) -> None:  # type: ignore
    assert cli.main(['zmatrix', str(paths_for_test('zdata_pair.json'))]) == cli.EXIT_OK
    result = _report(capsys)['result']
    assert result['matrix'] == [[[0.5, 0.0], [-1.0, 0.0]], [[1.0, 0.0], [-1.0, 0.0]]]
    assert [c[0] for c in result['charpoly']] == pytest.approx([0.5, 0.5, 1])
    assert result['lemma_residual'] < 1e-9
    assert result['reality']['hypotheses']
    assert not result['reality']['failure']


def test_zmatrix_collision(capsys, tmp_path) -> None:  # type: ignore
    zdata = tmp_path / 'z.json'
    zdata.write_text('{"a": [1, 2], "lam": [0, 3.141592653589793]}')
    assert cli.main(['zmatrix', str(zdata)]) == cli.EXIT_DEGENERATE
    assert 'collision' in capsys.readouterr().err


@pytest.mark.timeout(120)
def test_verify_bethe(capsys) -> None:  # type: ignore
    assert cli.main(['verify', 'bethe', '--N', '2', '--n', '2', '--seed', '7']) == cli.EXIT_OK
    result = _report(capsys)['result']
    assert result['result_code'] == 0
    assert result['failures'] == []


@pytest.mark.timeout(60)
def test_verify_lemma_wron_prefixed(capsys) -> None:  # type: ignore
    assert cli.main(['verify', 'lemma-wron', '--lemma-wron-trials', '3', '--N', '3']) == cli.EXIT_OK
    assert _report(capsys)['result']['result_code'] == 0


def test_verify_unknown(capsys) -> None:  # type: ignore
    assert cli.main(['verify', 'everything']) == cli.EXIT_INPUT
    assert 'unknown suite "everything"' in capsys.readouterr().err


@pytest.mark.timeout(120)
def test_examples_csv(capsys, tmp_path) -> None:  # type: ignore
    scan = tmp_path / 'scan.csv'
    assert cli.main(['examples', '--points', '8', '--csv', str(scan)]) == cli.EXIT_OK
    result = _report(capsys)['result']
    assert result['result_code'] == 0
    lines = scan.read_text().splitlines()
    assert lines[0] == 'ReA,ImA,is_real'
    assert len(lines) == 1 + 8 * 8


def test_subprocess_version(run_dwr) -> None:  # type: ignore
    completed = run_dwr(['--version'])
    assert completed.stdout.decode('utf-8').strip() == casorati.version.__version__


def test_subprocess_help(run_dwr) -> None:  # type: ignore
    completed = run_dwr(['--help'])
    assert 'wronskian' in completed.stdout.decode('utf-8')


def test_subprocess_exit_code(run_dwr, paths_for_test) -> None:  # type: ignore
    completed = run_dwr(['wronskian', str(paths_for_test('space_dependent.json'))], check_result=False)
    assert completed.returncode == cli.EXIT_DEGENERATE
