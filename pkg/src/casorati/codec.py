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
JSON and CSV wire formats. Complex numbers are ``[re, im]`` pairs everywhere; plain JSON numbers are accepted
on input. Polynomials are lists of coefficients in ascending powers.

A space of quasi-exponentials:

.. code-block:: json

    {"members": [{"coeffs": [1, 1]}, {"coeffs": [[-2, 0], 0, 1], "mu": 0.5}]}

``p`` is accepted as an alias of ``coeffs``. Each member gives either ``mu`` (the base logarithm, default 0)
or ``Q`` (the base, principal logarithm taken).

.. invisible-code-block: python

    import io
    from casorati.codec import decode_space, dumps

.. code-block:: python

    space = decode_space({'members': [{'coeffs': [1, 1]}, {'coeffs': [-2, 0, 1], 'mu': 0.5}]})

    assert space.rank == 2
    assert dumps({'z': 1 + 2j}) == '{\\n  "z": [\\n    1.0,\\n    2.0\\n  ]\\n}'

"""
import csv
import json
import typing

import numpy as np

import casorati
import casorati.version
from casorati.inverse import InverseProblem, SolutionSet, example1_problem, example2_problem
from casorati.matrixz import ZData
from casorati.poly import CPoly
from casorati.quasiexp import LogBase, QESpace, QuasiExp

SCAN_COLUMNS = ('ReA', 'ImA', 'is_real')


# +---------------------------------------------------------------------------+
# | ENCODE
# +---------------------------------------------------------------------------+

def encode(value: typing.Any) -> typing.Any:
    """
    Converts library values into JSON-ready structures.
    """
    if isinstance(value, (bool, str)) or value is None:
        return value
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, (int, float)):
        return value
    if isinstance(value, np.generic):
        return encode(value.item())
    if isinstance(value, np.ndarray):
        return [encode(v) for v in value.tolist()]
    if isinstance(value, CPoly):
        return encode(value.coeffs)
    if isinstance(value, LogBase):
        return encode(value.mu)
    if isinstance(value, QuasiExp):
        return {'coeffs': encode(value.p), 'mu': encode(value.base)}
    if isinstance(value, QESpace):
        return {'members': [encode(m) for m in value.members]}
    if isinstance(value, SolutionSet):
        return {
            'attempts': value.attempts,
            'solutions': [{'space': encode(s.space),
                           'residual': s.residual,
                           'real': s.real,
                           'degenerate': s.degenerate} for s in value.solutions]
        }
    if isinstance(value, ZData):
        return {'a': encode(value.a), 'lam': encode(value.lam)}
    if hasattr(value, '_asdict'):
        return encode(value._asdict())
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    raise casorati.InputError('cannot encode {}'.format(type(value).__name__))


def dumps(document: typing.Any) -> str:
    """
    Sorted-key, indented JSON. Identical inputs give byte-identical output.
    """
    return json.dumps(encode(document), sort_keys=True, indent=2)


def dump(document: typing.Any, stream: typing.TextIO) -> None:
    stream.write(dumps(document))
    stream.write('\n')


def make_report(command: str,
                result: typing.Any,
                config: typing.Mapping[str, typing.Any]) -> typing.Dict[str, typing.Any]:
    return {
        'command': command,
        'version': casorati.version.__version__,
        'config': dict(config),
        'result': result
    }


def write_scan_csv(rows: typing.Iterable[typing.Mapping[str, typing.Any]], stream: typing.TextIO) -> None:
    """
    The reality scan as CSV with columns ``ReA, ImA, is_real``.
    """
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(SCAN_COLUMNS)
    for row in rows:
        writer.writerow([repr(float(row['ReA'])), repr(float(row['ImA'])), int(bool(row['is_real']))])


# +---------------------------------------------------------------------------+
# | DECODE
# +---------------------------------------------------------------------------+

def load(stream: typing.TextIO) -> typing.Any:
    """
    :raises casorati.InputError: on malformed JSON.
    """
    try:
        return json.load(stream)
    except json.JSONDecodeError as e:
        raise casorati.InputError('malformed JSON: {}'.format(e))


def decode_complex(value: typing.Any) -> complex:
    """
    A number or an ``[re, im]`` pair.

    :raises casorati.InputError: for anything else.
    """
    if isinstance(value, bool):
        raise casorati.InputError('expected a number, got {!r}'.format(value))
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2 and \
            all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value):
        return complex(value[0], value[1])
    raise casorati.InputError('expected a number or an [re, im] pair, got {!r}'.format(value))


def decode_complex_list(value: typing.Any, what: str = 'list') -> typing.List[complex]:
    if not isinstance(value, list):
        raise casorati.InputError('{} must be a JSON list'.format(what))
    return [decode_complex(v) for v in value]


def decode_poly(value: typing.Any) -> CPoly:
    return CPoly(decode_complex_list(value, 'polynomial'))


def _field(document: typing.Mapping[str, typing.Any], key: str) -> typing.Any:
    if not isinstance(document, dict):
        raise casorati.InputError('expected a JSON object')
    try:
        return document[key]
    except KeyError:
        raise casorati.InputError('missing field "{}"'.format(key))


def decode_base(document: typing.Mapping[str, typing.Any]) -> LogBase:
    if not isinstance(document, dict):
        raise casorati.InputError('a base must be a JSON object, got {!r}'.format(document))
    if 'Q' in document:
        q = decode_complex(document['Q'])
        if q == 0:
            raise casorati.InputError('zero base')
        return LogBase.from_value(q)
    return LogBase(decode_complex(document.get('mu', 0)))


def decode_space(document: typing.Any) -> QESpace:
    members = _field(document, 'members')
    if not isinstance(members, list):
        raise casorati.InputError('"members" must be a JSON list')
    result = []
    for m in members:
        key = ('p' if isinstance(m, dict) and 'p' in m and 'coeffs' not in m else 'coeffs')
        result.append(QuasiExp(decode_poly(_field(m, key)), decode_base(m)))
    return QESpace(result)


def _is_int(value: typing.Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _decode_count(value: typing.Any, what: str) -> int:
    if not _is_int(value) or value < 0:
        raise casorati.InputError('"{}" must be a non-negative integer, got {!r}'.format(what, value))
    return value


def _decode_seed(value: typing.Any) -> typing.Union[int, typing.List[int]]:
    """
    A non-negative integer or a list of them (:func:`numpy.random.default_rng` accepts both).
    """
    values = value if isinstance(value, list) else [value]
    if not values or not all(_is_int(v) and v >= 0 for v in values):
        raise casorati.InputError('"seed" must be a non-negative integer or a list of them, got {!r}'.format(value))
    return value


def decode_problem(document: typing.Any) -> InverseProblem:
    """
    Either an explicit problem::

        {"bases": [{"mu": 0}, {"Q": 2.0}], "degrees": [1, 1], "h": [0, 1], "target": [-1, 0, 1]}

    where ``target`` may be replaced by ``roots``, or one of the two closed-form families::

        {"family": "example1", "Q": 2.718281828, "h": [0, 1], "A": 1}
        {"family": "example2", "h": [0, 1], "A": [1, 0.5], "B": [1, -0.5]}

    ``seed`` and ``restarts`` are optional in every form.
    """
    if not isinstance(document, dict):
        raise casorati.InputError('a problem must be a JSON object')
    options = {}  # type: typing.Dict[str, typing.Any]
    if 'seed' in document:
        options['seed'] = _decode_seed(document['seed'])
    if 'restarts' in document:
        options['restarts'] = _decode_count(document['restarts'], 'restarts')
    family = document.get('family')
    h = decode_complex(_field(document, 'h'))
    if family == 'example1':
        return example1_problem(decode_base(document), h, decode_complex(_field(document, 'A')), **options)
    if family == 'example2':
        return example2_problem(h, decode_complex(_field(document, 'A')), decode_complex(_field(document, 'B')),
                                **options)
    if family is not None:
        raise casorati.InputError('unknown family "{}"'.format(family))
    bases = _field(document, 'bases')
    if not isinstance(bases, list):
        raise casorati.InputError('"bases" must be a JSON list')
    degrees = _field(document, 'degrees')
    if not isinstance(degrees, list) or not all(isinstance(d, int) for d in degrees):
        raise casorati.InputError('"degrees" must be a list of integers')
    if 'roots' in document:
        target = CPoly.from_roots(decode_complex_list(document['roots'], 'roots'))
    else:
        target = decode_poly(_field(document, 'target'))
    return InverseProblem([decode_base(b) for b in bases], degrees, h, target, **options)


def decode_zdata(document: typing.Any) -> ZData:
    return ZData(decode_complex_list(_field(document, 'a'), 'a'), decode_complex_list(_field(document, 'lam'), 'lam'))
