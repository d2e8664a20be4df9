#
# Copyright 2026 The Casorati Authors.
# This software is distributed under the terms of the MIT License.
#
import logging

import pytest

import casorati


def test_create_artifacts() -> None:
    subject = casorati.Artifacts()
    assert 'max_residual' not in subject


def test_missing_artifact() -> None:
    """
    Verified that KeyError is not raised if an undefined artifact is accessed.
    """
    subject = casorati.Artifacts()
    assert subject.not_an_artifact is None
    assert 'not_an_artifact' not in subject


def test_result_code() -> None:
    default_subject = casorati.Artifacts()
    assert 0 == int(default_subject)
    subject_1 = casorati.Artifacts(1)
    assert 1 == int(subject_1)
    subject_1.result_code = 2
    assert 2 == int(subject_1)


def test_combine() -> None:
    first = casorati.Artifacts()
    setattr(first, 'failures', [])
    setattr(first, 'residuals', {'rtt': 1e-14})
    second = casorati.Artifacts(1)
    setattr(second, 'failures', ['qdet'])
    combined = casorati.Artifacts.combine(first, second)
    assert combined.failures == ['qdet']
    assert combined.residuals == {'rtt': 1e-14}
    assert combined.result_code == -1
    assert casorati.Artifacts.combine(casorati.Artifacts(), casorati.Artifacts()).result_code == 0


def test_combine_nothing() -> None:
    with pytest.raises(ValueError):
        casorati.Artifacts.combine()


def test_as_config_dict_skips_private() -> None:
    subject = casorati.Artifacts(3)
    setattr(subject, 'trials', 4)
    assert subject.as_config_dict() == {'trials': 4}


def test_dump(caplog) -> None:  # type: ignore
    subject = casorati.Artifacts()
    setattr(subject, 'max_residual', 2.5e-13)
    with caplog.at_level(logging.INFO):
        subject.dump(logging.getLogger(__name__), logging.INFO)
    assert 'max_residual: 2.5e-13' in caplog.text


def test_assert_success() -> None:
    artifacts = casorati.Artifacts()
    assert casorati.assert_success(artifacts) is artifacts
    with pytest.raises(casorati.AssertionError):
        casorati.assert_success(casorati.Artifacts(1))


def test_assert_success_if() -> None:
    artifacts = casorati.Artifacts()
    setattr(artifacts, 'max_residual', 1e-3)
    with pytest.raises(casorati.AssertionError):
        casorati.assert_success_if(artifacts, lambda a: a.max_residual < 1e-9)
    assert casorati.assert_success_if(artifacts, lambda a: a.max_residual < 1e-2) is artifacts
