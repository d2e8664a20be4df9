#
# Copyright 2026 The Casorati Authors.
# This software is distributed under the terms of the MIT License.
#
import logging

import pytest

import casorati
import casorati.fixtures
from casorati import assert_success


@pytest.mark.asyncio
async def test_bethe_plugin(casorati_bethe: casorati.fixtures.Fixture) -> None:
    """
    Make sure we've properly exported the bethe suite as a pytest plugin.
    """
    assert isinstance(casorati_bethe, casorati.fixtures.Fixture)
    assert 'casorati_bethe' == casorati_bethe.name


@pytest.mark.timeout(60)
@pytest.mark.asyncio
async def test_lemma_wron_plugin(casorati_lemma_wron: casorati.fixtures.Fixture) -> None:
    """
    Exercises a suite exposed to pytest directly.
    """
    artifacts = assert_success(await casorati_lemma_wron.gather(lemma_wron_trials=3, lemma_wron_max_rank=3))
    assert artifacts.trials == 3
    assert artifacts.max_residual < 1e-8
    assert casorati_lemma_wron.loop.is_running()


@pytest.mark.timeout(60)
@pytest.mark.asyncio
async def test_create_through_manager(casorati_fixture_manager: casorati.fixtures.FixtureManager) -> None:
    """
    Suites created by canonical name share the manager's loop.
    """
    suite = casorati_fixture_manager.create_fixture('casorati_convergence')
    assert 'casorati_convergence' == suite.name
    artifacts = assert_success(await suite.gather())
    assert artifacts.failures == []
    assert suite.loop.is_running()
    with pytest.raises(KeyError):
        casorati_fixture_manager.create_fixture('casorati_nope')


def test_arguments_fixture(casorati_arguments: casorati.Namespace) -> None:
    assert isinstance(casorati_arguments, casorati.Namespace)
    assert casorati_arguments.no_such_option is None
    assert 'no_such_option' not in casorati_arguments


def test_log_fixture(casorati_log: logging.Logger) -> None:
    assert 'test_log_fixture' == casorati_log.name


@pytest.mark.xfail
def test_assert_success() -> None:
    casorati.assert_success(casorati.Artifacts(1))


@pytest.mark.timeout(60)
@pytest.mark.asyncio
async def test_plugin_from_conftest(casorati_lemma_wron_from_conftest: casorati.fixtures.Fixture) -> None:
    assert_success(await casorati_lemma_wron_from_conftest.gather(lemma_wron_trials=2))