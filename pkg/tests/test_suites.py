# -*- coding: utf-8 -*-
import pytest

from lexkit.errors import LexkitError
from lexkit.labelled import label_context
from lexkit.terms import ESub, positions, subterm_at
from tools.suites import SUITE_NAMES, AcceptanceSuites, overall_status, run_suites


@pytest.fixture
def small(sizes):
    sizes.update(
        composition_size=4, composition_es_size=4, beta_size=5, strategy_size=4, isn_size=4,
        psn_samples=20, psn_size=6, labelled_size=2, ie_samples=10, z_size=3, confluence_size=3,
        type_depth=2, typing_size=4, revb_size=4, max_cases=40,
    )
    return sizes


@pytest.mark.slow
@pytest.mark.parametrize('name', [
    'composition', 'beta', 'strategy', 'isn', 'psn', 'measures', 'uex-termination', 'projections',
    'ie', 'z', 'confluence', 'types', 'revb',
])
def test_suite_passes_on_small_sizes(settings, small, name):
    result = AcceptanceSuites(settings, small).run(name)
    assert result['status'] in ('PASS', 'WARNING'), result['details']
    assert result['failures'] == 0
    assert result['cases'] > 0
    assert result['seconds'] >= 0


def test_suite_errors_are_reported(settings, small, monkeypatch):
    suites = AcceptanceSuites(settings, small)

    def broken():
        raise RuntimeError('fallo simulado')

    monkeypatch.setitem(suites.suites, 'revb', broken)
    result = suites.run('revb')
    assert result['status'] == 'ERROR'
    assert 'fallo simulado' in result['message']


def test_run_suites_keeps_canonical_order(settings, small):
    results = run_suites(['revb', 'composition'], settings, small, jobs=1)
    assert list(results) == ['composition', 'revb']
    assert overall_status(results) in ('HEALTHY', 'WARNING')


def test_run_suites_rejects_unknown_names(settings, small):
    with pytest.raises(LexkitError):
        run_suites(['nope'], settings, small)


def test_overall_status():
    assert overall_status({'a': {'status': 'PASS'}}) == 'HEALTHY'
    assert overall_status({'a': {'status': 'PASS'}, 'b': {'status': 'WARNING'}}) == 'WARNING'
    assert overall_status({'a': {'status': 'FAIL'}, 'b': {'status': 'WARNING'}}) == 'CRITICAL'
    assert overall_status({'a': {'status': 'ERROR'}}) == 'CRITICAL'


def test_every_suite_is_registered(settings, small):
    assert set(AcceptanceSuites(settings, small).suites) == set(SUITE_NAMES)


def test_exhaustive_run_is_not_flagged(settings, small):
    small.update(revb_size=3, max_cases=0)
    result = AcceptanceSuites(settings, small).run('revb')
    assert result['status'] == 'PASS'
    assert result['sampled'] is False
    assert result['recommendations'] == []


def test_sampled_run_reports_warning(settings, small):
    small.update(revb_size=4, max_cases=10)
    result = AcceptanceSuites(settings, small).run('revb')
    assert result['failures'] == 0
    assert result['sampled'] is True
    assert result['status'] == 'WARNING'
    assert any('max_cases=10' in r for r in result['recommendations'])
    assert overall_status({'revb': result}) == 'WARNING'


def test_labelled_instances_come_from_pure_terms(settings, small):
    small.update(labelled_size=3, max_cases=0)
    suites = AcceptanceSuites(settings, small)
    instances = suites._labelled()
    assert instances and not instances.sampled
    assert all(suites.calculus.is_labelled(t, label_context(t)) for t in instances)
    assert not any(isinstance(subterm_at(t, p), ESub) for t in instances for p in positions(t))
