# -*- coding: utf-8 -*-
import pytest

from lexkit.engine import SnStatus
from lexkit.errors import FuelExhausted, IllFormedInput
from lexkit.perpetual import (
    Clause, NormalForm, PerpetualStrategy, StrategyStep,
    ie_sample, is_normal_form, isn_check, perpetual_step, perpetual_trace, psn_sample,
)
from lexkit.rules import LAMBDA_EX, Trace, check_trace
from lexkit.terms import alpha_eq

OMEGA = '(\\x.x x) (\\x.x x)'


def test_normal_form_grammar(t):
    assert is_normal_form(t('x (\\y.y z)'))
    assert not is_normal_form(t('(\\x.x) y'))
    assert not is_normal_form(t('x[x/y]'))


def test_step_on_normal_form(engine, t):
    assert isinstance(perpetual_step(engine, t('x y')), NormalForm)


def test_step_opens_beta_redex(engine, t):
    step = perpetual_step(engine, t('(\\x.x) y'))
    assert isinstance(step, StrategyStep)
    assert step.rule is Clause.P_B
    assert alpha_eq(step.result, t('x[x/y]'))


def test_step_computes_substitution_with_sn_body(engine, t):
    step = perpetual_step(engine, t('(x x)[x/y]'))
    assert step.rule is Clause.P_SUBS1
    assert alpha_eq(step.result, t('y y'))
    assert [verdict.verdict for _, verdict in step.oracle_calls] == [SnStatus.PROVED_SN]
    assert check_trace(Trace(root=t('(x x)[x/y]'), steps=list(step.steps)), LAMBDA_EX)[0]


def test_step_reduces_inside_non_sn_body(engine, t):
    step = perpetual_step(engine, t(f'z[z/{OMEGA}]'))
    assert step.rule is Clause.P_SUBS2
    assert step.chain[-1] is Clause.P_B


def test_step_descends_under_head_variable(engine, t):
    step = perpetual_step(engine, t('x ((\\y.y) z)'))
    assert step.chain == (Clause.P_VAR, Clause.P_B)
    assert step.position == (1,)


def test_strategy_on_non_terms(engine, t):
    with pytest.raises(IllFormedInput):
        perpetual_step(engine, t('?X{x}'))


def test_trace_reaches_normal_form(engine, t):
    trace = perpetual_trace(engine, t('(\\x.x x) y'))
    assert trace.status == 'normal'
    assert alpha_eq(trace.final, t('y y'))


def test_trace_on_omega_exhausts_fuel(engine, t):
    with pytest.raises(FuelExhausted) as info:
        PerpetualStrategy(engine).run(t(OMEGA), step_fuel=10)
    assert info.value.partial.status == 'fuel'
    assert len(info.value.partial.steps) == 10


def test_isn_derivation(engine, t):
    derivation = isn_check(engine, t('(\\x.x) y'))
    assert derivation.rule == 'app'
    assert derivation.premises[0].rule == 'subs'
    assert derivation.size() >= 3


def test_isn_fails_on_omega(engine, t):
    assert isn_check(engine, t(OMEGA)) is None


def test_psn_sample(engine, t):
    report = psn_sample(engine, t('(\\x.x x) y'))
    assert report['beta'].proved_sn
    assert report['lex'].proved_sn
    assert not report['violation']
    with pytest.raises(IllFormedInput):
        psn_sample(engine, t('x[x/y]'))


def test_ie_sample(engine, t):
    report = ie_sample(engine, t('x x'), 'x', t('y'), (t('z'),))
    assert report['applies']
    assert report['explicit'].proved_sn
    assert not report['violation']


def test_ie_sample_does_not_apply_to_non_sn_bodies(engine, t):
    assert not ie_sample(engine, t('z'), 'x', t(OMEGA))['applies']
