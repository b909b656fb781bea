# -*- coding: utf-8 -*-
import pytest

from lexkit.composition import beta_step, composition_steps, full_composition_trace, simulate_beta
from lexkit.errors import IllFormedInput, NotAReduct
from lexkit.rules import EX, LAMBDA_EX, Rule, check_trace
from lexkit.terms import EqMode, MetaVar, Var, alpha_eq, subst


@pytest.mark.parametrize('body, arg', [
    ('x', 'y'),
    ('\\y.x y', 'y'),
    ('x (x z)', '\\w.w'),
    ('(x y)[y/x]', 'z z'),
    ('x[y/w]', 'v'),
])
def test_full_composition_reaches_meta_substitution(engine, t, body, arg):
    trace = full_composition_trace(t(body), 'x', t(arg))
    assert check_trace(trace, EX) == (True, 'ok')
    assert engine.equivalent(trace.final, subst(t(body), 'x', t(arg)), EqMode.E)


def test_composition_uses_comp_when_x_is_free_in_argument(t):
    steps = composition_steps(t('(x y)[y/x]'), 'x', t('z'))
    assert steps[0].rule is Rule.COMP


def test_composition_garbage_collects_unused_substitution(t):
    steps = composition_steps(t('y'), 'x', t('z'))
    assert [s.rule for s in steps] == [Rule.GC]


def test_composition_stops_at_metavariables():
    assert composition_steps(MetaVar('X', frozenset({'x'})), 'x', Var('y')) == []


def test_composition_rejects_labels(t):
    with pytest.raises(IllFormedInput):
        composition_steps(t('x[[x/y]]'), 'x', t('z'))


def test_beta_step_lists_every_redex(t):
    steps = beta_step(t('(\\x.x) ((\\y.y) z)'))
    assert len(steps) == 2
    assert all(s.rule is Rule.BETA for s in steps)


def test_simulate_beta(engine, t):
    source = t('(\\x.x x) y')
    trace = simulate_beta(source, t('y y'))
    assert trace.rules[0] is Rule.B
    assert check_trace(trace, LAMBDA_EX)[0]
    assert alpha_eq(trace.final, t('y y'))


def test_simulate_beta_rejects_non_reducts(t):
    with pytest.raises(NotAReduct):
        simulate_beta(t('(\\x.x x) y'), t('z'))
