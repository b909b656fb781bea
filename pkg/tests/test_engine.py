# -*- coding: utf-8 -*-
import pytest

from lexkit.engine import COMPLETE, Policy, SnStatus
from lexkit.errors import FuelExhausted, IllFormedInput
from lexkit.enumeration import enumerate_lambda_terms, enumerate_terms
from lexkit.perpetual import is_normal_form
from lexkit.rules import (
    BETA, LAMBDA_EX, LAMBDA_UEX, LAMBDA_X, LAMBDA_X_DIRECTOR, Rule, check_trace, get_ruleset, step_at,
)
from lexkit.terms import EqMode, alpha_eq, free_vars, size, subst

OMEGA = '(\\x.x x) (\\x.x x)'


def test_reducts_of_a_redex(engine, t):
    steps = engine.reducts(t('(\\x.x) y'), LAMBDA_EX)
    assert [s.rule for s in steps] == [Rule.B]
    assert alpha_eq(steps[0].after, t('x[x/y]'))


def test_reducts_are_deduplicated_modulo_c(engine, t):
    # Las dos representaciones del mismo término dan los mismos reductos
    left = engine.reducts(t('x[x/y][z/w]'), LAMBDA_EX)
    right = engine.reducts(t('x[z/w][x/y]'), LAMBDA_EX)
    assert {engine.key(s.after, EqMode.E) for s in left} == {engine.key(s.after, EqMode.E) for s in right}


def test_sn_verdict_of_a_variable(engine, t):
    verdict = engine.sn_verdict(t('x'))
    assert verdict.verdict is SnStatus.PROVED_SN
    assert verdict.eta == 0
    assert verdict.max_size == 1


def test_sn_verdict_counts_longest_reduction(engine, t):
    verdict = engine.sn_verdict(t('(\\x.x) y'))
    assert verdict.proved_sn
    assert verdict.eta == 2


def test_omega_is_not_sn(engine, t):
    verdict = engine.sn_verdict(t(OMEGA))
    assert verdict.verdict is SnStatus.PROVED_NOT_SN
    assert verdict.witness
    assert engine.key(verdict.witness[0], EqMode.E) == engine.key(verdict.witness[-1], EqMode.E)


def test_omega_under_beta_is_cyclic(engine, t):
    graph = engine.explore(t(OMEGA), BETA)
    assert graph.cyclic
    assert len(graph.nodes) == 1


def test_small_fuel_gives_unknown(t):
    from lexkit.engine import RewriteEngine
    tiny = RewriteEngine(node_fuel=1)
    assert tiny.sn_verdict(t('(\\x.x x) ((\\y.y) z)')).verdict is SnStatus.UNKNOWN


def test_oversized_class_gives_unknown_instead_of_raising(t):
    from lexkit.engine import RewriteEngine
    narrow = RewriteEngine(class_bound=1)
    assert narrow.sn_verdict(t('x[x/y][z/w]')).verdict is SnStatus.UNKNOWN


def test_explore_complete_graph(engine, t):
    graph = engine.explore(t('(\\x.x) y'), LAMBDA_EX)
    assert graph.status == COMPLETE
    assert not graph.cyclic
    assert len(graph.nodes) == 3


def test_normalize_leftmost(engine, t):
    final, trace = engine.normalize(t('(\\x.x) y'), LAMBDA_EX, policy=Policy.LEFTMOST)
    assert final == t('y')
    assert trace.rules == [Rule.B, Rule.VAR]
    assert check_trace(trace, LAMBDA_EX) == (True, 'ok')


def test_normalize_perpetual_passes_through_composition(engine, t):
    final, trace = engine.normalize(t('(z y x)[y/x x][x/v]'), LAMBDA_EX, policy=Policy.PERPETUAL)
    assert alpha_eq(final, t('z (v v) v'))
    assert any(alpha_eq(step.after, t('(z y v)[y/v v]')) for step in trace.steps)
    assert check_trace(trace, LAMBDA_EX)[0]


def test_normalize_runs_out_of_fuel(engine, t):
    with pytest.raises(FuelExhausted) as info:
        engine.normalize(t(OMEGA), LAMBDA_EX, step_fuel=20)
    assert len(info.value.partial.steps) == 20


def test_find_path(engine, t):
    found = engine.find_path(t('(\\x.x) y'), t('y'))
    assert found.found
    assert len(found.trace.steps) == 2
    assert engine.find_path(t('y'), t('z')).status == 'unreachable'


def test_find_path_with_at_least_one_step(engine, t):
    assert engine.find_path(t('y'), t('y')).found
    assert not engine.find_path(t('y'), t('y'), min_steps=1).found


def test_rulesets_check_their_inputs(engine, t):
    with pytest.raises(IllFormedInput):
        engine.reducts(t('x[x/y]'), BETA)
    with pytest.raises(IllFormedInput):
        engine.reducts(t('x[[x/y]]'), LAMBDA_EX)


def test_get_ruleset_is_lenient():
    assert get_ruleset('lambda-x') is LAMBDA_X
    assert get_ruleset('LambdaEx') is LAMBDA_EX
    with pytest.raises(IllFormedInput):
        get_ruleset('sigma')


def test_check_trace_rejects_tampered_steps(engine, t):
    from lexkit.rules import Step, Trace
    root = t('(\\x.x) y')
    bogus = Trace(root=root, steps=[Step(Rule.B, (), root, t('y'))])
    ok, message = check_trace(bogus, LAMBDA_EX)
    assert not ok
    assert 'paso 0' in message


# =================== PROPIEDADES SOBRE TÉRMINOS PEQUEÑOS ===================

SMALL_TERMS = enumerate_terms(4)
SMALL_LAMBDA_TERMS = enumerate_lambda_terms(5)
LABELLED_TERMS = ('x[[x/y]]', '(x z)[x/z][[z/w]]', '(\\y.x)[[x/w w]]', '((\\y.y) x)[[x/w]]')


def _reachable(engine, term, depth):
    seen = {engine.key(term, EqMode.E)}
    frontier = [term]
    for _ in range(depth):
        following = []
        for current in frontier:
            for step in engine.reducts(current, LAMBDA_EX):
                key = engine.key(step.after, EqMode.E)
                if key not in seen:
                    seen.add(key)
                    following.append(step.after)
        frontier = following
    return seen


def test_free_variables_never_grow(engine, t):
    for rs in (LAMBDA_EX, LAMBDA_X, LAMBDA_X_DIRECTOR):
        for term in SMALL_TERMS:
            for step in engine.reducts(term, rs):
                assert free_vars(step.after) <= free_vars(term), (rs.name, step)
    for term in SMALL_LAMBDA_TERMS:
        for step in engine.reducts(term, BETA):
            assert free_vars(step.after) <= free_vars(term)
    for text in LABELLED_TERMS:
        term = t(text)
        for step in engine.reducts(term, LAMBDA_UEX):
            assert free_vars(step.after) <= free_vars(term), step


def test_lambda_x_steps_are_lambda_ex_steps(engine):
    for term in SMALL_TERMS:
        successors = engine.successors(term, LAMBDA_EX)
        for step in engine.reducts(term, LAMBDA_X):
            assert step.rule in LAMBDA_EX
            assert engine.key(step.after, EqMode.E) in successors, step


def test_director_composition_is_simulated(engine):
    simulated = 0
    for term in enumerate_terms(5):
        for step in engine.reducts(term, LAMBDA_X_DIRECTOR):
            if step.rule is not Rule.DS_COMP:
                continue
            result = engine.find_path(step.before, step.after, LAMBDA_EX, max_depth=4, min_steps=1)
            assert result.found, step
            assert result.trace.steps
            assert check_trace(result.trace, LAMBDA_EX)[0]
            simulated += 1
    assert simulated > 0


def test_director_rule_side_conditions(t):
    director = get_ruleset('LambdaXDirector')
    assert director is LAMBDA_X_DIRECTOR
    assert Rule.DS_COMP in director and Rule.DS_COMP not in LAMBDA_X
    assert step_at(t('z[x/y][y/w]'), (), Rule.DS_COMP).after == t('z[x/y[y/w]]')
    # y libre en el cuerpo o ausente del argumento interno: no aplica
    assert step_at(t('y[x/y][y/w]'), (), Rule.DS_COMP) is None
    assert step_at(t('z[x/v][y/w]'), (), Rule.DS_COMP) is None


@pytest.mark.parametrize('body', ['?X{x,y}', 'x', 'y', 'x y', '\\z.x y', 'x[z/y]'])
def test_composition_peaks_join(engine, t, body):
    for arg in ('y', 'z', 'y z', '\\w.y'):
        for outer in ('z', '\\w.w', 'z z'):
            peak = t(f'((\\x.{body}) ({arg}))[y/{outer}]')
            left = t(f'({body})[x/{arg}][y/{outer}]')
            right = t(f'({body})[y/{outer}][x/({arg})[y/{outer}]]')
            assert engine.key(left, EqMode.E) in _reachable(engine, peak, 1)
            assert _reachable(engine, left, 2) & _reachable(engine, right, 2), (body, arg, outer)


def test_reduction_is_stable_by_substitution(engine, t):
    arguments = [t('y'), t('\\z.z'), t('z z')]
    contexts = [t('x'), t('x x'), t('\\w.x'), t('y[y/x]')]
    for term in SMALL_TERMS:
        for step in engine.reducts(term, LAMBDA_EX):
            for u in arguments:
                inside = engine.find_path(
                    subst(term, 'x', u), subst(step.after, 'x', u), LAMBDA_EX, max_depth=1, min_steps=1,
                )
                assert inside.found, (step, u)
            if size(term) > 3:
                continue
            for context in contexts:
                around = engine.find_path(subst(context, 'x', term), subst(context, 'x', step.after), LAMBDA_EX,
                                          max_depth=3)
                assert around.found, (step, context)


def test_eta_decreases_along_every_step(engine):
    for term in SMALL_TERMS:
        verdict = engine.sn_verdict(term)
        assert verdict.proved_sn
        for step in engine.reducts(term, LAMBDA_EX):
            assert engine.sn_verdict(step.after).eta < verdict.eta, step


def test_normal_forms_are_exactly_the_terms_without_reducts(engine):
    for term in SMALL_TERMS + SMALL_LAMBDA_TERMS:
        assert is_normal_form(term) == (not engine.reducts(term, LAMBDA_EX)), term
