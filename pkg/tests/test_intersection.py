# -*- coding: utf-8 -*-
import pytest

from lexkit.errors import IllFormedInput, UnificationFailure
from lexkit.intersection import (
    Arrow, Atom, Budget, Inter, TypeDerivation,
    check_derivation, check_judgment_upto_subtype, derive_judgment, derive_subtype, flatten,
    infer_simple, intersect, is_simply_typable, make_env, normalize_rule_name, revb, revb_trace, subtype,
)
from lexkit.rules import LAMBDA_EX, Rule, check_trace
from lexkit.syntax import parse_type
from lexkit.terms import App, Lam, Var, alpha_eq

A, B, C = Atom('A'), Atom('B'), Atom('C')


def test_flatten_and_intersect():
    assert flatten(parse_type('A&B&C')) == (A, B, C)
    assert intersect([A, B, C]) == Inter(A, Inter(B, C))
    assert flatten(parse_type('(A&B)->C')) == (Arrow(Inter(A, B), C),)


@pytest.mark.parametrize('left, right, expected', [
    ('A&B', 'A', True),
    ('A&B', 'B&A', True),
    ('A', 'A&B', False),
    ('A->B', 'A->B', True),
    ('(A&B)->C', 'A->C', False),
    ('A&(B&C)', 'C&A', True),
])
def test_subtype(left, right, expected):
    assert subtype(parse_type(left), parse_type(right)) is expected
    assert derive_subtype(parse_type(left), parse_type(right)) is expected


def test_rule_names():
    assert normalize_rule_name('∩I') == 'interI'
    assert normalize_rule_name('inter-e') == 'interE'
    with pytest.raises(IllFormedInput):
        normalize_rule_name('weakening')


@pytest.mark.parametrize('env, term, target', [
    ({'x': 'A&B'}, 'x', 'A'),
    ({}, '\\x.x', '(A->A)&(B->B)'),
    ({}, '\\x.x x', '(A&(A->B))->B'),
    ({'y': 'A'}, 'x[x/y]', 'A'),
    ({'f': 'A->B', 'a': 'A'}, '(f a)[b/a]', 'B'),
])
def test_judgments_are_derivable_and_checked(t, env, term, target):
    env = {name: parse_type(text) for name, text in env.items()}
    result = check_judgment_upto_subtype(env, t(term), parse_type(target))
    assert result.derivable
    assert check_derivation(result.derivation) == (True, [])


def test_self_application_without_intersection_is_not_found(t):
    assert not derive_judgment({}, t('\\x.x x'), parse_type('A->A')).derivable


def test_search_budget_is_respected(t):
    result = derive_judgment({}, t('\\x.x x'), parse_type('(A&(A->B))->B'), Budget(max_nodes=1))
    assert result.status == 'NotFound'


def test_check_derivation_reports_bad_nodes():
    env = make_env({'x': A})
    ok, diagnostics = check_derivation(TypeDerivation('ax', env, Var('x'), B))
    assert not ok
    assert diagnostics
    premise = TypeDerivation('ax', env, Var('x'), A)
    wrong_abs = TypeDerivation('abs', env, Lam('y', Var('x')), Arrow(B, A), (premise,))
    ok, diagnostics = check_derivation(wrong_abs)
    assert not ok
    assert any('entorno' in d for d in diagnostics)


def test_interE_projects_only_one_level():
    env = make_env({'x': Inter(A, Inter(B, C))})
    ax = TypeDerivation('ax', env, Var('x'), Inter(A, Inter(B, C)))
    assert check_derivation(TypeDerivation('interE', env, Var('x'), Inter(B, C), (ax,)))[0]
    assert not check_derivation(TypeDerivation('interE', env, Var('x'), C, (ax,)))[0]


def test_infer_simple(t):
    assert infer_simple({}, t('\\x.x')) == Arrow(Atom('a'), Atom('a'))
    assert infer_simple({'f': Arrow(A, B)}, t('\\x.f x')) == Arrow(A, B)
    assert infer_simple({}, t('x[x/\\y.y]')) == Arrow(Atom('a'), Atom('a'))


def test_infer_simple_names_avoid_environment_atoms(t):
    ty = infer_simple({'z': Atom('a')}, t('\\x.z'))
    assert ty == Arrow(Atom('b'), Atom('a'))


def test_self_application_is_not_simply_typable(t):
    with pytest.raises(UnificationFailure):
        infer_simple({}, t('\\x.x x'))
    assert not is_simply_typable(t('\\x.x x'))
    assert is_simply_typable(t('\\x.\\y.x'))


def test_infer_simple_rejects_intersections(t):
    with pytest.raises(IllFormedInput):
        infer_simple({'x': Inter(A, B)}, t('x'))


def test_revb(t):
    assert revb(t('x[x/y]')) == App(Lam('x', Var('x')), Var('y'))
    assert revb(t('\\z.z')) == t('\\z.z')
    with pytest.raises(IllFormedInput):
        revb(t('?X{x}'))


def test_revb_trace_uses_only_b(t):
    term = t('(x[x/y] z)[z/w[w/v]]')
    trace = revb_trace(term)
    assert set(trace.rules) == {Rule.B}
    assert len(trace.steps) == 3
    assert check_trace(trace, LAMBDA_EX)[0]
    assert alpha_eq(trace.final, term)
