# -*- coding: utf-8 -*-
import pytest

from lexkit.enumeration import METAVARIABLES, enumerate_terms
from lexkit.errors import FuelExhausted, IllFormedInput
from lexkit.terms import (
    App, EqMode, ESub, Lam, LSub, MetaVar, Var,
    alpha_eq, alpha_key, barendregt, bound_vars, canonical_key, e_class, free_vars, fresh_name,
    is_lambda_term, is_metaterm, is_term, k_term, positions, replace_at, size, spine, subst, subterm_at,
)


def test_free_and_bound_variables(t):
    term = t('\\x.x y')
    assert free_vars(term) == {'y'}
    assert bound_vars(term) == {'x'}
    assert free_vars(t('x[x/y z]')) == {'y', 'z'}
    assert free_vars(MetaVar('X', frozenset({'x', 'y'}))) == {'x', 'y'}


def test_size_and_positions(t):
    term = t('(\\x.x) y')
    assert size(term) == 4
    assert positions(term) == [(), (0,), (0, 0), (1,)]
    assert subterm_at(term, (0, 0)) == Var('x')
    assert replace_at(term, (1,), Var('z')) == App(Lam('x', Var('x')), Var('z'))


def test_spine_of_application(t):
    head, args = spine(t('f a b'))
    assert head == Var('f')
    assert args == (Var('a'), Var('b'))


def test_alpha_equivalence(t):
    assert alpha_eq(t('\\x.x'), t('\\y.y'))
    assert alpha_eq(t('x[x/z]'), t('y[y/z]'))
    assert not alpha_eq(t('\\x.y'), t('\\y.y'))
    assert alpha_key(t('\\x.\\y.x')) == 'L L #1'


def test_subst_avoids_capture(t):
    result = subst(t('\\y.x'), 'x', Var('y'))
    assert isinstance(result, Lam)
    assert result.binder != 'y'
    assert alpha_eq(result, t('\\z.y'))


def test_subst_on_metavariable_leaves_explicit_substitution():
    meta = MetaVar('X', frozenset({'x'}))
    assert subst(meta, 'x', Var('y')) == ESub(meta, 'x', Var('y'))
    assert subst(meta, 'z', Var('y')) == meta


def test_subst_rejects_labelled_terms():
    with pytest.raises(IllFormedInput):
        subst(LSub(Var('x'), 'x', Var('y')), 'x', Var('z'))


def test_term_classes(t):
    assert is_lambda_term(t('\\x.x x'))
    assert not is_lambda_term(t('x[x/y]'))
    assert is_term(t('x[x/y]'))
    assert not is_term(t('?X{x}'))
    assert is_metaterm(t('?X{x}[x/y]'))
    assert not is_metaterm(t('x[[x/y]]'))


def test_independent_substitutions_commute(t):
    left = t('x[x/y][z/w]')
    members = e_class(left, EqMode.E)
    assert len(members) == 2
    assert alpha_key(t('x[z/w][x/y]')) in members
    assert len(e_class(left, EqMode.ALPHA)) == 1


def test_dependent_substitutions_do_not_commute(t):
    # y libre en el argumento interno: no hay intercambio
    assert len(e_class(t('x[x/y][y/w]'), EqMode.E)) == 1


def test_captured_inner_binder_is_renamed_before_swapping(t):
    # el ligador interno y aparece libre en el argumento externo: se renombra y el intercambio procede
    members = e_class(t('x[y/a][z/y]'), EqMode.E)
    assert len(members) == 2
    assert alpha_key(t('x[z/y][y1/a]')) in members


def test_labelled_swap_only_in_eu_mode(t):
    term = t('x[[x/y]][z/w]')
    assert len(e_class(term, EqMode.E)) == 1
    assert len(e_class(term, EqMode.EU)) == 2


def test_canonical_key_is_shared_by_the_class(t):
    assert canonical_key(t('x[x/y][z/w]'), EqMode.E) == canonical_key(t('x[z/w][x/y]'), EqMode.E)


def test_class_bound_raises_fuel_exhausted(t):
    with pytest.raises(FuelExhausted):
        e_class(t('x[x/y][z/w]'), EqMode.E, bound=1)


def test_fresh_name_and_barendregt(t):
    assert fresh_name('x', {'x', 'x1'}) == 'x2'
    renamed = barendregt(t('(\\x.x) (\\x.x)'))
    assert len(bound_vars(renamed)) == 2
    assert alpha_eq(renamed, t('(\\x.x) (\\x.x)'))


def test_k_term_multiplies_substitutions(t):
    assert k_term(t('x')) == 1
    assert k_term(t('x y')) == 3
    assert k_term(t('(x y)[x/z z]')) == 9


# =================== PROPIEDADES SOBRE TÉRMINOS PEQUEÑOS ===================

def test_substitution_free_variables():
    arguments = enumerate_terms(2)
    for term in enumerate_terms(4, metavars=METAVARIABLES):
        for u in arguments:
            result = free_vars(subst(term, 'x', u))
            assert result <= (free_vars(term) - {'x'}) | free_vars(u), (term, u)
            if 'x' in free_vars(term):
                assert free_vars(u) <= result


def test_substitutions_compose_up_to_c(t):
    arguments = [t('y'), t('z'), t('x z'), t('\\w.y')]
    # y ∉ fv(v) y x ∉ fv(v)
    outers = [t('z'), t('\\w.w'), t('z z'), t('\\x.z')]
    for term in enumerate_terms(3, metavars=METAVARIABLES):
        for u in arguments:
            for v in outers:
                left = subst(subst(term, 'x', u), 'y', v)
                right = subst(subst(term, 'y', v), 'x', subst(u, 'y', v))
                assert canonical_key(left, EqMode.E) == canonical_key(right, EqMode.E), (term, u, v)
