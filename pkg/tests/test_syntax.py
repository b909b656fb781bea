# -*- coding: utf-8 -*-
import pytest

from lexkit.errors import IllFormedInput, ParseError
from lexkit.intersection import Arrow, Atom, Inter, derive_judgment
from lexkit.syntax import dump_derivation, load_derivation, parse_term, parse_type, print_term, print_type
from lexkit.terms import App, ESub, Lam, LSub, MetaVar, Var


@pytest.mark.parametrize('text', [
    'x',
    '\\x.x y',
    '(\\x.x) y',
    'x (y z)',
    'x[x/y z]',
    'x[[x/w]]',
    '?X{x,y}',
    '(z y x)[y/x x][x/v]',
    '\\x.?X{x}[x/y]',
])
def test_print_is_stable(text):
    assert print_term(parse_term(text)) == text


def test_application_is_left_associative():
    assert parse_term('x y z') == App(App(Var('x'), Var('y')), Var('z'))


def test_lambda_symbols_are_interchangeable():
    assert parse_term('λx.x') == parse_term('\\x.x') == Lam('x', Var('x'))


def test_substitution_suffixes_nest_to_the_left():
    assert parse_term('x[x/y][y/z]') == ESub(ESub(Var('x'), 'x', Var('y')), 'y', Var('z'))
    assert parse_term('x[[x/y]]') == LSub(Var('x'), 'x', Var('y'))


def test_metavariable_decoration():
    assert parse_term('?X{}') == MetaVar('X', frozenset())
    assert parse_term('?X{y,x}') == MetaVar('X', frozenset({'x', 'y'}))


@pytest.mark.parametrize('text', ['\\x.', '(x', 'x[x/]', 'x )'])
def test_parse_errors_carry_span(text):
    with pytest.raises(ParseError) as info:
        parse_term(text)
    assert info.value.exit_code == 65
    assert 0 <= info.value.span.start <= info.value.span.end <= len(text.encode('utf-8'))


def test_types():
    assert parse_type('A&B->C') == Arrow(Inter(Atom('A'), Atom('B')), Atom('C'))
    assert parse_type('A->B->C') == Arrow(Atom('A'), Arrow(Atom('B'), Atom('C')))
    assert print_type(parse_type('(A->B)&C')) == '(A->B)&C'
    assert print_type(parse_type('(A->B)->C')) == '(A->B)->C'


def test_derivation_json_survives_dump_and_load():
    derivation = derive_judgment({'x': parse_type('A&B')}, parse_term('x'), Atom('A')).derivation
    data = dump_derivation(derivation)
    assert data['rule'] == 'interE'
    assert load_derivation(data) == derivation


def test_derivation_json_accepts_rule_aliases():
    data = {
        'rule': '∩E', 'env': [['x', 'A&B']], 'term': 'x', 'type': 'A',
        'premises': [{'rule': 'ax', 'env': [['x', 'A&B']], 'term': 'x', 'type': 'A&B'}],
    }
    assert load_derivation(data).rule == 'interE'


def test_derivation_json_rejects_duplicate_bindings():
    data = {'rule': 'ax', 'env': [['x', 'A'], ['x', 'B']], 'term': 'x', 'type': 'A'}
    with pytest.raises(IllFormedInput):
        load_derivation(data)
