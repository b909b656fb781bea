# -*- coding: utf-8 -*-
import random

from lexkit.enumeration import (
    METAVARIABLES, TermEnumerator, count_metavars, enumerate_lambda_terms, enumerate_terms, enumerate_types,
    labelled_instances, metaterm_cases, pair_cases, random_term, random_type, sample, term_cases,
)
from lexkit.intersection import Inter
from lexkit.labelled import LabelledCalculus, label_context
from lexkit.terms import alpha_key, has_metavars, is_lambda_term, size


def test_small_sizes_are_deduplicated_modulo_alpha():
    enumerator = TermEnumerator()
    assert len(enumerator.of_size(1)) == 3
    # λx.x, λx.y, λx.z y λy.x: cuatro clases α
    assert len(enumerator.of_size(2)) == 4
    keys = [alpha_key(t) for t in enumerator.of_size(3)]
    assert len(keys) == len(set(keys))


def test_enumerate_terms_respects_options():
    lambdas = enumerate_terms(4, substitutions=False)
    assert all(is_lambda_term(t) for t in lambdas)
    assert len(enumerate_terms(4)) > len(lambdas)
    assert len(enumerate_terms(1, metavars=METAVARIABLES)) == 4


def test_random_term_has_requested_size():
    rng = random.Random(7)
    for n in range(1, 12):
        assert size(random_term(rng, n, substitutions=True)) == n


def test_sample_is_reproducible():
    items = list(range(100))
    assert sample(items, 10, 3) == sample(items, 10, 3)
    assert len(sample(items, 10, 3)) == 10
    assert sample(items, 200, 3) == items
    assert sample(items, 10, 3).sampled
    assert not sample(items, 0, 3).sampled
    assert sample(items, 0, 3) == items


def test_term_cases_switch_to_sampling():
    cases = term_cases(8, 200, seed=11)
    assert len(cases) <= 200 + 8
    assert max(size(t) for t in cases) == 8
    keys = [alpha_key(t) for t in cases]
    assert len(keys) == len(set(keys))
    assert [alpha_key(t) for t in term_cases(8, 200, seed=11)] == keys
    assert cases.sampled


def test_term_cases_without_limit_are_exhaustive():
    cases = term_cases(3, 0, seed=11, substitutions=False)
    assert not cases.sampled
    assert len(cases) == len(enumerate_lambda_terms(3))


def test_metaterm_cases_contain_metavariables():
    cases = metaterm_cases(4, 100, seed=5)
    assert cases
    assert all(has_metavars(t) and count_metavars(t) <= 2 for t in cases)


def test_pair_cases_bound_total_size():
    assert all(size(t) + size(u) <= 5 for t, u in pair_cases(5, 1000, seed=1))


def test_enumerate_types():
    types = enumerate_types(1)
    assert len(types) == 21
    assert any(isinstance(ty, Inter) for ty in types)
    rng = random.Random(3)
    assert random_type(rng, 0).__class__.__name__ == 'Atom'


def test_labelled_instances_are_labelled(engine, t):
    calculus = LabelledCalculus(engine)
    instances = list(labelled_instances(calculus, [t('x y'), t('\\y.x')]))
    assert instances
    for term in instances:
        assert calculus.is_labelled(term, label_context(term))
