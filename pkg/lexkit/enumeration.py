#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
LexKit - Banco de trabajo para el cálculo λex
Enumeración y Generación de Términos

Funcionalidades:
- Enumeración exhaustiva de términos por tamaño (sin duplicados módulo α)
- Metatérminos con un repertorio fijo de metavariables
- Generación aleatoria reproducible de términos
- Enumeración de tipos con intersección por profundidad
- Términos etiquetados construidos a partir de términos puros
"""

import random

from lexkit.intersection import Arrow, Atom, Inter
from lexkit.terms import (
    App, ESub, Lam, MetaVar, Var, alpha_key, children, has_metavars, positions, replace_at, subterm_at,
)

VARIABLES = ('x', 'y', 'z')
ATOMS = ('A', 'B', 'C')
METAVARIABLES = (MetaVar('X', frozenset({'x', 'y'})),)
SN_LABEL_BODIES = (
    Var('w'),
    App(Var('w'), Var('w')),
    Lam('a', Var('a')),
    App(Lam('a', App(Var('a'), Var('a'))), Var('w')),
)


class TermEnumerator:
    """Términos de cada tamaño con memoria; tamaño = número de nodos"""

    def __init__(self, variables=VARIABLES, substitutions=True, metavars=()):
        self.variables = tuple(variables)
        self.substitutions = substitutions
        self.metavars = tuple(metavars)
        self._cache = {}

    def of_size(self, n):
        if n in self._cache:
            return self._cache[n]
        found = {}

        def keep(t):
            found.setdefault(alpha_key(t), t)

        if n == 1:
            for name in self.variables:
                keep(Var(name))
            for meta in self.metavars:
                keep(meta)
        elif n > 1:
            for body in self.of_size(n - 1):
                for x in self.variables:
                    keep(Lam(x, body))
            for k in range(1, n - 1):
                for left in self.of_size(k):
                    for right in self.of_size(n - 1 - k):
                        keep(App(left, right))
                        if self.substitutions:
                            for x in self.variables:
                                keep(ESub(left, x, right))
        terms = tuple(found[k] for k in sorted(found))
        self._cache[n] = terms
        return terms

    def up_to(self, n):
        for k in range(1, n + 1):
            yield from self.of_size(k)


def enumerate_terms(max_size, variables=VARIABLES, substitutions=True, metavars=()):
    return list(TermEnumerator(variables, substitutions, metavars).up_to(max_size))


def enumerate_lambda_terms(max_size, variables=VARIABLES):
    return enumerate_terms(max_size, variables, substitutions=False)


def count_metavars(t):
    return sum(1 for p in positions(t) if isinstance(subterm_at(t, p), MetaVar))


class Cases(list):
    """Lista de casos que recuerda si hubo muestreo (sampled) o es exhaustiva"""

    def __init__(self, items=(), sampled=False):
        super().__init__(items)
        self.sampled = sampled


def sample(items, limit, seed):
    """Subconjunto reproducible de a lo sumo limit elementos, en el orden original; limit 0 = sin límite"""
    items = list(items)
    if not limit or len(items) <= limit:
        return Cases(items)
    chosen = sorted(random.Random(seed).sample(range(len(items)), limit))
    return Cases((items[i] for i in chosen), sampled=True)


def random_term(rng, size, variables=VARIABLES, substitutions=False, metavars=()):
    """Término aleatorio con exactamente size nodos"""
    if size <= 1:
        leaves = [Var(name) for name in variables] + list(metavars)
        return rng.choice(leaves)
    kinds = ['lam']
    if size >= 3:
        kinds.append('app')
        if substitutions:
            kinds.append('sub')
    kind = rng.choice(kinds)
    if kind == 'lam':
        return Lam(rng.choice(variables), random_term(rng, size - 1, variables, substitutions, metavars))
    k = rng.randint(1, size - 2)
    left = random_term(rng, k, variables, substitutions, metavars)
    right = random_term(rng, size - 1 - k, variables, substitutions, metavars)
    if kind == 'app':
        return App(left, right)
    return ESub(left, rng.choice(variables), right)


def enumerate_types(depth, atoms=ATOMS):
    """Tipos de profundidad a lo sumo depth (los átomos tienen profundidad 0)"""
    levels = [tuple(Atom(a) for a in atoms)]
    for _ in range(depth):
        previous = [ty for level in levels for ty in level]
        fresh = []
        for left in previous:
            for right in previous:
                fresh.append(Arrow(left, right))
                fresh.append(Inter(left, right))
        known = set(previous)
        levels.append(tuple(dict.fromkeys(ty for ty in fresh if ty not in known)))
    return [ty for level in levels for ty in level]


def labelled_instances(calculus, terms, bodies=SN_LABEL_BODIES, binders=('x', 'y')):
    """Términos etiquetados: una etiqueta en la raíz o en un hijo inmediato de cada término puro"""
    for t in terms:
        spots = [()] + [(i,) for i in range(len(children(t)))]
        for pos in spots:
            s = subterm_at(t, pos)
            for x in binders:
                for body in bodies:
                    labelled, _ = calculus.make_labelled(s, x, body)
                    yield replace_at(t, pos, labelled)


def random_type(rng, depth, atoms=ATOMS):
    if depth <= 0 or rng.random() < 0.25:
        return Atom(rng.choice(atoms))
    left = random_type(rng, depth - 1, atoms)
    right = random_type(rng, depth - 1, atoms)
    return Arrow(left, right) if rng.random() < 0.5 else Inter(left, right)


def _layer_estimate(enumerator, n):
    counts = [len(enumerator.of_size(k)) for k in range(1, n)]
    factor = 1 + (len(enumerator.variables) if enumerator.substitutions else 0)
    lambdas = len(enumerator.variables) * counts[-1]
    applications = sum(counts[k - 1] * counts[n - 2 - k] for k in range(1, n - 1))
    return lambdas + factor * applications


def term_cases(max_size, limit, seed, substitutions=True, metavars=(), accept=None):
    """Exhaustivo mientras quepa en limit (0 = siempre); los tamaños restantes se muestrean al azar"""
    accept = accept or (lambda t: True)
    enumerator = TermEnumerator(VARIABLES, substitutions, metavars)
    cases = Cases()
    n = 1
    while n <= max_size:
        if limit and n > 1 and len(cases) + _layer_estimate(enumerator, n) > limit:
            break
        cases.extend(t for t in enumerator.of_size(n) if accept(t))
        n += 1
    remaining = list(range(n, max_size + 1))
    if not remaining:
        return cases
    cases.sampled = True
    rng = random.Random(seed)
    seen = {alpha_key(t) for t in cases}
    per_size = max(1, (limit - len(cases)) // len(remaining))
    for target in remaining:
        drawn = 0
        for _ in range(per_size * 10):
            if drawn >= per_size:
                break
            t = random_term(rng, target, VARIABLES, substitutions, metavars)
            key = alpha_key(t)
            if key in seen or not accept(t):
                continue
            seen.add(key)
            cases.append(t)
            drawn += 1
    return cases


def metaterm_cases(max_size, limit, seed, max_metavars=2, metavars=METAVARIABLES):
    return term_cases(
        max_size, limit, seed, True, metavars,
        accept=lambda t: has_metavars(t) and count_metavars(t) <= max_metavars,
    )


def pair_cases(max_total, limit, seed, substitutions=False):
    """Pares (t, u) con size(t) + size(u) <= max_total"""
    enumerator = TermEnumerator(VARIABLES, substitutions)
    pairs = (
        (t, u)
        for st in range(1, max_total)
        for su in range(1, max_total - st + 1)
        for t in enumerator.of_size(st)
        for u in enumerator.of_size(su)
    )
    return sample(pairs, limit, seed)
