#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
LexKit - Banco de trabajo para el cálculo λex
Reglas de Reescritura

Funcionalidades:
- Identificadores de reglas de β, λx, λex, λx con composición director, u̲ex y λuex
- Conjuntos de reglas con su teoría ecuacional (α, C, C∪C̲)
- Aplicación de una regla en la raíz de un subtérmino
- Pasos, trazas y verificación independiente de trazas
"""

from dataclasses import dataclass, field
from enum import Enum

from lexkit.errors import IllFormedInput
from lexkit.terms import (
    App, EqMode, ESub, Lam, LSub, Var,
    all_names, canonical_key, alpha_key, free_vars, fresh_name, is_lambda_term,
    has_metavars, is_metaterm, rename_free, replace_at, subst, subterm_at,
)


class Rule(str, Enum):
    BETA = 'beta'
    B = 'B'
    VAR = 'Var'
    GC = 'Gc'
    APP = 'App'
    LAMB = 'Lamb'
    COMP = 'Comp'
    DS_COMP = 'DsComp'
    U_VAR = 'uVar'
    U_GC = 'uGc'
    U_APP = 'uApp'
    U_LAMB = 'uLamb'
    U_COMP = 'uComp'


X_RULES = (Rule.VAR, Rule.GC, Rule.APP, Rule.LAMB)
EX_RULES = X_RULES + (Rule.COMP,)
UEX_RULES = (Rule.U_VAR, Rule.U_GC, Rule.U_APP, Rule.U_LAMB, Rule.U_COMP)


@dataclass(frozen=True)
class RuleSet:
    name: str
    rules: tuple
    eq_mode: EqMode

    def __contains__(self, rule):
        return rule in self.rules


BETA = RuleSet('Beta', (Rule.BETA,), EqMode.ALPHA)
LAMBDA_X = RuleSet('LambdaX', (Rule.B,) + X_RULES, EqMode.ALPHA)
LAMBDA_EX = RuleSet('LambdaEx', (Rule.B,) + EX_RULES, EqMode.E)
LAMBDA_X_DIRECTOR = RuleSet('LambdaXDirector', (Rule.B,) + X_RULES + (Rule.DS_COMP,), EqMode.ALPHA)
UEX = RuleSet('Uex', UEX_RULES, EqMode.EU)
LAMBDA_UEX = RuleSet('LambdaUex', (Rule.B,) + EX_RULES + UEX_RULES, EqMode.EU)
EX = RuleSet('Ex', EX_RULES, EqMode.E)

RULESETS = {rs.name.lower(): rs for rs in (BETA, LAMBDA_X, LAMBDA_EX, LAMBDA_X_DIRECTOR, UEX, LAMBDA_UEX, EX)}


def get_ruleset(name):
    """Buscar un conjunto de reglas por nombre (sin distinguir mayúsculas)"""
    key = name.replace('-', '').replace('_', '').lower()
    if key not in RULESETS:
        raise IllFormedInput(f"Conjunto de reglas desconocido: {name}")
    return RULESETS[key]


def check_well_formed(t, rs):
    if rs is BETA and not is_lambda_term(t):
        raise IllFormedInput("β sólo se aplica a λ-términos puros")
    if rs.eq_mode is not EqMode.EU and not is_metaterm(t):
        raise IllFormedInput(f"{rs.name} no admite sustituciones etiquetadas")
    if rs.eq_mode is EqMode.EU and has_metavars(t):
        raise IllFormedInput(f"{rs.name} no admite metavariables")


@dataclass(frozen=True)
class Step:
    rule: Rule
    position: tuple
    before: object
    after: object


@dataclass
class Trace:
    root: object
    steps: list = field(default_factory=list)
    status: str = 'ok'

    @property
    def final(self):
        return self.steps[-1].after if self.steps else self.root

    @property
    def rules(self):
        return [step.rule for step in self.steps]


# =================== APLICACIÓN ===================

def _fresh_binder(binder, body, arg, clash):
    """Renombrar el ligador si choca con clash (nombre externo o libre del argumento)"""
    if binder not in clash:
        return binder, body
    new = fresh_name(binder, all_names(body) | all_names(arg) | clash | {binder})
    return new, rename_free(body, binder, new)


def _push(node, kind, rule_names):
    """Reglas App/Lamb/Var/Comp para ESub (kind=ESub) o LSub (kind=LSub)"""
    body, x, v = node.body, node.binder, node.arg
    var_rule, app_rule, lamb_rule, comp_rule = rule_names
    clash = free_vars(v) | {x}

    def apply(rule):
        if rule is var_rule and isinstance(body, Var) and body.name == x:
            return v
        if rule is app_rule and isinstance(body, App):
            return App(kind(body.fun, x, v), kind(body.arg, x, v))
        if rule is lamb_rule and isinstance(body, Lam):
            binder, inner = _fresh_binder(body.binder, body.body, v, clash)
            return Lam(binder, kind(inner, x, v))
        if rule is comp_rule and isinstance(body, ESub) and x in free_vars(body.arg):
            binder, inner = _fresh_binder(body.binder, body.body, v, clash)
            return ESub(kind(inner, x, v), binder, kind(body.arg, x, v))
        return None

    return apply


_EX_NAMES = (Rule.VAR, Rule.APP, Rule.LAMB, Rule.COMP)
_UEX_NAMES = (Rule.U_VAR, Rule.U_APP, Rule.U_LAMB, Rule.U_COMP)


def apply_rule(node, rule):
    """Resultado de aplicar rule en la raíz de node, o None si no aplica"""
    if rule is Rule.BETA:
        if isinstance(node, App) and isinstance(node.fun, Lam):
            return subst(node.fun.body, node.fun.binder, node.arg)
        return None
    if rule is Rule.B:
        if isinstance(node, App) and isinstance(node.fun, Lam):
            return ESub(node.fun.body, node.fun.binder, node.arg)
        return None
    if rule in EX_RULES or rule is Rule.DS_COMP:
        if not isinstance(node, ESub):
            return None
        if rule is Rule.GC:
            return node.body if node.binder not in free_vars(node.body) else None
        if rule is Rule.DS_COMP:
            return _director_composition(node)
        return _push(node, ESub, _EX_NAMES)(rule)
    if not isinstance(node, LSub):
        return None
    if rule is Rule.U_GC:
        return node.body if node.binder not in free_vars(node.body) else None
    return _push(node, LSub, _UEX_NAMES)(rule)


def _director_composition(node):
    # t[x/u][y/v] -> t[x/u[y/v]]  si y ∈ fv(u) e y ∉ fv(t)
    inner, y, v = node.body, node.binder, node.arg
    if not isinstance(inner, ESub) or y not in free_vars(inner.arg):
        return None
    binder, body = _fresh_binder(inner.binder, inner.body, v, free_vars(v) | {y})
    if y in free_vars(body):
        return None
    return ESub(body, binder, ESub(inner.arg, y, v))


def step_at(t, position, rule):
    """Paso de rule en position de t, o None"""
    result = apply_rule(subterm_at(t, position), rule)
    if result is None:
        return None
    return Step(rule, tuple(position), t, replace_at(t, position, result))


def lift(steps, prefix, wrap):
    """Trasladar pasos locales a un contexto: posiciones con prefijo y términos envueltos"""
    return [Step(s.rule, tuple(prefix) + s.position, wrap(s.before), wrap(s.after)) for s in steps]


def check_trace(trace, rs, bound=1024):
    """Verificar cada paso contra su regla, módulo la teoría ecuacional de rs"""
    previous = trace.root
    for index, step in enumerate(trace.steps):
        if step.rule not in rs:
            return False, f"paso {index}: la regla {step.rule.value} no pertenece a {rs.name}"
        if canonical_key(step.before, rs.eq_mode, bound) != canonical_key(previous, rs.eq_mode, bound):
            return False, f"paso {index}: el término de partida no es equivalente al anterior"
        try:
            replayed = step_at(step.before, step.position, step.rule)
        except (IndexError, IllFormedInput):
            replayed = None
        if replayed is None:
            return False, f"paso {index}: {step.rule.value} no aplica en {list(step.position)}"
        if alpha_key(replayed.after) != alpha_key(step.after):
            return False, f"paso {index}: el resultado no coincide con la regla"
        previous = step.after
    return True, 'ok'
