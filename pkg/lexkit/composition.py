#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
LexKit - Banco de trabajo para el cálculo λex
Composición Completa y Simulación de β

Funcionalidades:
- Traza constructiva t[x/u] ->ex t{x:=u} (sólo reglas de sustitución)
- Pasos β en un paso sobre λ-términos puros
- Simulación de un paso β por una traza λex (B y composición completa)
"""

from lexkit.errors import IllFormedInput, NotAReduct
from lexkit.rules import Rule, Step, Trace, lift
from lexkit.terms import (
    App, ESub, Lam, LSub, MetaVar, Var,
    all_names, alpha_key, free_vars, fresh_name, is_lambda_term, positions,
    rename_free, replace_at, subst, subterm_at,
)


def _final(steps, start):
    return steps[-1].after if steps else start


def _apart(binder, body, clash, names):
    if binder not in clash:
        return binder, body
    new = fresh_name(binder, names | clash | {binder})
    return new, rename_free(body, binder, new)


def composition_steps(t, x, u):
    """Pasos ex desde t[x/u] hasta un término e-equivalente a t{x:=u}"""
    if isinstance(t, LSub) or isinstance(u, LSub):
        raise IllFormedInput("La composición completa no está definida sobre términos etiquetados")
    start = ESub(t, x, u)
    if x not in free_vars(t):
        return [Step(Rule.GC, (), start, t)]
    if isinstance(t, Var):
        return [Step(Rule.VAR, (), start, u)]
    if isinstance(t, MetaVar):
        return []
    names = all_names(t) | all_names(u)
    clash = free_vars(u) | {x}

    if isinstance(t, App):
        after = App(ESub(t.fun, x, u), ESub(t.arg, x, u))
        steps = [Step(Rule.APP, (), start, after)]
        left = composition_steps(t.fun, x, u)
        steps += lift(left, (0,), lambda s: App(s, after.arg))
        done = _final(left, after.fun)
        right = composition_steps(t.arg, x, u)
        steps += lift(right, (1,), lambda s: App(done, s))
        return steps

    if isinstance(t, Lam):
        binder, body = _apart(t.binder, t.body, clash, names)
        after = Lam(binder, ESub(body, x, u))
        steps = [Step(Rule.LAMB, (), ESub(Lam(binder, body), x, u), after)]
        inner = composition_steps(body, x, u)
        steps += lift(inner, (0,), lambda s: Lam(binder, s))
        return steps

    # t = s[y/v]
    binder, body = _apart(t.binder, t.body, clash, names)
    if x in free_vars(t.arg):
        before = ESub(ESub(body, binder, t.arg), x, u)
        after = ESub(ESub(body, x, u), binder, ESub(t.arg, x, u))
        steps = [Step(Rule.COMP, (), before, after)]
        inner = composition_steps(body, x, u)
        steps += lift(inner, (0,), lambda s: ESub(s, binder, after.arg))
        done = _final(inner, after.body)
        argument = composition_steps(t.arg, x, u)
        steps += lift(argument, (1,), lambda s: ESub(done, binder, s))
        return steps
    # x ∉ fv(v): se trabaja sobre el representante s[x/u][y/v] (C)
    inner = composition_steps(body, x, u)
    return lift(inner, (0,), lambda s: ESub(s, binder, t.arg))


def full_composition_trace(t, x, u):
    return Trace(root=ESub(t, x, u), steps=composition_steps(t, x, u))


def beta_step(t):
    """Todos los pasos β de un λ-término puro"""
    if not is_lambda_term(t):
        raise IllFormedInput("beta_step requiere un λ-término puro")
    steps = []
    for pos in positions(t):
        node = subterm_at(t, pos)
        if isinstance(node, App) and isinstance(node.fun, Lam):
            result = subst(node.fun.body, node.fun.binder, node.arg)
            steps.append(Step(Rule.BETA, pos, t, replace_at(t, pos, result)))
    return steps


def simulate_beta(t, target):
    """Traza λex de t a target cuando target es un reducto β en un paso"""
    goal = alpha_key(target)
    for step in beta_step(t):
        if alpha_key(step.after) != goal:
            continue
        redex = subterm_at(t, step.position)
        lam, arg = redex.fun, redex.arg
        opened = replace_at(t, step.position, ESub(lam.body, lam.binder, arg))
        steps = [Step(Rule.B, step.position, t, opened)]
        steps += lift(
            composition_steps(lam.body, lam.binder, arg),
            step.position,
            lambda s, pos=step.position: replace_at(t, pos, s),
        )
        return Trace(root=t, steps=steps)
    raise NotAReduct("El término destino no es un reducto β en un paso")
