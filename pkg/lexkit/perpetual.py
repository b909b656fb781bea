#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
LexKit - Banco de trabajo para el cálculo λex
Estrategia Perpetua y Caracterización Inductiva de SN

Funcionalidades:
- Estrategia perpetua (p-var, p-abs, p-B, p-subs1, p-subs2) con oráculo de SN
- Expansión de cada paso de la estrategia a una traza λex concreta
- Derivaciones ISN dirigidas por la sintaxis, con memoria por clave canónica
- Muestreo de PSN (β frente a λex) y de la propiedad IE
"""

import logging
from dataclasses import dataclass, replace
from enum import Enum

from lexkit.composition import composition_steps
from lexkit.engine import SnStatus
from lexkit.errors import FuelExhausted, IllFormedInput
from lexkit.rules import BETA, LAMBDA_EX, Rule, Step, Trace, lift
from lexkit.terms import (
    EqMode, ESub, Lam, Var, is_lambda_term, is_term, rebuild, replace_at, spine, subst,
)

logger = logging.getLogger(__name__)


class Clause(str, Enum):
    P_VAR = 'p-var'
    P_ABS = 'p-abs'
    P_B = 'p-B'
    P_SUBS1 = 'p-subs1'
    P_SUBS2 = 'p-subs2'


@dataclass(frozen=True)
class StrategyStep:
    rule: Clause
    result: object
    oracle_calls: tuple
    chain: tuple = ()
    position: tuple = ()
    steps: tuple = ()


@dataclass(frozen=True)
class NormalForm:
    term: object


@dataclass(frozen=True)
class StrategyUnknown:
    oracle_calls: tuple


@dataclass
class StrategyTrace:
    root: object
    steps: list
    lex_trace: Trace
    status: str

    @property
    def final(self):
        return self.steps[-1].result if self.steps else self.root


def is_normal_form(t):
    """Gramática de formas normales: x t1...tn con ti normales, o λx.t con t normal"""
    head, args = spine(t)
    if isinstance(head, Var):
        return all(is_normal_form(a) for a in args)
    if isinstance(head, Lam):
        return not args and is_normal_form(head.body)
    return False


def _argument_position(count, index):
    return (0,) * (count - 1 - index) + (1,)


class PerpetualStrategy:
    """Estrategia perpetua; el test de SN de p-subs1/p-subs2 lo decide el oráculo"""

    def __init__(self, engine, oracle_fuel=None):
        self.engine = engine
        self.oracle_fuel = oracle_fuel

    def step(self, t):
        if not is_term(t):
            raise IllFormedInput("La estrategia perpetua sólo se aplica a términos")
        calls = []
        outcome = self._step(t, calls)
        if isinstance(outcome, StrategyUnknown):
            return StrategyUnknown(tuple(calls))
        if isinstance(outcome, StrategyStep):
            return replace(outcome, oracle_calls=tuple(calls))
        return outcome

    def _oracle(self, u, calls):
        verdict = self.engine.sn_verdict(u, LAMBDA_EX, self.oracle_fuel)
        calls.append((u, verdict))
        return verdict

    def _descend(self, t, clause, position, inner, rebuild_with):
        result = rebuild_with(inner.result)
        steps = lift(inner.steps, position, lambda s: replace_at(t, position, s))
        return StrategyStep(clause, result, (), (clause,) + inner.chain, position + inner.position, tuple(steps))

    def _step(self, t, calls):
        head, args = spine(t)
        count = len(args)

        if isinstance(head, Var):
            for index, arg in enumerate(args):
                if is_normal_form(arg):
                    continue
                inner = self._step(arg, calls)
                if not isinstance(inner, StrategyStep):
                    return inner
                position = _argument_position(count, index)
                return self._descend(
                    t, Clause.P_VAR, position, inner,
                    lambda r: rebuild(head, args[:index] + (r,) + args[index + 1:]),
                )
            return NormalForm(t)

        if isinstance(head, Lam):
            if not args:
                if is_normal_form(head.body):
                    return NormalForm(t)
                inner = self._step(head.body, calls)
                if not isinstance(inner, StrategyStep):
                    return inner
                return self._descend(t, Clause.P_ABS, (0,), inner, lambda r: Lam(head.binder, r))
            position = (0,) * (count - 1)
            result = rebuild(ESub(head.body, head.binder, args[0]), args[1:])
            step = Step(Rule.B, position, t, result)
            return StrategyStep(Clause.P_B, result, (), (Clause.P_B,), position, (step,))

        if isinstance(head, ESub):
            position = (0,) * count
            verdict = self._oracle(head.arg, calls)
            if verdict.verdict is SnStatus.PROVED_SN:
                result = rebuild(subst(head.body, head.binder, head.arg), args)
                steps = lift(
                    composition_steps(head.body, head.binder, head.arg),
                    position,
                    lambda s: replace_at(t, position, s),
                )
                return StrategyStep(Clause.P_SUBS1, result, (), (Clause.P_SUBS1,), position, tuple(steps))
            if verdict.verdict is SnStatus.PROVED_NOT_SN:
                inner = self._step(head.arg, calls)
                if not isinstance(inner, StrategyStep):
                    return inner
                return self._descend(
                    t, Clause.P_SUBS2, position + (1,), inner,
                    lambda r: rebuild(ESub(head.body, head.binder, r), args),
                )
            return StrategyUnknown(())

        raise IllFormedInput("Cabeza inesperada en la estrategia perpetua")

    def run(self, t, step_fuel=None):
        """Iterar la estrategia hasta forma normal, indecisión o combustible"""
        fuel = step_fuel or self.engine.step_fuel
        steps = []
        lex = Trace(root=t)
        current = t
        while True:
            outcome = self.step(current)
            if isinstance(outcome, NormalForm):
                return StrategyTrace(t, steps, lex, 'normal')
            if isinstance(outcome, StrategyUnknown):
                lex.status = 'unknown'
                return StrategyTrace(t, steps, lex, 'unknown')
            if len(steps) >= fuel:
                lex.status = 'fuel'
                raise FuelExhausted(
                    f"La estrategia no terminó tras {fuel} pasos",
                    partial=StrategyTrace(t, steps, lex, 'fuel'),
                )
            steps.append(outcome)
            lex.steps.extend(outcome.steps)
            current = outcome.result

    def normalize(self, t, step_fuel=None):
        try:
            trace = self.run(t, step_fuel)
        except FuelExhausted as exc:
            raise FuelExhausted(str(exc), partial=exc.partial.lex_trace) from exc
        if trace.status != 'normal':
            raise FuelExhausted("El oráculo no decidió un subtérmino", partial=trace.lex_trace)
        return trace.final, trace.lex_trace


# =================== ISN ===================

@dataclass(frozen=True)
class IsnDerivation:
    rule: str
    term: object
    premises: tuple = ()

    def size(self):
        seen = set()
        stack = [self]
        while stack:
            node = stack.pop()
            if id(node) in seen:
                continue
            seen.add(id(node))
            stack.extend(node.premises)
        return len(seen)


class IsnChecker:
    """Construye la única derivación ISN dirigida por la sintaxis"""

    def __init__(self, engine, depth_fuel=200):
        self.engine = engine
        self.depth_fuel = depth_fuel
        self._memo = {}
        self._active = set()

    def derive(self, t, depth=0):
        if not is_term(t):
            raise IllFormedInput("ISN sólo se define sobre términos")
        key = self.engine.key(t, EqMode.E)
        if key in self._memo:
            return self._memo[key]
        if key in self._active or depth > self.depth_fuel:
            return None
        self._active.add(key)
        try:
            node = self._derive(t, depth)
        finally:
            self._active.discard(key)
        if node is not None:
            self._memo[key] = node
        return node

    def _premises(self, rule, t, goals, depth):
        premises = []
        for goal in goals:
            premise = self.derive(goal, depth + 1)
            if premise is None:
                return None
            premises.append(premise)
        return IsnDerivation(rule, t, tuple(premises))

    def _derive(self, t, depth):
        head, args = spine(t)
        if isinstance(head, Var):
            return self._premises('var', t, args, depth)
        if isinstance(head, Lam):
            if not args:
                return self._premises('abs', t, [head.body], depth)
            opened = rebuild(ESub(head.body, head.binder, args[0]), args[1:])
            return self._premises('app', t, [opened], depth)
        unfolded = rebuild(subst(head.body, head.binder, head.arg), args)
        return self._premises('subs', t, [head.arg, unfolded], depth)


def perpetual_step(engine, t, oracle_fuel=None):
    return PerpetualStrategy(engine, oracle_fuel).step(t)


def perpetual_trace(engine, t, step_fuel=None, oracle_fuel=None):
    return PerpetualStrategy(engine, oracle_fuel).run(t, step_fuel)


def isn_check(engine, t, depth_fuel=200):
    """Derivación ISN de t, o None si la recursión no toca fondo"""
    return IsnChecker(engine, depth_fuel).derive(t)


# =================== MUESTREOS ===================

def psn_sample(engine, t):
    """Comparar SN bajo β y bajo λex para un λ-término puro"""
    if not is_lambda_term(t):
        raise IllFormedInput("PSN se muestrea sobre λ-términos puros")
    beta = engine.sn_verdict(t, BETA)
    lex = engine.sn_verdict(t, LAMBDA_EX)
    violation = beta.verdict is SnStatus.PROVED_SN and lex.verdict is SnStatus.PROVED_NOT_SN
    if violation:
        logger.warning("Violación de PSN detectada")
    return {'beta': beta, 'lex': lex, 'violation': violation}


def ie_sample(engine, t, x, u, args=()):
    """Instancia de la propiedad IE: SN(u) y SN(t{x:=u} args) implican SN(t[x/u] args)"""
    body = engine.sn_verdict(u, LAMBDA_EX)
    implicit = engine.sn_verdict(rebuild(subst(t, x, u), args), LAMBDA_EX)
    explicit = engine.sn_verdict(rebuild(ESub(t, x, u), args), LAMBDA_EX)
    applies = body.proved_sn and implicit.proved_sn
    return {
        'applies': applies,
        'explicit': explicit,
        'violation': applies and explicit.verdict is SnStatus.PROVED_NOT_SN,
    }
