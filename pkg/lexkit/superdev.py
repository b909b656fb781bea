#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
LexKit - Banco de trabajo para el cálculo λex
Superdesarrollos y Confluencia

Funcionalidades:
- Función de superdesarrollo sobre metatérminos
- Verificación de la propiedad Z paso a paso con trazas comprobables
- Búsqueda acotada de confluencia y el contraejemplo clásico de λx
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from lexkit.errors import FuelExhausted, IllFormedInput
from lexkit.rules import LAMBDA_EX, LAMBDA_X, Step
from lexkit.terms import App, ESub, Lam, LSub, MetaVar, Var, subst

logger = logging.getLogger(__name__)


def superdev(t):
    """•t: contrae todos los redexes B/β residuales y creados"""
    if isinstance(t, (Var, MetaVar)):
        return t
    if isinstance(t, Lam):
        return Lam(t.binder, superdev(t.body))
    if isinstance(t, App):
        fun = superdev(t.fun)
        arg = superdev(t.arg)
        if isinstance(fun, Lam):
            return subst(fun.body, fun.binder, arg)
        return App(fun, arg)
    if isinstance(t, LSub):
        raise IllFormedInput("El superdesarrollo no está definido sobre términos etiquetados")
    return subst(superdev(t.body), t.binder, superdev(t.arg))


# =================== PROPIEDAD Z ===================

class ZStatus(str, Enum):
    VERIFIED = 'Verified'
    FAILED = 'Failed'
    FUEL_EXHAUSTED = 'FuelExhausted'


@dataclass(frozen=True)
class ZReport:
    subject: object
    step: Step
    leg1: object = None
    leg2: object = None
    status: ZStatus = ZStatus.VERIFIED
    failed_leg: Optional[int] = None


def _leg_status(result):
    if result.found:
        return None
    return ZStatus.FAILED if result.status == 'unreachable' else ZStatus.FUEL_EXHAUSTED


def z_check(engine, t, fuel=64, rs=LAMBDA_EX):
    """Un informe por reducto en un paso: u ->* •t y •t ->* •u"""
    target = superdev(t)
    reports = []
    for step in engine.reducts(t, rs):
        first = engine.find_path(step.after, target, rs, max_depth=fuel)
        status = _leg_status(first)
        if status is not None:
            reports.append(ZReport(t, step, status=status, failed_leg=1 if status is ZStatus.FAILED else None))
            continue
        second = engine.find_path(target, superdev(step.after), rs, max_depth=fuel)
        status = _leg_status(second)
        if status is not None:
            reports.append(ZReport(t, step, first.trace, status=status,
                                   failed_leg=2 if status is ZStatus.FAILED else None))
            continue
        reports.append(ZReport(t, step, first.trace, second.trace))
    failed = [r for r in reports if r.status is ZStatus.FAILED]
    if failed:
        logger.warning(f"Propiedad Z sin verificar en {len(failed)} de {len(reports)} reductos")
    return reports


# =================== CONFLUENCIA ===================

class ConfluenceStatus(str, Enum):
    CONFLUENT = 'Confluent'
    COUNTEREXAMPLE = 'CounterexamplePeak'
    FUEL_EXHAUSTED = 'FuelExhausted'


@dataclass(frozen=True)
class ConfluenceReport:
    status: ConfluenceStatus
    peak: tuple = ()
    pairs: int = 0
    reachable: int = 0


def _reachable(engine, t, rs, depth):
    """Claves alcanzables en a lo sumo depth pasos; closed indica búsqueda agotada"""
    start = engine.key(t, rs.eq_mode)
    nodes = {start: t}
    frontier = [(start, t)]
    for _ in range(depth):
        following = []
        for _, term in frontier:
            for step in engine.reducts(term, rs):
                reached = engine.key(step.after, rs.eq_mode)
                if reached not in nodes:
                    nodes[reached] = step.after
                    following.append((reached, step.after))
        frontier = following
        if not frontier:
            return nodes, True
    closed = all(
        engine.key(step.after, rs.eq_mode) in nodes
        for _, term in frontier for step in engine.reducts(term, rs)
    )
    return nodes, closed


def confluence_check(engine, t, depth=3, join_depth=6, rs=LAMBDA_EX):
    """Todo par de claves alcanzables debe tener un reducto común en join_depth pasos"""
    try:
        nodes, _ = _reachable(engine, t, rs, depth)
        forward = {key: _reachable(engine, term, rs, join_depth) for key, term in nodes.items()}
    except FuelExhausted as exc:
        logger.info(f"Confluencia indecisa: {exc}")
        return ConfluenceReport(ConfluenceStatus.FUEL_EXHAUSTED)
    keys = sorted(nodes)
    pairs = 0
    undecided = None
    for index, left in enumerate(keys):
        for right in keys[index + 1:]:
            pairs += 1
            left_set, left_closed = forward[left]
            right_set, right_closed = forward[right]
            if left_set.keys() & right_set.keys():
                continue
            peak = (nodes[left], nodes[right])
            if left_closed and right_closed:
                logger.info(f"Pico no confluente bajo {rs.name}")
                return ConfluenceReport(ConfluenceStatus.COUNTEREXAMPLE, peak, pairs, len(nodes))
            undecided = undecided or peak
    if undecided is not None:
        return ConfluenceReport(ConfluenceStatus.FUEL_EXHAUSTED, undecided, pairs, len(nodes))
    return ConfluenceReport(ConfluenceStatus.CONFLUENT, (), pairs, len(nodes))


def nonconfluence_peak():
    """((λx.X{x,y}) y)[y/z]"""
    return ESub(App(Lam('x', MetaVar('X', frozenset({'x', 'y'}))), Var('y')), 'y', Var('z'))


def lambda_x_nonconfluence_demo(engine, depth=4, join_depth=6):
    report = confluence_check(engine, nonconfluence_peak(), depth, join_depth, LAMBDA_X)
    if report.status is not ConfluenceStatus.COUNTEREXAMPLE:
        logger.warning(f"El pico de λx no se reprodujo: {report.status.value}")
    return report
