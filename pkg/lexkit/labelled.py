#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
LexKit - Banco de trabajo para el cálculo λex
Cálculo Etiquetado (λuex)

Funcionalidades:
- Construcción de términos S-etiquetados certificados por el oráculo de SN
- Medidas ar, dep, k y φ
- Proyecciones xc y desetiquetado
- Clasificación de pasos internos/externos y levantamiento de pasos λex
- Comprobación de proyecciones y de los lemas de medida sobre pasos concretos
"""

import logging
from dataclasses import dataclass, field
from enum import Enum

from lexkit.engine import SnStatus
from lexkit.errors import IllFormedInput, NotLiftable, NotSN, OracleUnknown
from lexkit.rules import LAMBDA_EX, LAMBDA_UEX, UEX, UEX_RULES, Rule
from lexkit.terms import (
    App, EqMode, ESub, Lam, LSub, MetaVar, Var,
    all_names, children, e_class, free_vars, fresh_name, has_labelled_shape, is_term,
    label_bodies, rebuild, rename_binders, rename_free, subst,
)

logger = logging.getLogger(__name__)


class StepKind(str, Enum):
    INTERNAL = 'Internal'
    EXTERNAL = 'External'


@dataclass(frozen=True)
class LabelContext:
    labels: frozenset = frozenset()

    def __contains__(self, name):
        return name in self.labels


@dataclass(frozen=True)
class Measures:
    ar: dict = field(default_factory=dict)
    dep: int = 0
    k: int = 1
    phi: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ProjectionReport:
    kind: StepKind
    claim: str
    holds: bool
    status: str


def label_context(t):
    """S inferido como la unión de las variables libres de los cuerpos etiquetados"""
    labels = frozenset()
    for body in label_bodies(t):
        labels |= free_vars(body)
    return LabelContext(labels)


# =================== MEDIDAS ===================

def ar(t, x):
    """Cuerpos de sustituciones no etiquetadas con ocurrencias libres de x"""
    if isinstance(t, (Var, MetaVar)):
        return 0
    if isinstance(t, App):
        return ar(t.fun, x) + ar(t.arg, x)
    if isinstance(t, (Lam, LSub)):
        return 0 if t.binder == x else ar(t.body, x)
    inner = 0 if t.binder == x else ar(t.body, x)
    if x in free_vars(t.arg):
        return inner + 1 + ar(t.arg, x)
    return inner


def dep(t):
    if isinstance(t, (Var, MetaVar)):
        return 0
    if isinstance(t, App):
        return dep(t.fun) + dep(t.arg)
    if isinstance(t, Lam):
        return dep(t.body)
    if isinstance(t, ESub):
        return dep(t.body) + dep(t.arg)
    return dep(t.body) + ar(t.body, t.binder)


def xc(t):
    """Calcula todas las sustituciones etiquetadas"""
    if isinstance(t, (Var, MetaVar)):
        return t
    if isinstance(t, App):
        return App(xc(t.fun), xc(t.arg))
    if isinstance(t, Lam):
        return Lam(t.binder, xc(t.body))
    if isinstance(t, ESub):
        return ESub(xc(t.body), t.binder, xc(t.arg))
    return subst(xc(t.body), t.binder, t.arg)


def unlabel(t):
    if isinstance(t, (Var, MetaVar)):
        return t
    if isinstance(t, App):
        return App(unlabel(t.fun), unlabel(t.arg))
    if isinstance(t, Lam):
        return Lam(t.binder, unlabel(t.body))
    return ESub(unlabel(t.body), t.binder, unlabel(t.arg))


def split_step(step):
    """Interno si es u̲x o si ocurre dentro del cuerpo de una sustitución etiquetada"""
    if step.rule in UEX_RULES:
        return StepKind.INTERNAL
    node = step.before
    for index in step.position:
        if isinstance(node, LSub) and index == 1:
            return StepKind.INTERNAL
        node = children(node)[index]
    return StepKind.EXTERNAL


class LabelledCalculus:
    """Operaciones que consultan el oráculo; φ se memoriza por clave de cuerpo"""

    def __init__(self, engine, max_depth=64):
        self.engine = engine
        self.max_depth = max_depth
        self._phi = {}

    def certify(self, body):
        verdict = self.engine.sn_verdict(body, LAMBDA_EX)
        if verdict.verdict is SnStatus.PROVED_NOT_SN:
            raise NotSN("El cuerpo de la sustitución no es fuertemente normalizante")
        if verdict.verdict is SnStatus.UNKNOWN:
            raise OracleUnknown("El oráculo no pudo certificar el cuerpo dentro del combustible")
        return verdict

    def is_labelled(self, t, context):
        if not has_labelled_shape(t, context.labels):
            return False
        try:
            for body in label_bodies(t):
                self.certify(body)
        except (NotSN, OracleUnknown):
            return False
        return True

    def make_labelled(self, t, x, u, args=()):
        """t[[x/u]] args con S = fv(u) y ligadores renombrados fuera de S"""
        if not all(is_term(s) for s in (t, u, *args)):
            raise IllFormedInput("make_labelled requiere términos")
        self.certify(u)
        labels = free_vars(u)
        used = set(all_names(t)) | set(all_names(u)) | set(labels)
        for arg in args:
            used |= all_names(arg)
        body = rename_binders(t, labels.__contains__, used)
        renamed_args = tuple(rename_binders(a, labels.__contains__, used) for a in args)
        if x in labels:
            new = fresh_name(x, used)
            used.add(new)
            body = rename_free(body, x, new)
            x = new
        return rebuild(LSub(body, x, u), renamed_args), LabelContext(labels)

    def phi(self, u):
        key = self.engine.key(u, EqMode.E)
        if key not in self._phi:
            verdict = self.certify(u)
            self._phi[key] = 1 + verdict.eta + verdict.max_size
        return self._phi[key]

    def k(self, t):
        if isinstance(t, (Var, MetaVar)):
            return 1
        if isinstance(t, App):
            return self.k(t.fun) + self.k(t.arg) + 1
        if isinstance(t, Lam):
            return self.k(t.body) + 1
        if isinstance(t, ESub):
            return self.k(t.body) * self.k(t.arg)
        return self.k(t.body) * self.phi(t.arg)

    def measure_report(self, t, variables=None):
        from lexkit.syntax import print_term
        context = label_context(t)
        if variables is None:
            variables = sorted(free_vars(t) - context.labels)
        return Measures(
            ar={x: ar(t, x) for x in variables},
            dep=dep(t),
            k=self.k(t),
            phi={print_term(body): self.phi(body) for body in label_bodies(t)},
        )

    # =================== PASOS ===================

    def lift_step(self, t, step):
        """Paso λuex desde t cuyo desetiquetado alcanza el destino del paso λex"""
        if self.engine.key(step.before, EqMode.E) != self.engine.key(unlabel(t), EqMode.E):
            raise NotLiftable("El paso no parte del desetiquetado de t")
        goal = self.engine.key(step.after, EqMode.E)
        for candidate in self.engine.reducts(t, LAMBDA_UEX):
            if self.engine.key(unlabel(candidate.after), EqMode.E) == goal:
                return candidate
        raise NotLiftable("Ningún paso λuex corresponde al paso λex")

    def internal_graph(self, t):
        return self.engine.explore(
            t, LAMBDA_UEX, step_filter=lambda s: split_step(s) is StepKind.INTERNAL,
        )

    def check_projection(self, step):
        """Internos: xc(t) ->* xc(t'); externos: xc(t) ->+ xc(t'); u̲ex: xc invariante"""
        kind = split_step(step)
        source, target = xc(step.before), xc(step.after)
        if step.rule in UEX_RULES:
            holds = self.engine.equivalent(source, target, EqMode.E)
            return ProjectionReport(kind, 'invariant', holds, 'decided')
        min_steps = 0 if kind is StepKind.INTERNAL else 1
        result = self.engine.find_path(source, target, LAMBDA_EX, self.max_depth, min_steps)
        claim = 'reaches' if kind is StepKind.INTERNAL else 'reaches-plus'
        if result.found:
            return ProjectionReport(kind, claim, True, 'decided')
        return ProjectionReport(kind, claim, False, 'decided' if result.status == 'unreachable' else 'fuel')

    def measure_violations(self, t):
        """Incumplimientos de los lemas de medida en los pasos u̲ex y conversiones de t"""
        context = label_context(t)
        problems = []
        names = sorted((all_names(t) | free_vars(t)) - context.labels)
        reference = (tuple(ar(t, z) for z in names), dep(t), self.k(t))
        for member in e_class(t, EqMode.EU, self.engine.class_bound).values():
            if (tuple(ar(member, z) for z in names), dep(member), self.k(member)) != reference:
                problems.append(('conversion', member))
        for step in self.engine.reducts(t, UEX):
            before, after = step.before, step.after
            ar_before = [ar(before, z) for z in names]
            ar_after = [ar(after, z) for z in names]
            if step.rule is Rule.U_COMP:
                if ar_before != ar_after or not dep(before) > dep(after):
                    problems.append((step.rule.value, step))
            elif (any(a < b for a, b in zip(ar_before, ar_after))
                  or dep(before) < dep(after)
                  or not self.k(before) > self.k(after)):
                problems.append((step.rule.value, step))
        if problems:
            logger.warning(f"{len(problems)} incumplimientos de los lemas de medida")
        return problems
