#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
LexKit - Banco de trabajo para el cálculo λex
Tipos con Intersección y Tipos Simples

Funcionalidades:
- Tipos atómicos, flechas e intersecciones; aplanado y subtipado ≪
- Verificación de derivaciones del sistema ∩ (ax, app, abs, subs, ∩I, ∩E)
- Búsqueda acotada de derivaciones guiada por el lema de generación
- Inferencia de tipos simples por unificación
- Traducción revb a λ-términos y su traza de pasos B
"""

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache

from lexkit.errors import IllFormedInput, UnificationFailure
from lexkit.rules import Rule, Step, Trace, lift
from lexkit.terms import App, ESub, Lam, Var, free_vars, is_term

logger = logging.getLogger(__name__)


# =================== TIPOS ===================

@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Arrow:
    domain: object
    codomain: object


@dataclass(frozen=True)
class Inter:
    left: object
    right: object


def flatten(ty):
    """Componentes no intersección, separando sólo los ∩ de primer nivel"""
    if isinstance(ty, Inter):
        return flatten(ty.left) + flatten(ty.right)
    return (ty,)


def subtype(a, b):
    """a ≪ b sii cada componente de b aparece literalmente entre las de a"""
    components = set(flatten(a))
    return all(c in components for c in flatten(b))


def subtypes_of(ty):
    """Todos los subtipos sintácticos (incluido ty)"""
    found = [ty]
    if isinstance(ty, Arrow):
        found += subtypes_of(ty.domain) + subtypes_of(ty.codomain)
    elif isinstance(ty, Inter):
        found += subtypes_of(ty.left) + subtypes_of(ty.right)
    return found


def intersect(types):
    """A1 ∩ (A2 ∩ (... ∩ An))"""
    types = list(types)
    result = types[-1]
    for ty in reversed(types[:-1]):
        result = Inter(ty, result)
    return result


def derive_subtype(a, b, depth=6):
    """Búsqueda de derivaciones de a ≪ b con reflexividad, proyecciones, transitividad y glb"""
    universe = tuple(dict.fromkeys(subtypes_of(a) + subtypes_of(b)))

    @lru_cache(maxsize=None)
    def holds(x, y, budget):
        if x == y:
            return True
        if isinstance(x, Inter) and y in (x.left, x.right):
            return True
        if budget == 0:
            return False
        if isinstance(y, Inter) and holds(x, y.left, budget - 1) and holds(x, y.right, budget - 1):
            return True
        return any(
            holds(x, z, budget - 1) and holds(z, y, budget - 1)
            for z in universe if z != x and z != y
        )

    return holds(a, b, depth)


# =================== DERIVACIONES ===================

RULE_NAMES = ('ax', 'app', 'abs', 'subs', 'interI', 'interE')

_ALIASES = {
    '∩i': 'interI', '∩e': 'interE',
    'interi': 'interI', 'intere': 'interE',
    'inter-i': 'interI', 'inter-e': 'interE',
    'inter_i': 'interI', 'inter_e': 'interE',
}


def normalize_rule_name(name):
    text = str(name).strip()
    if text in RULE_NAMES:
        return text
    key = text.replace(' ', '').lower()
    if key in _ALIASES:
        return _ALIASES[key]
    if key in RULE_NAMES:
        return key
    raise IllFormedInput(f"Regla de tipado desconocida: {name}")


def make_env(mapping):
    return tuple(sorted(dict(mapping).items()))


@dataclass(frozen=True)
class TypeDerivation:
    rule: str
    env: tuple
    term: object
    type: object
    premises: tuple = ()

    @property
    def environment(self):
        return dict(self.env)


def _extended(env, name, ty):
    extended = dict(env)
    extended[name] = ty
    return make_env(extended)


def _check_node(d):
    """Diagnósticos de un único nodo frente al esquema de su regla"""
    from lexkit.syntax import print_term, print_type

    problems = []
    term, ty, prem = d.term, d.type, d.premises
    env = d.environment
    arity = {'ax': 0, 'app': 2, 'abs': 1, 'subs': 2, 'interI': 2, 'interE': 1}
    if d.rule not in arity:
        return [f"regla desconocida {d.rule}"]
    if len(dict(d.env)) != len(d.env):
        problems.append("el entorno liga dos veces el mismo identificador")
    if len(prem) != arity[d.rule]:
        return problems + [f"{d.rule} espera {arity[d.rule]} premisas, tiene {len(prem)}"]
    label = f"{d.rule} en {print_term(term)}"

    if d.rule == 'ax':
        if not isinstance(term, Var):
            problems.append(f"{label}: ax requiere una variable")
        elif env.get(term.name) != ty:
            problems.append(f"{label}: {term.name}:{print_type(ty)} no está en el entorno")
    elif d.rule == 'app':
        fun, arg = prem
        if not isinstance(term, App):
            problems.append(f"{label}: app requiere una aplicación")
        else:
            if fun.term != term.fun or arg.term != term.arg:
                problems.append(f"{label}: los sujetos de las premisas no coinciden")
            if fun.type != Arrow(arg.type, ty):
                problems.append(f"{label}: se esperaba {print_type(Arrow(arg.type, ty))} para la función")
        if fun.env != d.env or arg.env != d.env:
            problems.append(f"{label}: las premisas cambian el entorno")
    elif d.rule == 'abs':
        (body,) = prem
        if not isinstance(term, Lam):
            problems.append(f"{label}: abs requiere una abstracción")
        elif not isinstance(ty, Arrow):
            problems.append(f"{label}: abs concluye un tipo flecha")
        else:
            if body.term != term.body or body.type != ty.codomain:
                problems.append(f"{label}: la premisa no tipa el cuerpo con el codominio")
            if body.env != _extended(env, term.binder, ty.domain):
                problems.append(f"{label}: el entorno de la premisa no añade {term.binder}:{print_type(ty.domain)}")
    elif d.rule == 'subs':
        arg, body = prem
        if not isinstance(term, ESub):
            problems.append(f"{label}: subs requiere una sustitución explícita")
        else:
            if arg.term != term.arg or arg.env != d.env:
                problems.append(f"{label}: la primera premisa debe tipar el argumento en el mismo entorno")
            if body.term != term.body or body.type != ty:
                problems.append(f"{label}: la segunda premisa debe tipar el cuerpo con el tipo concluido")
            if body.env != _extended(env, term.binder, arg.type):
                problems.append(f"{label}: el entorno de la segunda premisa no añade {term.binder}")
    elif d.rule == 'interI':
        left, right = prem
        if ty != Inter(left.type, right.type):
            problems.append(f"{label}: ∩I concluye la intersección de las premisas")
        if any(p.term != term or p.env != d.env for p in prem):
            problems.append(f"{label}: ∩I no cambia sujeto ni entorno")
    else:
        (source,) = prem
        if not isinstance(source.type, Inter) or ty not in (source.type.left, source.type.right):
            problems.append(f"{label}: ∩E sólo proyecta una componente de A1∩A2")
        if source.term != term or source.env != d.env:
            problems.append(f"{label}: ∩E no cambia sujeto ni entorno")
    return problems


def check_derivation(d):
    """(ok, diagnósticos) recorriendo todos los nodos"""
    diagnostics = []
    stack = [d]
    while stack:
        node = stack.pop()
        diagnostics += _check_node(node)
        stack.extend(node.premises)
    return not diagnostics, diagnostics


# =================== BÚSQUEDA DE DERIVACIONES ===================

@dataclass(frozen=True)
class Budget:
    max_components: int = 2
    max_pool: int = 12
    max_nodes: int = 20000


DERIVABLE = 'Derivable'
NOT_FOUND = 'NotFound'


@dataclass(frozen=True)
class JudgmentResult:
    status: str
    derivation: object = None

    @property
    def derivable(self):
        return self.status == DERIVABLE


class _SearchExhausted(Exception):
    pass


class JudgmentSearch:
    """Búsqueda hacia atrás dirigida por la sintaxis; NotFound no es una refutación"""

    def __init__(self, budget=None):
        self.budget = budget or Budget()
        self.nodes = 0
        self._memo = {}
        self.pool = ()

    def _build_pool(self, env, target):
        components = []
        for ty in list(dict(env).values()) + [target]:
            for sub in subtypes_of(ty):
                for part in flatten(sub):
                    if part not in components:
                        components.append(part)
        components = components[:self.budget.max_pool]
        pool = []
        for count in range(1, self.budget.max_components + 1):
            for combo in itertools.combinations(components, count):
                pool.append(intersect(combo))
        return tuple(pool)

    def run(self, env, t, target):
        env = make_env(env)
        self.pool = self._build_pool(env, target)
        try:
            derivation = self.derive(env, t, target)
        except _SearchExhausted:
            logger.debug(f"Búsqueda de derivación agotada tras {self.nodes} nodos")
            return JudgmentResult(NOT_FOUND)
        if derivation is None:
            return JudgmentResult(NOT_FOUND)
        return JudgmentResult(DERIVABLE, derivation)

    def derive(self, env, t, target):
        memo = (env, t, target)
        if memo in self._memo:
            return self._memo[memo]
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            raise _SearchExhausted()
        result = self._derive(env, t, target)
        self._memo[memo] = result
        return result

    def _derive(self, env, t, target):
        if isinstance(target, Inter):
            left = self.derive(env, t, target.left)
            right = left and self.derive(env, t, target.right)
            return right and TypeDerivation('interI', env, t, target, (left, right))
        if isinstance(t, Var):
            declared = dict(env).get(t.name)
            if declared is None:
                return None
            return _project(TypeDerivation('ax', env, t, declared), target)
        if isinstance(t, Lam):
            if not isinstance(target, Arrow):
                return None
            body = self.derive(_extended(env, t.binder, target.domain), t.body, target.codomain)
            return body and TypeDerivation('abs', env, t, target, (body,))
        if isinstance(t, App):
            for candidate in self.pool:
                fun = self.derive(env, t.fun, Arrow(candidate, target))
                arg = fun and self.derive(env, t.arg, candidate)
                if arg:
                    return TypeDerivation('app', env, t, target, (fun, arg))
            return None
        if isinstance(t, ESub):
            for candidate in self.pool:
                arg = self.derive(env, t.arg, candidate)
                body = arg and self.derive(_extended(env, t.binder, candidate), t.body, target)
                if body:
                    return TypeDerivation('subs', env, t, target, (arg, body))
        return None


def _project(d, target):
    """Cadena de ∩E desde d hasta la componente target"""
    if d.type == target:
        return d
    if not isinstance(d.type, Inter):
        return None
    for side in (d.type.left, d.type.right):
        if target in flatten(side) or side == target:
            return _project(TypeDerivation('interE', d.env, d.term, side, (d,)), target)
    return None


def derive_judgment(env, t, target, budget=None):
    return JudgmentSearch(budget).run(env, t, target)


def check_judgment_upto_subtype(env, t, target, budget=None):
    """Derivable con una derivación verificada, o NotFound"""
    result = derive_judgment(env, t, target, budget)
    if result.derivable:
        ok, diagnostics = check_derivation(result.derivation)
        if not ok:
            logger.error(f"Derivación construida inválida: {diagnostics}")
            return JudgmentResult(NOT_FOUND)
    return result


# =================== TIPOS SIMPLES ===================

@dataclass(frozen=True)
class _TVar:
    index: int


class _Unifier:
    def __init__(self):
        self.bindings = {}
        self._counter = itertools.count()

    def fresh(self):
        return _TVar(next(self._counter))

    def resolve(self, ty):
        while isinstance(ty, _TVar) and ty in self.bindings:
            ty = self.bindings[ty]
        return ty

    def occurs(self, var, ty):
        ty = self.resolve(ty)
        if ty == var:
            return True
        if isinstance(ty, Arrow):
            return self.occurs(var, ty.domain) or self.occurs(var, ty.codomain)
        return False

    def unify(self, a, b):
        a, b = self.resolve(a), self.resolve(b)
        if a == b:
            return
        if isinstance(a, _TVar) or isinstance(b, _TVar):
            var, other = (a, b) if isinstance(a, _TVar) else (b, a)
            if self.occurs(var, other):
                raise UnificationFailure("Occurs-check: el tipo sería infinito")
            self.bindings[var] = other
            return
        if isinstance(a, Arrow) and isinstance(b, Arrow):
            self.unify(a.domain, b.domain)
            self.unify(a.codomain, b.codomain)
            return
        raise UnificationFailure("Choque de constructores de tipo")

    def infer(self, env, t):
        if isinstance(t, Var):
            return env[t.name]
        if isinstance(t, Lam):
            domain = self.fresh()
            return Arrow(domain, self.infer({**env, t.binder: domain}, t.body))
        if isinstance(t, App):
            fun = self.infer(env, t.fun)
            arg = self.infer(env, t.arg)
            result = self.fresh()
            self.unify(fun, Arrow(arg, result))
            return result
        arg = self.infer(env, t.arg)
        return self.infer({**env, t.binder: arg}, t.body)

    def expand(self, ty):
        ty = self.resolve(ty)
        if isinstance(ty, Arrow):
            return Arrow(self.expand(ty.domain), self.expand(ty.codomain))
        return ty


def _atom_names(ty, names):
    if isinstance(ty, Atom):
        names.add(ty.name)
    elif isinstance(ty, Arrow):
        _atom_names(ty.domain, names)
        _atom_names(ty.codomain, names)


def _type_variable_names(avoid):
    for length in itertools.count(1):
        for letters in itertools.product('abcdefghijklmnopqrstuvwxyz', repeat=length):
            name = ''.join(letters)
            if name not in avoid:
                yield name


def infer_simple(env, t):
    """Tipo simple principal de t en env (variables de tipo como átomos a, b, ...)"""
    if not is_term(t):
        raise IllFormedInput("La inferencia de tipos simples requiere un término")
    used = set()
    for ty in env.values():
        if any(isinstance(s, Inter) for s in subtypes_of(ty)):
            raise IllFormedInput("El entorno de tipos simples no admite intersecciones")
        _atom_names(ty, used)
    unifier = _Unifier()
    scope = dict(env)
    for name in sorted(free_vars(t) - set(env)):
        scope[name] = unifier.fresh()
    result = unifier.expand(unifier.infer(scope, t))

    names = _type_variable_names(used)
    renaming = {}

    def rename(ty):
        if isinstance(ty, _TVar):
            if ty not in renaming:
                renaming[ty] = Atom(next(names))
            return renaming[ty]
        if isinstance(ty, Arrow):
            return Arrow(rename(ty.domain), rename(ty.codomain))
        return ty

    return rename(result)


def is_simply_typable(t):
    try:
        infer_simple({}, t)
    except UnificationFailure:
        return False
    return True


# =================== REVB ===================

def revb(t):
    """Cada t[x/u] se convierte en el redex (λx.t) u"""
    if isinstance(t, Var):
        return t
    if isinstance(t, App):
        return App(revb(t.fun), revb(t.arg))
    if isinstance(t, Lam):
        return Lam(t.binder, revb(t.body))
    if isinstance(t, ESub):
        return App(Lam(t.binder, revb(t.body)), revb(t.arg))
    raise IllFormedInput("revb sólo está definido sobre términos")


def _revb_steps(t):
    if isinstance(t, Var):
        return []
    if isinstance(t, App):
        arg = revb(t.arg)
        steps = lift(_revb_steps(t.fun), (0,), lambda s: App(s, arg))
        return steps + lift(_revb_steps(t.arg), (1,), lambda s: App(t.fun, s))
    if isinstance(t, Lam):
        return lift(_revb_steps(t.body), (0,), lambda s: Lam(t.binder, s))
    if isinstance(t, ESub):
        body, arg = revb(t.body), revb(t.arg)
        steps = [Step(Rule.B, (), App(Lam(t.binder, body), arg), ESub(body, t.binder, arg))]
        steps += lift(_revb_steps(t.body), (0,), lambda s: ESub(s, t.binder, arg))
        return steps + lift(_revb_steps(t.arg), (1,), lambda s: ESub(t.body, t.binder, s))
    raise IllFormedInput("revb sólo está definido sobre términos")


def revb_trace(t):
    """Traza de sólo pasos B desde revb(t) hasta t"""
    return Trace(root=revb(t), steps=_revb_steps(t))
